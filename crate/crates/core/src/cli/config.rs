use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::wave::{WaveParams, XGrid};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Svg,
    Both,
}

impl OutputFormat {
    pub fn csv(self) -> bool {
        self != OutputFormat::Svg
    }

    pub fn svg(self) -> bool {
        self != OutputFormat::Csv
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "svg" => Ok(OutputFormat::Svg),
            "both" => Ok(OutputFormat::Both),
            _ => Err(Error::invalid(format!("format must be csv, svg or both, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PrecisionMode {
    #[default]
    Double,
    /// Double precision, spot-checked against a 192-bit recomputation.
    Validated,
}

impl FromStr for PrecisionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "double" => Ok(PrecisionMode::Double),
            "validated" => Ok(PrecisionMode::Validated),
            _ => Err(Error::invalid(format!("precision must be double or validated, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub params: WaveParams,
    pub zero_count: usize,
    pub output_dir: PathBuf,
    pub format: OutputFormat,
    pub precision: PrecisionMode,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            params: WaveParams::standard(0.5),
            zero_count: 2,
            output_dir: PathBuf::from("."),
            format: OutputFormat::Csv,
            precision: PrecisionMode::Double,
        }
    }
}

/// Keys accepted in a config file; each has a matching command-line flag.
pub const CONFIG_KEYS: [&str; 11] = [
    "alpha",
    "beta",
    "rho",
    "truncation",
    "x_min",
    "x_max",
    "step",
    "zero_count",
    "output_dir",
    "format",
    "precision",
];

impl ExperimentConfig {
    /// Sets one key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let p = &mut self.params;
        match key {
            "alpha" => p.alpha = number(key, value)?,
            "beta" => p.beta = number(key, value)?,
            "rho" => p.rho = number(key, value)?,
            "truncation" => p.truncation = integer(key, value)?,
            "x_min" => p.grid.min = number(key, value)?,
            "x_max" => p.grid.max = number(key, value)?,
            "step" => p.grid.step = number(key, value)?,
            "zero_count" => self.zero_count = integer(key, value)?,
            "output_dir" => self.output_dir = PathBuf::from(value),
            "format" => self.format = value.parse()?,
            "precision" => self.precision = value.parse()?,
            _ => return Err(Error::invalid(format!("unknown config key {key:?}"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines; blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("config line {}: expected key = value", i + 1)))?;
            self.set(k.trim(), v.trim())
                .map_err(|e| Error::invalid(format!("config line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        self.apply_text(&text)
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()
    }

    /// `key = value` lines describing this config, in [`CONFIG_KEYS`] order.
    pub fn describe(&self) -> Vec<String> {
        let p = &self.params;
        vec![
            format!("alpha = {}", p.alpha),
            format!("beta = {}", p.beta),
            format!("rho = {}", p.rho),
            format!("truncation = {}", p.truncation),
            format!("x_min = {}", p.grid.min),
            format!("x_max = {}", p.grid.max),
            format!("step = {}", p.grid.step),
            format!("zero_count = {}", self.zero_count),
            format!("output_dir = {}", self.output_dir.display()),
            format!("format = {}", format_name(self.format)),
            format!("precision = {}", precision_name(self.precision)),
        ]
    }

    pub fn with_grid(mut self, grid: XGrid) -> Self {
        self.params.grid = grid;
        self
    }
}

fn format_name(f: OutputFormat) -> &'static str {
    match f {
        OutputFormat::Csv => "csv",
        OutputFormat::Svg => "svg",
        OutputFormat::Both => "both",
    }
}

fn precision_name(p: PrecisionMode) -> &'static str {
    match p {
        PrecisionMode::Double => "double",
        PrecisionMode::Validated => "validated",
    }
}

fn number(key: &str, v: &str) -> Result<f64> {
    v.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::invalid(format!("{key} must be a finite number, got {v:?}")))
}

fn integer(key: &str, v: &str) -> Result<usize> {
    v.parse::<usize>()
        .map_err(|_| Error::invalid(format!("{key} must be a nonnegative integer, got {v:?}")))
}
