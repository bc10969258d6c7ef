use std::fmt::Write as _;
use std::path::Path;

use crate::{Error, Result};

/// Shortest decimal that parses back to the same double. Plain notation for
/// moderate magnitudes, scientific otherwise.
pub fn format_float(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-5..1e16).contains(&a) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// A table of named columns with `#` comment lines above the header row.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CsvTable {
    pub comments: Vec<String>,
    pub names: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn new(comments: Vec<String>) -> Self {
        Self {
            comments,
            ..Self::default()
        }
    }

    pub fn column(mut self, name: impl Into<String>, values: Vec<f64>) -> Self {
        self.names.push(name.into());
        self.columns.push(values);
        self
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn render(&self) -> Result<String> {
        let n = self.rows();
        if self.columns.iter().any(|c| c.len() != n) {
            return Err(Error::invalid("CSV columns differ in length"));
        }
        let mut out = String::new();
        for c in &self.comments {
            for line in c.lines() {
                let _ = writeln!(out, "# {line}");
            }
        }
        out.push_str(&self.names.iter().map(|s| quote(s)).collect::<Vec<_>>().join(","));
        out.push('\n');
        for i in 0..n {
            let row: Vec<String> = self.columns.iter().map(|c| format_float(c[i])).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        Ok(out)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render()?).map_err(|e| Error::io(path, e))
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
