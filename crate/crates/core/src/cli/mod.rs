//! Experiment front end: figure data, reports, and their CSV / SVG files.
//!
//! Every output file starts with a `#` block recording the full
//! configuration, so identical configs give byte-identical files.

mod config;
mod csv;
mod svg;

pub use config::{ExperimentConfig, OutputFormat, PrecisionMode, CONFIG_KEYS};
pub use csv::{format_float, CsvTable};
pub use svg::render_svg;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::coefficients::{fluctuation_scan, CoefficientForm, CoefficientKernel};
use crate::numtheory::{zeta_complex, MoebiusTable, ZeroSet};
use crate::reciprocal::{reciprocal_zeta_partial, ReciprocalQuery};
use crate::stability::{amplitude_halving_thresholds, stability_side_by_side, BoundReport, StabilityProblem};
use crate::wave::{
    analyze_oscillations, g_trivial, inner_sums, nontrivial_sum, psi_from_inner, psi_log_corrected,
    validate_spot_points, ExtremumKind, NontrivialOptions, WaveParams, WaveTrace, XGrid, DEFAULT_TRIVIAL_TERMS,
};
use crate::{Error, Result};

/// The seven `rho` values of the amplitude comparison, in order of increasing amplitude.
pub const FIGURE3_RHOS: [f64; 7] = [1.0, 0.875, 0.75, 0.625, 0.5, 0.375, 0.3];

/// Number of grid points spot-checked in validated precision.
pub const VALIDATION_POINTS: usize = 8;

/// Largest tolerated `|double - high| / max |psi|` in validated precision.
pub const VALIDATION_TOLERANCE: f64 = 1e-9;

/// Envelope trends are fitted over extrema with `x` at or beyond this.
pub const TREND_FROM: f64 = 10.0;

/// Series sampled on a shared grid, ready for CSV or SVG.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureData {
    pub number: u8,
    pub title: String,
    pub xs: Vec<f64>,
    pub series: Vec<(String, Vec<f64>)>,
    /// Extra comment lines (validation results and the like).
    pub notes: Vec<String>,
}

impl FigureData {
    pub fn table(&self, config: &ExperimentConfig) -> CsvTable {
        let mut comments = vec![format!("figure {}: {}", self.number, self.title)];
        comments.extend(config.describe());
        comments.extend(self.notes.iter().cloned());
        let mut t = CsvTable::new(comments).column("x", self.xs.clone());
        for (name, v) in &self.series {
            t = t.column(name.clone(), v.clone());
        }
        t
    }
}

/// `1/2`, `3/10`, `1` and so on; falls back to the decimal form.
pub fn rho_label(rho: f64) -> String {
    for d in 1..=16u32 {
        let n = rho * d as f64;
        if (n - n.round()).abs() < 1e-12 {
            let n = n.round() as i64;
            return if d == 1 { n.to_string() } else { format!("{n}/{d}") };
        }
    }
    rho.to_string()
}

fn sieve_for(params: &WaveParams) -> Result<MoebiusTable> {
    MoebiusTable::sieve(params.truncation as u64)
}

/// Grid shifted to its first strictly positive point.
pub fn positive_grid(g: XGrid) -> Result<XGrid> {
    if g.min > 0.0 {
        return Ok(g);
    }
    let steps = (-g.min / g.step).floor() + 1.0;
    XGrid::new(g.min + steps * g.step, g.max, g.step)
}

fn r_names(count: usize) -> Vec<String> {
    (1..=count).map(|j| format!("r{j}(x)")).collect()
}

fn spot_check_notes(params: &WaveParams, table: &MoebiusTable, trace: &WaveTrace) -> Result<Vec<String>> {
    let xs = trace.xs();
    let picks: Vec<f64> = (0..VALIDATION_POINTS)
        .map(|i| xs[i * (xs.len() - 1) / (VALIDATION_POINTS - 1).max(1)])
        .collect();
    let checks = validate_spot_points(params, table, &picks)?;
    let scale = trace.values().iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let worst = checks.iter().map(|c| c.abs_diff() / scale).fold(0.0, f64::max);
    if worst > VALIDATION_TOLERANCE {
        return Err(Error::NonConvergent(format!(
            "psi_{} disagrees with the {}-bit recomputation by {worst:e} of its peak",
            rho_label(params.rho),
            crate::wave::VALIDATION_BITS
        )));
    }
    Ok(vec![format!(
        "validated psi_{} at {} points: max |double - high| / max|psi| = {worst:e}",
        rho_label(params.rho),
        checks.len()
    )])
}

/// Computes the series of figure `n` (1 to 5).
///
/// Figures 1, 2 and 4 use `rho = 1/2`, figure 5 uses `rho = 3/4` with zeros
/// placed on `Re z = 3/4`, and figure 3 sweeps [`FIGURE3_RHOS`]; the
/// configured `rho` is ignored by all of them.
pub fn figure_data(n: u8, config: &ExperimentConfig) -> Result<FigureData> {
    config.validate()?;
    let params = config.params;
    let table = sieve_for(&params)?;
    let validated = config.precision == PrecisionMode::Validated;
    let mut notes = Vec::new();
    let k = config.zero_count;
    let zeros = ZeroSet::first(k)?;
    let r_sum_name = if k == 0 { "0".to_string() } else { r_names(k).join("+") };
    let r_diff_name: String = r_names(k).iter().map(|r| format!("-{r}")).collect();

    let data = match n {
        1 | 2 => {
            let p = params.with_rho(0.5);
            let psi = psi_from_inner(&p, &inner_sums(&p, &table)?)?;
            if validated {
                notes.extend(spot_check_notes(&p, &table, &psi)?);
            }
            let g = g_trivial(&p, &zeros, DEFAULT_TRIVIAL_TERMS)?;
            let r = nontrivial_sum(&p, &zeros, k, &NontrivialOptions::default())?;
            let (title, series) = if n == 1 {
                (
                    "psi(x) - r1(x) - r2(x) [red] and g_1/2(x) [green]",
                    vec![
                        (format!("psi(x){r_diff_name}"), WaveTrace::combine("", &[(1.0, &psi), (-1.0, &r)])?.values()),
                        ("g_1/2(x)".to_string(), g.values()),
                    ],
                )
            } else {
                (
                    "psi(x) - g_1/2(x) [red] and r1(x) + r2(x) [green]",
                    vec![
                        ("psi(x)-g_1/2(x)".to_string(), WaveTrace::combine("", &[(1.0, &psi), (-1.0, &g)])?.values()),
                        (r_sum_name.clone(), r.values()),
                    ],
                )
            };
            FigureData {
                number: n,
                title: title.to_string(),
                xs: psi.xs(),
                series,
                notes,
            }
        }
        3 => {
            let inner = inner_sums(&params, &table)?;
            let mut series = Vec::new();
            for &rho in &FIGURE3_RHOS {
                let p = params.with_rho(rho);
                let t = psi_from_inner(&p, &inner)?;
                if validated {
                    notes.extend(spot_check_notes(&p, &table, &t)?);
                }
                series.push((format!("psi_{}(x)", rho_label(rho)), t.values()));
            }
            FigureData {
                number: 3,
                title: "psi_rho for rho = 1, 7/8, 3/4, 5/8, 1/2, 3/8, 3/10".into(),
                xs: params.grid.points(),
                series,
                notes,
            }
        }
        4 => {
            let p = params.with_rho(0.5).with_grid(positive_grid(params.grid)?);
            let t = psi_log_corrected(&p, &table)?;
            if validated {
                // the log factor is exact; validating the plain wave covers the sum
                let plain = psi_from_inner(&p, &inner_sums(&p, &table)?)?;
                notes.extend(spot_check_notes(&p, &table, &plain)?);
            }
            FigureData {
                number: 4,
                title: "psi_1/2+".into(),
                xs: t.xs(),
                series: vec![("psi_1/2+(x)".into(), t.values())],
                notes,
            }
        }
        5 => {
            let p = params.with_rho(0.75);
            let psi = psi_from_inner(&p, &inner_sums(&p, &table)?)?;
            if validated {
                notes.extend(spot_check_notes(&p, &table, &psi)?);
            }
            let g = g_trivial(&p, &zeros, DEFAULT_TRIVIAL_TERMS)?;
            let opts = NontrivialOptions {
                real_part: 0.75,
                ..NontrivialOptions::default()
            };
            let r = nontrivial_sum(&p, &zeros, k, &opts)?;
            let model = WaveTrace::combine("", &[(1.0, &g), (1.0, &r)])?;
            notes.push("nontrivial zeros placed at Re z = 3/4 with the zeta' of the actual zeros".into());
            let model_name = if k == 0 { "g_3/4(x)".to_string() } else { format!("g_3/4(x)+{r_sum_name}") };
            FigureData {
                number: 5,
                title: "psi_3/4(x) [red] and g_3/4(x) + r1(x) + r2(x) [green]".into(),
                xs: psi.xs(),
                series: vec![("psi_3/4(x)".into(), psi.values()), (model_name, model.values())],
                notes,
            }
        }
        _ => return Err(Error::invalid(format!("figure number must be 1 to 5, got {n}"))),
    };
    Ok(data)
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn emit(stem: &str, data: &FigureData, config: &ExperimentConfig) -> Result<Vec<PathBuf>> {
    create_dir(&config.output_dir)?;
    let mut files = Vec::new();
    if config.format.csv() {
        let path = config.output_dir.join(format!("{stem}.csv"));
        data.table(config).write(&path)?;
        files.push(path);
    }
    if config.format.svg() {
        let path = config.output_dir.join(format!("{stem}.svg"));
        write_text(&path, &render_svg(&data.title, &data.xs, &data.series))?;
        files.push(path);
    }
    Ok(files)
}

/// Writes `figure{n}.csv` and/or `figure{n}.svg` into the output directory.
pub fn run_figure(n: u8, config: &ExperimentConfig) -> Result<Vec<PathBuf>> {
    let data = figure_data(n, config)?;
    emit(&format!("figure{n}"), &data, config)
}

/// `psi_rho` for the configured `rho` and grid, written as `wave.csv` / `wave.svg`.
pub fn run_wave(config: &ExperimentConfig) -> Result<Vec<PathBuf>> {
    config.validate()?;
    let p = config.params;
    let table = sieve_for(&p)?;
    let t = psi_from_inner(&p, &inner_sums(&p, &table)?)?;
    let mut notes = Vec::new();
    if !p.within_representation() {
        notes.push("rho < 1/2: outside the range where the 1/zeta representation holds".to_string());
    }
    if config.precision == PrecisionMode::Validated {
        notes.extend(spot_check_notes(&p, &table, &t)?);
    }
    let label = format!("psi_{}(x)", rho_label(p.rho));
    let data = FigureData {
        number: 0,
        title: label.clone(),
        xs: t.xs(),
        series: vec![(label, t.values())],
        notes,
    };
    emit("wave", &data, config)
}

/// Sieves `mu` up to `limit`, writes the binary cache, and returns its path
/// with a one-line summary.
pub fn run_sieve(limit: u64, config: &ExperimentConfig) -> Result<(PathBuf, String)> {
    let table = MoebiusTable::sieve(limit)?;
    create_dir(&config.output_dir)?;
    let path = config.output_dir.join(format!("moebius-{limit}.bin"));
    table.write_cache(&path)?;
    let squarefree = table.iter().filter(|&(_, m)| m != 0).count();
    let summary = format!(
        "mu(n) for n <= {limit}: {squarefree} squarefree, Mertens M({limit}) = {}",
        table.mertens(limit)
    );
    Ok((path, summary))
}

#[derive(Debug, Clone, PartialEq)]
pub enum ReportKind {
    /// `c_k` at the listed `k`, plus the fluctuation decay table.
    Coefficients { ks: Vec<f64>, form: CoefficientForm },
    /// Printed-vs-recomputed stability thresholds and amplitude-halving thresholds.
    Stability { problem: StabilityProblem, halving: Vec<u64> },
    /// Extrema, count and envelope of `psi` at the configured `rho`.
    Oscillations,
    /// Partial sums of the `1/zeta(s)` expansion.
    Reciprocal { s: Complex64, k_max: u64 },
}

impl ReportKind {
    pub fn stem(&self) -> &'static str {
        match self {
            ReportKind::Coefficients { .. } => "coefficients",
            ReportKind::Stability { .. } => "stability",
            ReportKind::Oscillations => "oscillations",
            ReportKind::Reciprocal { .. } => "reciprocal",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub text: String,
    pub table: CsvTable,
}

pub fn build_report(kind: &ReportKind, config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    let p = config.params;
    let mut text = String::new();
    let mut comments = vec![format!("{} report", kind.stem())];
    comments.extend(config.describe());
    let table = match kind {
        ReportKind::Coefficients { ks, form } => {
            let t = sieve_for(&p)?;
            let kernel = CoefficientKernel::new(&t, p.alpha, p.beta, p.truncation)?;
            let _ = writeln!(text, "alpha = {}, beta = {}, N = {}", p.alpha, p.beta, p.truncation);
            for &k in ks {
                crate::coefficients::CoefficientQuery::new(k, p.alpha, p.beta, p.truncation, *form)?;
                let v = kernel.eval(k, *form);
                let line = format!("c_{k} ({form:?}) = {}", format_float(v));
                let _ = writeln!(text, "{line}");
                comments.push(line);
            }
            let scan = fluctuation_scan(&kernel, 4, 20)?;
            let _ = writeln!(text, "\n{:>10} {:>24} {:>24}", "k", "c_hat_k - c_k", "|mu| majorant");
            for r in &scan.rows {
                let _ = writeln!(text, "{:>10} {:>24e} {:>24e}", r.k, r.signed, r.majorant);
            }
            let fits = [
                format!("predicted decay exponent: -{}", scan.predicted_exponent),
                format!("fitted slope (signed):    {:.4}", scan.signed_fit.slope),
                format!("fitted slope (majorant):  {:.4}", scan.majorant_fit.slope),
            ];
            for f in &fits {
                let _ = writeln!(text, "{f}");
            }
            comments.extend(fits);
            CsvTable::new(comments)
                .column("k", scan.rows.iter().map(|r| r.k).collect())
                .column("c_hat_k-c_k", scan.rows.iter().map(|r| r.signed).collect())
                .column("majorant", scan.rows.iter().map(|r| r.majorant).collect())
        }
        ReportKind::Stability { problem, halving } => {
            let [printed, recomputed] = stability_side_by_side(problem)?;
            let _ = writeln!(
                text,
                "alpha = {}, beta = {}, rho = {}, N: {} -> {}, amplitude = {}, tolerance = {}",
                problem.alpha, problem.beta, problem.rho, problem.n_low, problem.n_high, problem.amplitude, problem.relative_tolerance
            );
            let _ = writeln!(text, "exponent E = (alpha - rho)/beta = {}", problem.exponent());
            for (name, r) in [("printed tail constant", &printed), ("recomputed tail constant", &recomputed)] {
                let line = stability_line(name, r);
                let _ = writeln!(text, "{line}");
                comments.push(line);
            }
            let extra = format!(
                "direct tail sum = {:e}, integral bound = {:e}",
                printed.tail.direct_sum, printed.tail.integral_bound
            );
            let _ = writeln!(text, "{extra}");
            comments.push(extra);
            let h = amplitude_halving_thresholds(problem, halving)?;
            let _ = writeln!(text, "\namplitude below {} beyond:", problem.amplitude / 2.0);
            for r in &h {
                let _ = writeln!(text, "  N = {:>12}: x > {:.4}", r.truncation, r.x_threshold);
            }
            CsvTable::new(comments)
                .column("N", h.iter().map(|r| r.truncation as f64).collect())
                .column("weight_sum", h.iter().map(|r| r.weight_sum).collect())
                .column("x_halving", h.iter().map(|r| r.x_threshold).collect())
        }
        ReportKind::Oscillations => {
            let t = sieve_for(&p)?;
            let trace = psi_from_inner(&p, &inner_sums(&p, &t)?)?;
            let r = analyze_oscillations(&trace)?;
            let summary = [
                format!("psi_{} on [{}, {}]", rho_label(p.rho), p.grid.min, p.grid.max),
                format!("oscillations (maximum followed by minimum): {}", r.count),
                format!("extrema: {}, zero crossings: {}", r.extrema.len(), r.zero_crossings.len()),
                format!(
                    "mean period: {}",
                    r.period_estimate().map_or("n/a".to_string(), |v| format!("{v:.4}"))
                ),
                format!(
                    "envelope trend d ln|psi| / dx for x >= {TREND_FROM}: {}",
                    r.envelope_trend(TREND_FROM).map_or("n/a".to_string(), |v| format!("{v:.5}"))
                ),
            ];
            for s in &summary {
                let _ = writeln!(text, "{s}");
            }
            comments.extend(summary);
            let _ = writeln!(text, "\n{:>10} {:>24} {:>5}", "x", "psi", "kind");
            for e in &r.extrema {
                let kind = if e.kind == ExtremumKind::Maximum { "max" } else { "min" };
                let _ = writeln!(text, "{:>10.4} {:>24e} {:>5}", e.x, e.value, kind);
            }
            CsvTable::new(comments)
                .column("x", r.extrema.iter().map(|e| e.x).collect())
                .column("value", r.extrema.iter().map(|e| e.value).collect())
                .column(
                    "kind",
                    r.extrema
                        .iter()
                        .map(|e| if e.kind == ExtremumKind::Maximum { 1.0 } else { -1.0 })
                        .collect(),
                )
        }
        ReportKind::Reciprocal { s, k_max } => {
            let t = sieve_for(&p)?;
            let q = ReciprocalQuery {
                s: *s,
                alpha: p.alpha,
                beta: p.beta,
                k_max: *k_max,
                truncation: p.truncation,
            };
            let e = reciprocal_zeta_partial(&q, &t)?;
            let oracle = zeta_complex(*s).ok().map(|z| 1.0 / z);
            let _ = writeln!(text, "s = {s}, alpha = {}, beta = {}, N = {}, k_max = {k_max}", p.alpha, p.beta, p.truncation);
            if let Some(w) = &e.warning {
                let _ = writeln!(text, "warning: {w}");
                comments.push(format!("warning: {w}"));
            }
            if let Some(k) = e.stopped_at {
                let _ = writeln!(text, "increments negligible; stopped at K = {k}");
            }
            match oracle {
                Some(o) => {
                    let _ = writeln!(text, "1/zeta(s) = {o}");
                    comments.push(format!("1/zeta(s) = {o}"));
                }
                None => {
                    let _ = writeln!(text, "1/zeta(s) not available for comparison");
                }
            }
            let _ = writeln!(text, "\n{:>10} {:>26} {:>26} {:>14}", "K", "Re partial", "Im partial", "|error|");
            let mut marks: Vec<usize> = Vec::new();
            let mut d = 1usize;
            while d <= e.partial_sums.len() {
                for m in [1, 2, 5] {
                    if m * d <= e.partial_sums.len() {
                        marks.push(m * d - 1);
                    }
                }
                d *= 10;
            }
            marks.push(e.partial_sums.len() - 1);
            marks.dedup();
            for &k in &marks {
                let v = e.partial_sums[k];
                let err = oracle.map_or(f64::NAN, |o| (v - o).norm());
                let _ = writeln!(text, "{:>10} {:>26e} {:>26e} {:>14.3e}", k, v.re, v.im, err);
            }
            let ks: Vec<f64> = (0..e.partial_sums.len()).map(|k| k as f64).collect();
            let mut table = CsvTable::new(comments)
                .column("K", ks)
                .column("re", e.partial_sums.iter().map(|v| v.re).collect())
                .column("im", e.partial_sums.iter().map(|v| v.im).collect());
            if let Some(o) = oracle {
                table = table.column("abs_error", e.partial_sums.iter().map(|v| (v - o).norm()).collect());
            }
            table
        }
    };
    Ok(Report { text, table })
}

fn stability_line(name: &str, r: &BoundReport) -> String {
    match r.x_threshold {
        Some(x) => format!(
            "{name} {:e}: stable for x <= {x:.4} (residual {:.1e})",
            r.tail_constant, r.residual
        ),
        None => format!("{name} {:e}: stable for every x", r.tail_constant),
    }
}

/// Writes `{kind}.txt` and `{kind}.csv`; returns the report and the paths.
pub fn run_report(kind: &ReportKind, config: &ExperimentConfig) -> Result<(Report, Vec<PathBuf>)> {
    let report = build_report(kind, config)?;
    create_dir(&config.output_dir)?;
    let txt = config.output_dir.join(format!("{}.txt", kind.stem()));
    write_text(&txt, &report.text)?;
    let csv = config.output_dir.join(format!("{}.csv", kind.stem()));
    report.table.write(&csv)?;
    Ok((report, vec![txt, csv]))
}
