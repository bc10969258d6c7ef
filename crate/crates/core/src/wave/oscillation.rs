use super::WaveTrace;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Maximum,
    Minimum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub x: f64,
    pub value: f64,
    pub kind: ExtremumKind,
}

/// Extrema, zero crossings and envelope of a sampled trace.
///
/// One oscillation is a maximum followed by the next minimum; `count` is
/// the number of such pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillationReport {
    pub extrema: Vec<Extremum>,
    pub zero_crossings: Vec<f64>,
    pub count: usize,
    /// `(x, |value|)` at each extremum.
    pub envelope: Vec<(f64, f64)>,
}

impl OscillationReport {
    /// Mean spacing of successive maxima, if there are at least two.
    pub fn period_estimate(&self) -> Option<f64> {
        let maxima: Vec<f64> = self
            .extrema
            .iter()
            .filter(|e| e.kind == ExtremumKind::Maximum)
            .map(|e| e.x)
            .collect();
        (maxima.len() >= 2)
            .then(|| (maxima[maxima.len() - 1] - maxima[0]) / (maxima.len() - 1) as f64)
    }

    /// Slope of `ln |envelope|` against `x` over extrema with `x >= from`.
    pub fn envelope_trend(&self, from: f64) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .envelope
            .iter()
            .filter(|(x, a)| *x >= from && *a > 0.0)
            .map(|&(x, a)| (x, a.ln()))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        (sxx > 0.0).then(|| sxy / sxx)
    }

    /// Envelope values of the last `n` extrema at or before `x_limit`.
    pub fn last_envelope(&self, n: usize, x_limit: f64) -> Vec<f64> {
        let before: Vec<f64> = self
            .envelope
            .iter()
            .filter(|(x, _)| *x <= x_limit)
            .map(|e| e.1)
            .collect();
        before[before.len().saturating_sub(n)..].to_vec()
    }
}

/// Below this magnitude everywhere a trace is considered flat.
pub const FLAT_THRESHOLD: f64 = 1e-300;

/// Locates extrema from sign changes of the first difference, refined by a
/// parabola through the three surrounding samples.
pub fn analyze_oscillations(trace: &WaveTrace) -> Result<OscillationReport> {
    let s = &trace.samples;
    if s.len() < 3 {
        return Err(Error::invalid(format!(
            "oscillation analysis needs at least 3 samples, got {}",
            s.len()
        )));
    }
    if s.iter().all(|p| p.value.abs() < FLAT_THRESHOLD) {
        return Err(Error::invalid("trace is too flat to analyze"));
    }
    let mut extrema = Vec::new();
    let mut prev_slope = 0.0f64;
    for i in 1..s.len() {
        let d = s[i].value - s[i - 1].value;
        if d == 0.0 {
            continue;
        }
        if prev_slope != 0.0 && d.signum() != prev_slope.signum() {
            let kind = if prev_slope > 0.0 {
                ExtremumKind::Maximum
            } else {
                ExtremumKind::Minimum
            };
            let j = i - 1;
            extrema.push(refine(s[j - 1].x, s[j].x, s[j + 1].x, s[j - 1].value, s[j].value, s[j + 1].value, kind));
        }
        prev_slope = d;
    }

    let mut zero_crossings = Vec::new();
    for w in s.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a.value == 0.0 {
            zero_crossings.push(a.x);
        } else if a.value.signum() != b.value.signum() && b.value != 0.0 {
            zero_crossings.push(a.x + (b.x - a.x) * a.value / (a.value - b.value));
        }
    }
    if let Some(last) = s.last() {
        if last.value == 0.0 {
            zero_crossings.push(last.x);
        }
    }

    let count = extrema
        .windows(2)
        .filter(|w| w[0].kind == ExtremumKind::Maximum && w[1].kind == ExtremumKind::Minimum)
        .count();
    let envelope = extrema.iter().map(|e| (e.x, e.value.abs())).collect();
    Ok(OscillationReport {
        extrema,
        zero_crossings,
        count,
        envelope,
    })
}

fn refine(x0: f64, x1: f64, x2: f64, y0: f64, y1: f64, y2: f64, kind: ExtremumKind) -> Extremum {
    // vertex of the parabola through three (possibly uneven) points
    let d0 = (y1 - y0) / (x1 - x0);
    let d1 = (y2 - y1) / (x2 - x1);
    let curv = (d1 - d0) / (x2 - x0);
    if curv == 0.0 || !curv.is_finite() {
        return Extremum { x: x1, value: y1, kind };
    }
    let xv = 0.5 * (x0 + x1) - d0 / (2.0 * curv);
    if !(xv >= x0 && xv <= x2) {
        return Extremum { x: x1, value: y1, kind };
    }
    let value = y1 + d0 * (xv - x1) + curv * (xv - x0) * (xv - x1);
    Extremum { x: xv, value, kind }
}
