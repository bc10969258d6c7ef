//! Two-parameter Pochhammer polynomials
//! `P_k(s, alpha, beta) = prod_{r=1}^{k} (1 - z'/r)` with `z' = (s - alpha)/beta + 1`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::numtheory::{ln_gamma_ratio, log_gamma_complex};
use crate::{Error, Result};

/// Above this degree the Gamma-ratio form replaces the direct product.
pub const PRODUCT_LIMIT: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PochhammerQuery {
    k: u64,
    s: Complex64,
    alpha: f64,
    beta: f64,
    shifted: Complex64,
}

impl PochhammerQuery {
    pub fn new(k: u64, s: Complex64, alpha: f64, beta: f64) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::invalid(format!("beta must be positive, got {beta}")));
        }
        if !alpha.is_finite() || !s.is_finite() {
            return Err(Error::invalid("alpha and s must be finite"));
        }
        Ok(Self {
            k,
            s,
            alpha,
            beta,
            shifted: (s - alpha) / beta + 1.0,
        })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn s(&self) -> Complex64 {
        self.s
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `z' = (s - alpha)/beta + 1`, the argument of the classical `P_k(z)`.
    pub fn shifted_argument(&self) -> Complex64 {
        self.shifted
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochhammerMethod {
    Product,
    GammaRatio,
}

/// `P_k` held as `ln |P_k|` plus phase so that values far below the
/// smallest double remain usable. An exact zero has `ln_abs = -inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PochhammerValue {
    pub ln_abs: f64,
    pub arg: f64,
    pub method: PochhammerMethod,
}

impl PochhammerValue {
    pub fn is_zero(&self) -> bool {
        self.ln_abs == f64::NEG_INFINITY
    }

    pub fn value(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(self.ln_abs.exp(), self.arg)
    }
}

/// Evaluates `P_k(s, alpha, beta)`.
///
/// Degrees up to [`PRODUCT_LIMIT`] use the product; larger ones use
/// `Gamma(k+1-z') / (Gamma(k+1) Gamma(1-z'))`. When `1 - z'` sits on a
/// Gamma pole (`z'` a positive integer) the product is used regardless; it
/// is exactly zero once `k >= z'`.
pub fn pochhammer_eval(q: &PochhammerQuery) -> PochhammerValue {
    let z = q.shifted;
    if q.k <= PRODUCT_LIMIT || positive_integer(z).is_some() {
        return pochhammer_product(z, q.k);
    }
    pochhammer_gamma_ratio(z, q.k).expect("pole case handled by the product path")
}

fn positive_integer(z: Complex64) -> Option<u64> {
    (z.im == 0.0 && z.re >= 1.0 && z.re == z.re.round() && z.re < 1e18).then_some(z.re as u64)
}

/// `prod_{r=1}^{k} (1 - z/r)` with running rescaling against over/underflow.
pub fn pochhammer_product(z: Complex64, k: u64) -> PochhammerValue {
    if let Some(m) = positive_integer(z) {
        if k >= m {
            return PochhammerValue {
                ln_abs: f64::NEG_INFINITY,
                arg: 0.0,
                method: PochhammerMethod::Product,
            };
        }
    }
    let mut acc = Complex64::new(1.0, 0.0);
    let mut ln_scale = 0.0;
    for r in 1..=k {
        acc *= 1.0 - z / r as f64;
        let n = acc.norm();
        if !(1e-100..=1e100).contains(&n) {
            ln_scale += n.ln();
            acc /= n;
        }
    }
    PochhammerValue {
        ln_abs: acc.norm().ln() + ln_scale,
        arg: acc.arg(),
        method: PochhammerMethod::Product,
    }
}

/// Gamma-ratio form of `P_k(z)`; fails when `1 - z` is a Gamma pole.
pub fn pochhammer_gamma_ratio(z: Complex64, k: u64) -> Result<PochhammerValue> {
    let one = Complex64::new(1.0, 0.0);
    let x = Complex64::new(k as f64 + 1.0, 0.0);
    let ln = ln_gamma_ratio(x, -z)? - log_gamma_complex(one - z)?;
    Ok(PochhammerValue {
        ln_abs: ln.re,
        arg: wrap_phase(ln.im),
        method: PochhammerMethod::GammaRatio,
    })
}

fn wrap_phase(a: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let w = a - two_pi * (a / two_pi).round();
    if w <= -std::f64::consts::PI {
        w + two_pi
    } else {
        w
    }
}

/// Largest power of `k` per decade still read as a bounded sequence; a
/// sequence creeping up to its limit gains far less.
pub const BOUNDED_GROWTH: f64 = 0.01;

/// One row of the growth diagnostic: `|P_k| * k^{Re z'}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRow {
    pub k: u64,
    pub scaled: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundDiagnostic {
    pub rows: Vec<BoundRow>,
    /// Empirical supremum of the scaled sequence over the grid.
    pub supremum: f64,
    /// Largest scaled value within the last decade of the grid.
    pub last_decade_max: f64,
    /// Largest scaled value before the last decade.
    pub earlier_max: f64,
    /// `log10(last_decade_max / earlier_max)`: the power of `k` gained over the last decade.
    pub growth_per_decade: f64,
    /// `growth_per_decade <= BOUNDED_GROWTH`.
    pub bounded: bool,
}

/// Scaled sequence `|P_k((s-alpha)/beta + 1)| k^{(Re s - alpha)/beta + 1}`.
///
/// The sequence stays bounded when `|P_k(z)| <= A k^{-Re z}`; the supremum is
/// reported as the empirical `A`.
pub fn pochhammer_bound_diagnostic(
    s: Complex64,
    alpha: f64,
    beta: f64,
    k_grid: &[u64],
) -> Result<BoundDiagnostic> {
    if k_grid.is_empty() || k_grid.contains(&0) {
        return Err(Error::invalid("k grid must be nonempty with entries >= 1"));
    }
    let rows: Vec<BoundRow> = k_grid
        .par_iter()
        .map(|&k| {
            let q = PochhammerQuery::new(k, s, alpha, beta)?;
            let v = pochhammer_eval(&q);
            let scaled = (v.ln_abs + q.shifted_argument().re * (k as f64).ln()).exp();
            Ok(BoundRow { k, scaled })
        })
        .collect::<Result<_>>()?;
    let k_last = *k_grid.iter().max().expect("nonempty");
    let decade_start = k_last as f64 / 10.0;
    let (mut last, mut earlier) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for r in &rows {
        if r.k as f64 > decade_start {
            last = last.max(r.scaled);
        } else {
            earlier = earlier.max(r.scaled);
        }
    }
    let supremum = last.max(earlier);
    let growth_per_decade = if earlier.is_finite() && earlier > 0.0 {
        (last / earlier).log10()
    } else {
        0.0
    };
    Ok(BoundDiagnostic {
        rows,
        supremum,
        last_decade_max: last,
        earlier_max: earlier,
        growth_per_decade,
        bounded: growth_per_decade <= BOUNDED_GROWTH,
    })
}

/// `count` integers spread log-uniformly over `[lo, hi]`, deduplicated.
pub fn log_spaced_grid(lo: u64, hi: u64, count: usize) -> Vec<u64> {
    if count <= 1 || hi <= lo {
        return vec![lo.max(1)];
    }
    let (a, b) = ((lo.max(1) as f64).ln(), (hi as f64).ln());
    let mut g: Vec<u64> = (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp().round() as u64)
        .collect();
    g.dedup();
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn empty_product_is_one() {
        let q = PochhammerQuery::new(0, c(0.3, 5.0), 7.5, 4.0).unwrap();
        assert_eq!(pochhammer_eval(&q).value(), c(1.0, 0.0));
    }

    #[test]
    fn z_prime_zero_gives_one() {
        // s = alpha - beta
        for k in [1, 10, 1_000, 10_000_000] {
            let q = PochhammerQuery::new(k, c(3.5, 0.0), 7.5, 4.0).unwrap();
            assert_eq!(q.shifted_argument(), c(0.0, 0.0));
            let v = pochhammer_eval(&q).value();
            assert!((v - 1.0).norm() < 1e-15, "k = {k}: {v}");
        }
    }

    #[test]
    fn z_prime_one_gives_zero() {
        // s = alpha
        for k in [1, 2, 500_000, 1 << 40] {
            let q = PochhammerQuery::new(k, c(7.5, 0.0), 7.5, 4.0).unwrap();
            assert!(pochhammer_eval(&q).is_zero(), "k = {k}");
        }
    }

    #[test]
    fn gamma_ratio_flags_pole() {
        assert!(pochhammer_gamma_ratio(c(3.0, 0.0), 10).is_err());
    }

    #[test]
    fn rejects_nonpositive_beta() {
        assert!(PochhammerQuery::new(1, c(1.0, 0.0), 2.0, 0.0).is_err());
        assert!(PochhammerQuery::new(1, c(1.0, 0.0), 2.0, -1.0).is_err());
    }

    #[test]
    fn forms_agree_near_the_switch() {
        let z = c(-0.75, 0.4);
        for k in [50, 5_000, PRODUCT_LIMIT] {
            let p = pochhammer_product(z, k);
            let g = pochhammer_gamma_ratio(z, k).unwrap();
            assert!((p.value() - g.value()).norm() <= 1e-10 * p.value().norm(), "k = {k}");
        }
    }

    #[test]
    fn bound_diagnostic_trivial_case() {
        // z' = 0: P_k = 1 and the scale factor is k^0.
        let grid = log_spaced_grid(1, 1_000_000, 13);
        let d = pochhammer_bound_diagnostic(c(3.5, 0.0), 7.5, 4.0, &grid).unwrap();
        assert!(d.rows.iter().all(|r| (r.scaled - 1.0).abs() < 1e-12));
        assert!(d.bounded);
        assert!((d.supremum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bound_diagnostic_rejects_bad_grid() {
        assert!(pochhammer_bound_diagnostic(c(0.5, 0.0), 7.5, 4.0, &[]).is_err());
        assert!(pochhammer_bound_diagnostic(c(0.5, 0.0), 7.5, 4.0, &[0, 3]).is_err());
    }
}
