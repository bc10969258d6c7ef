//! Partial sums of `1/zeta(s) = sum_k c_k(alpha, beta) P_k(s, alpha, beta)` and
//! the functional-equation duality `1/zeta(s) -> 1/zeta(1 - s)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::coefficients::CoefficientKernel;
use crate::numtheory::{log_gamma_complex, MoebiusTable};
use crate::{Error, Result};

pub const DEFAULT_K_MAX: u64 = 10_000;

/// Increments below this size in two successive decades end the summation.
pub const EARLY_STOP_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReciprocalQuery {
    pub s: Complex64,
    pub alpha: f64,
    pub beta: f64,
    pub k_max: u64,
    pub truncation: usize,
}

impl ReciprocalQuery {
    pub fn new(s: Complex64) -> Self {
        Self {
            s,
            alpha: crate::DEFAULT_ALPHA,
            beta: crate::DEFAULT_BETA,
            k_max: DEFAULT_K_MAX,
            truncation: crate::DEFAULT_TRUNCATION,
        }
    }

    pub fn with_k_max(self, k_max: u64) -> Self {
        Self { k_max, ..self }
    }

    pub fn with_exponents(self, alpha: f64, beta: f64) -> Self {
        Self { alpha, beta, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.s.is_finite() {
            return Err(Error::invalid("s must be finite"));
        }
        if !(self.beta > 0.0) || !self.beta.is_finite() || !self.alpha.is_finite() {
            return Err(Error::invalid("alpha must be finite and beta positive"));
        }
        if self.truncation == 0 {
            return Err(Error::invalid("truncation must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReciprocalExpansion {
    /// `partial_sums[K] = sum_{k <= K} c_k P_k`.
    pub partial_sums: Vec<Complex64>,
    pub final_value: Complex64,
    /// Set when `Re s <= 1/2`, where the expansion is not expected to converge.
    pub warning: Option<String>,
    /// Last `K` summed when the increments died out before `k_max`.
    pub stopped_at: Option<u64>,
}

impl ReciprocalExpansion {
    /// `max |partial(K) - target|` over `K` in `[lo, hi]`.
    pub fn max_error(&self, target: Complex64, lo: usize, hi: usize) -> f64 {
        let hi = hi.min(self.partial_sums.len().saturating_sub(1));
        self.partial_sums[lo.min(hi)..=hi]
            .iter()
            .map(|p| (p - target).norm())
            .fold(0.0, f64::max)
    }
}

/// Exact-form `c_k` for `k = 0..=k_max`.
pub fn exact_coefficients(kernel: &CoefficientKernel, k_max: u64) -> Vec<f64> {
    (0..=k_max).into_par_iter().map(|k| kernel.exact(k as f64)).collect()
}

pub fn reciprocal_zeta_partial(q: &ReciprocalQuery, table: &MoebiusTable) -> Result<ReciprocalExpansion> {
    q.validate()?;
    let kernel = CoefficientKernel::new(table, q.alpha, q.beta, q.truncation)?;
    let coeffs = exact_coefficients(&kernel, q.k_max);
    reciprocal_from_coefficients(q, &coeffs)
}

/// Same as [`reciprocal_zeta_partial`] with `c_0..c_{k_max}` supplied.
pub fn reciprocal_from_coefficients(q: &ReciprocalQuery, coeffs: &[f64]) -> Result<ReciprocalExpansion> {
    q.validate()?;
    if coeffs.len() as u64 != q.k_max + 1 {
        return Err(Error::invalid(format!(
            "expected {} coefficients, got {}",
            q.k_max + 1,
            coeffs.len()
        )));
    }
    let z = (q.s - q.alpha) / q.beta + 1.0;
    let mut p = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(coeffs[0], 0.0);
    let mut partial_sums = vec![acc];
    let mut decade_end = 10u64;
    let mut decade_max = 0.0f64;
    let mut quiet_decades = 0;
    let mut stopped_at = None;
    for k in 1..=q.k_max {
        p *= 1.0 - z / k as f64;
        let inc = coeffs[k as usize] * p;
        acc += inc;
        if !acc.is_finite() {
            return Err(Error::NonConvergent(format!("partial sum overflowed at k = {k}")));
        }
        partial_sums.push(acc);
        decade_max = decade_max.max(inc.norm());
        if k + 1 == decade_end {
            quiet_decades = if decade_max < EARLY_STOP_THRESHOLD { quiet_decades + 1 } else { 0 };
            if quiet_decades >= 2 && k < q.k_max {
                stopped_at = Some(k);
                break;
            }
            decade_max = 0.0;
            decade_end = decade_end.saturating_mul(10);
        }
    }
    let warning = (q.s.re <= 0.5).then(|| {
        format!(
            "Re s = {} <= 1/2: the expansion is not expected to converge here",
            q.s.re
        )
    });
    Ok(ReciprocalExpansion {
        final_value: acc,
        partial_sums,
        warning,
        stopped_at,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DualityValue {
    Finite(Complex64),
    /// `1 - s` is a trivial zero of zeta, so `1/zeta(1 - s)` is unbounded.
    TrivialZero { zero: i64 },
}

impl DualityValue {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            DualityValue::Finite(v) => Some(v),
            DualityValue::TrivialZero { .. } => None,
        }
    }
}

fn nonpositive_integer(z: Complex64) -> Option<i64> {
    (z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()).then_some(z.re as i64)
}

/// `pi^{s-1/2} Gamma((1-s)/2) / Gamma(s/2)`, the factor taking `1/zeta(s)` to
/// `1/zeta(1-s)`.
pub fn duality_factor(s: Complex64) -> Result<DualityValue> {
    if !s.is_finite() {
        return Err(Error::invalid("s must be finite"));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::invalid("s = 1 is the pole of zeta"));
    }
    let half_s = s / 2.0;
    if let Some(m) = nonpositive_integer(half_s) {
        return Err(Error::invalid(format!(
            "Gamma(s/2) has a pole at s = {}; zeta(s) vanishes there",
            2 * m
        )));
    }
    let half_dual = (1.0 - s) / 2.0;
    if nonpositive_integer(half_dual).is_some() {
        return Ok(DualityValue::TrivialZero {
            zero: (1.0 - s.re) as i64,
        });
    }
    let ln = (s - 0.5) * PI.ln() + log_gamma_complex(half_dual)? - log_gamma_complex(half_s)?;
    Ok(DualityValue::Finite(ln.exp()))
}

/// `1/zeta(1-s)` from `1/zeta(s)`.
pub fn duality_transform(s: Complex64, recip_s: Complex64) -> Result<DualityValue> {
    Ok(match duality_factor(s)? {
        DualityValue::Finite(f) => DualityValue::Finite(f * recip_s),
        z => z,
    })
}
