//! High-precision spot checks of `psi` against the double-precision path.

use astro_float::{BigFloat, Consts, RoundingMode};
use rayon::prelude::*;

use super::WaveParams;
use crate::coefficients::UNDERFLOW_EXPONENT;
use crate::numtheory::MoebiusTable;
use crate::{Error, Result};

/// Working precision (bits) of the validation path.
pub const VALIDATION_BITS: usize = 192;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpotCheck {
    pub x: f64,
    pub double: f64,
    pub high: f64,
}

impl SpotCheck {
    pub fn abs_diff(&self) -> f64 {
        (self.double - self.high).abs()
    }
}

/// Recomputes `psi(x)` at each of `xs` with 192-bit arithmetic and pairs it
/// with the double-precision value.
pub fn validate_spot_points(params: &WaveParams, table: &MoebiusTable, xs: &[f64]) -> Result<Vec<SpotCheck>> {
    params.validate()?;
    if params.truncation as u64 > table.limit() {
        return Err(Error::invalid("truncation exceeds Möbius table"));
    }
    let kernel = crate::coefficients::CoefficientKernel::new(table, params.alpha, params.beta, params.truncation)?;
    let terms: Vec<(u64, i8)> = (1..=params.truncation as u64)
        .map(|n| (n, table.mu(n)))
        .filter(|&(_, m)| m != 0)
        .collect();
    xs.par_iter()
        .map(|&x| {
            let mut cc = Consts::new().map_err(|e| Error::NonConvergent(format!("astro-float: {e:?}")))?;
            let high = psi_high(params, &terms, x, &mut cc)?;
            let double = (params.exponent() * x).exp() * kernel.exponential(x.exp());
            Ok(SpotCheck { x, double, high })
        })
        .collect()
}

fn psi_high(params: &WaveParams, terms: &[(u64, i8)], x: f64, cc: &mut Consts) -> Result<f64> {
    let p = VALIDATION_BITS;
    let rm = RoundingMode::ToEven;
    let big = |v: f64| BigFloat::from_f64(v, p);
    let k = big(x).exp(p, rm, cc);
    let k_approx = x.exp();
    let neg_alpha = big(-params.alpha);
    let neg_beta = big(-params.beta);
    let mut acc = big(0.0);
    for &(n, mu) in terms {
        if -k_approx * (n as f64).powf(-params.beta) < UNDERFLOW_EXPONENT - 10.0 {
            continue;
        }
        let ln_n = big(n as f64).ln(p, rm, cc);
        let decay = k.mul(&ln_n.mul(&neg_beta, p, rm).exp(p, rm, cc), p, rm);
        let term = ln_n.mul(&neg_alpha, p, rm).sub(&decay, p, rm).exp(p, rm, cc);
        acc = if mu > 0 {
            acc.add(&term, p, rm)
        } else {
            acc.sub(&term, p, rm)
        };
    }
    let prefactor = big(params.exponent()).mul(&big(x), p, rm).exp(p, rm, cc);
    let v = acc.mul(&prefactor, p, rm);
    if v.is_nan() {
        return Err(Error::NonConvergent(format!("high-precision psi is NaN at x = {x}")));
    }
    format!("{v}")
        .parse::<f64>()
        .map_err(|e| Error::NonConvergent(format!("cannot convert high-precision value at x = {x}: {e}")))
}
