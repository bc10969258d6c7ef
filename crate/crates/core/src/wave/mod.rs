//! Critical-wave traces in the variable `x = log k`.
//!
//! `psi(x) = exp(((alpha - rho)/beta) x) ĉ_{e^x}` and its residue
//! decomposition into a trivial-zero part `g_rho` and one real term `r_j` per
//! conjugate pair of nontrivial zeros.

mod oscillation;
mod validate;

pub use oscillation::{analyze_oscillations, Extremum, ExtremumKind, OscillationReport};
pub use validate::{validate_spot_points, SpotCheck, VALIDATION_BITS};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::coefficients::CoefficientKernel;
use crate::numtheory::{log_gamma_complex, MoebiusTable, ZeroSet};
use crate::{Error, Result};

/// Uniform grid `x_min, x_min + step, ..., <= x_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XGrid {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl XGrid {
    pub fn new(min: f64, max: f64, step: f64) -> Result<Self> {
        let g = Self { min, max, step };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(Error::invalid(format!("grid step must be positive, got {}", self.step)));
        }
        if !(self.max >= self.min) || !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::invalid(format!(
                "grid needs finite x_min <= x_max, got [{}, {}]",
                self.min, self.max
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        ((self.max - self.min) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.min + i as f64 * self.step).collect()
    }
}

impl Default for XGrid {
    fn default() -> Self {
        Self {
            min: 0.0,
            max: 30.0,
            step: 0.01,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveParams {
    pub alpha: f64,
    pub beta: f64,
    pub rho: f64,
    pub truncation: usize,
    pub grid: XGrid,
}

impl WaveParams {
    /// `alpha = 15/2`, `beta = 4`, `N = 2000`, `x in [0, 30]` step `0.01`.
    pub fn standard(rho: f64) -> Self {
        Self {
            alpha: crate::DEFAULT_ALPHA,
            beta: crate::DEFAULT_BETA,
            rho,
            truncation: crate::DEFAULT_TRUNCATION,
            grid: XGrid::default(),
        }
    }

    pub fn with_rho(self, rho: f64) -> Self {
        Self { rho, ..self }
    }

    pub fn with_grid(self, grid: XGrid) -> Self {
        Self { grid, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 1.0) || !self.alpha.is_finite() {
            return Err(Error::invalid(format!("alpha must exceed 1, got {}", self.alpha)));
        }
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(Error::invalid(format!("beta must be positive, got {}", self.beta)));
        }
        if !self.rho.is_finite() {
            return Err(Error::invalid("rho must be finite"));
        }
        if self.truncation == 0 {
            return Err(Error::invalid("truncation N must be at least 1"));
        }
        self.grid.validate()
    }

    /// Growth exponent `(alpha - rho) / beta` of the prefactor.
    pub fn exponent(&self) -> f64 {
        (self.alpha - self.rho) / self.beta
    }

    /// The `1/zeta` representation only holds for `rho >= 1/2`.
    pub fn within_representation(&self) -> bool {
        self.rho >= 0.5
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TraceKind {
    Psi,
    PsiLogCorrected,
    TrivialZeros,
    /// Pair `z_j`, `conj(z_j)`, counted from 1.
    NontrivialZero(usize),
    Composite(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSample {
    pub x: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveTrace {
    pub params: WaveParams,
    pub kind: TraceKind,
    pub samples: Vec<WaveSample>,
}

impl WaveTrace {
    fn from_values(params: WaveParams, kind: TraceKind, xs: &[f64], values: Vec<f64>) -> Result<Self> {
        if let Some((x, v)) = xs.iter().zip(&values).find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonConvergent(format!(
                "{kind:?} produced non-finite value {v} at x = {x}"
            )));
        }
        let samples = xs
            .iter()
            .zip(values)
            .map(|(&x, value)| WaveSample { x, value })
            .collect();
        Ok(Self {
            params,
            kind,
            samples,
        })
    }

    pub fn xs(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.x).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.value).collect()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Traces with `rho < 1/2` fall outside the representation's validity.
    pub fn outside_representation(&self) -> bool {
        !self.params.within_representation()
    }

    /// Restricts to samples with `lo <= x <= hi`.
    pub fn window(&self, lo: f64, hi: f64) -> WaveTrace {
        WaveTrace {
            params: self.params,
            kind: self.kind.clone(),
            samples: self
                .samples
                .iter()
                .copied()
                .filter(|s| s.x >= lo - 1e-12 && s.x <= hi + 1e-12)
                .collect(),
        }
    }

    /// `sum_i coef_i * trace_i` over traces sampled on the same grid.
    pub fn combine(label: &str, parts: &[(f64, &WaveTrace)]) -> Result<WaveTrace> {
        let (_, first) = parts
            .first()
            .ok_or_else(|| Error::invalid("combination needs at least one trace"))?;
        let xs = first.xs();
        for (_, t) in parts {
            if t.len() != xs.len() || t.samples.iter().zip(&xs).any(|(s, x)| s.x != *x) {
                return Err(Error::invalid("combined traces must share one grid"));
            }
        }
        let values = (0..xs.len())
            .map(|i| parts.iter().map(|(c, t)| c * t.samples[i].value).sum())
            .collect();
        WaveTrace::from_values(first.params, TraceKind::Composite(label.to_string()), &xs, values)
    }
}

/// `ĉ_{e^x}` on the grid; the `rho`-independent inner sum of `psi`.
pub fn inner_sums(params: &WaveParams, table: &MoebiusTable) -> Result<Vec<f64>> {
    params.validate()?;
    let kernel = CoefficientKernel::new(table, params.alpha, params.beta, params.truncation)?;
    Ok(params
        .grid
        .points()
        .par_iter()
        .map(|&x| kernel.exponential(x.exp()))
        .collect())
}

/// `psi(x; alpha, beta, rho)` on the grid.
///
/// Each value is `exp(((alpha - rho)/beta) x) * ĉ_{e^x}` with the inner sum
/// from [`inner_sums`], so traces for different `rho` share their inner sum
/// bit for bit and hence their zeros.
pub fn psi(params: &WaveParams, table: &MoebiusTable) -> Result<WaveTrace> {
    let inner = inner_sums(params, table)?;
    psi_from_inner(params, &inner)
}

/// Rescales a precomputed inner sum to `psi_rho`.
pub fn psi_from_inner(params: &WaveParams, inner: &[f64]) -> Result<WaveTrace> {
    params.validate()?;
    let xs = params.grid.points();
    if xs.len() != inner.len() {
        return Err(Error::invalid("inner sums do not match the grid"));
    }
    let e = params.exponent();
    let values = xs.iter().zip(inner).map(|(&x, &s)| (e * x).exp() * s).collect();
    WaveTrace::from_values(*params, TraceKind::Psi, &xs, values)
}

/// `psi_{1/2+}(x) = exp(((alpha - rho)/beta) x - log x) ĉ_{e^x}`; requires `x > 0`.
pub fn psi_log_corrected(params: &WaveParams, table: &MoebiusTable) -> Result<WaveTrace> {
    params.validate()?;
    if params.grid.min <= 0.0 {
        return Err(Error::invalid(format!(
            "log-corrected wave needs x > 0, grid starts at {}",
            params.grid.min
        )));
    }
    let inner = inner_sums(params, table)?;
    let xs = params.grid.points();
    let e = params.exponent();
    let values = xs
        .iter()
        .zip(&inner)
        .map(|(&x, &s)| (e * x - x.ln()).exp() * s)
        .collect();
    WaveTrace::from_values(*params, TraceKind::PsiLogCorrected, &xs, values)
}

/// Terms used by [`g_trivial`] when none are specified.
pub const DEFAULT_TRIVIAL_TERMS: u32 = 20;

/// Trivial-zero contribution
/// `g_rho(x) = (1/beta) sum_{n=1}^{terms} exp(-((2n + rho)/beta) x) Gamma((alpha + 2n)/beta) / zeta'(-2n)`.
pub fn g_trivial(params: &WaveParams, zeros: &ZeroSet, n_terms: u32) -> Result<WaveTrace> {
    params.validate()?;
    if n_terms == 0 || n_terms > crate::numtheory::MAX_TRIVIAL_INDEX {
        return Err(Error::invalid(format!("trivial terms must be in 1..=20, got {n_terms}")));
    }
    let (alpha, beta, rho) = (params.alpha, params.beta, params.rho);
    // (decay rate, ln |Gamma / zeta'|, sign)
    let coeffs = (1..=n_terms)
        .map(|n| {
            let nf = n as f64;
            let lg = log_gamma_complex(Complex64::new((alpha + 2.0 * nf) / beta, 0.0))?;
            let zp = zeros.trivial_prime(n)?;
            let sign = lg.im.cos().signum() * zp.signum();
            Ok(((2.0 * nf + rho) / beta, lg.re - zp.abs().ln(), sign))
        })
        .collect::<Result<Vec<_>>>()?;
    let xs = params.grid.points();
    let values = xs
        .iter()
        .map(|&x| {
            coeffs
                .iter()
                .map(|&(rate, ln_mag, sign)| sign * (ln_mag - rate * x).exp())
                .sum::<f64>()
                / beta
        })
        .collect();
    WaveTrace::from_values(*params, TraceKind::TrivialZeros, &xs, values)
}

/// How the nontrivial-zero terms treat a zero whose real part differs from `rho`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZeroDamping {
    /// Only the oscillating factor `exp(i t x / beta)` carries the x-dependence.
    #[default]
    Literal,
    /// Adds `exp(((rho - Re z)/beta) x)`, the factor a zero off `Re z = rho` would contribute.
    WithRealPart,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NontrivialOptions {
    /// Assumed real part of the zeros; `1/2` for the actual zeros.
    pub real_part: f64,
    pub damping: ZeroDamping,
}

impl Default for NontrivialOptions {
    fn default() -> Self {
        Self {
            real_part: 0.5,
            damping: ZeroDamping::Literal,
        }
    }
}

/// Complex residue term of zero `z = Re + i t`:
/// `exp(i t x / beta) Gamma(-(z - alpha)/beta) / zeta'(z_j)`, without the `1/beta`.
pub fn nontrivial_term(params: &WaveParams, t: f64, zeta_prime: Complex64, opts: &NontrivialOptions, x: f64) -> Result<Complex64> {
    let z = Complex64::new(opts.real_part, t);
    let g = log_gamma_complex(-(z - params.alpha) / params.beta)?.exp();
    let mut phase = Complex64::new(0.0, t * x / params.beta).exp();
    if opts.damping == ZeroDamping::WithRealPart {
        phase *= ((params.rho - opts.real_part) / params.beta * x).exp();
    }
    Ok(phase * g / zeta_prime)
}

/// Real contribution `r_j(x)` of the conjugate pair `z_j`, `conj(z_j)`:
/// `(2/beta) Re[exp(i t_j x / beta) Gamma(-(Re z + i t_j - alpha)/beta) / zeta'(z_j)]`.
pub fn r_nontrivial(params: &WaveParams, zeros: &ZeroSet, j: usize, opts: &NontrivialOptions) -> Result<WaveTrace> {
    params.validate()?;
    let zero = *zeros.zero(j)?;
    let xs = params.grid.points();
    let gamma = log_gamma_complex(-(Complex64::new(opts.real_part, zero.imag) - params.alpha) / params.beta)?.exp();
    let amp = gamma / zero.zeta_prime;
    let values = xs
        .iter()
        .map(|&x| {
            let mut v = Complex64::new(0.0, zero.imag * x / params.beta).exp() * amp;
            if opts.damping == ZeroDamping::WithRealPart {
                v *= ((params.rho - opts.real_part) / params.beta * x).exp();
            }
            2.0 / params.beta * v.re
        })
        .collect();
    WaveTrace::from_values(*params, TraceKind::NontrivialZero(j), &xs, values)
}

/// `sum_{j=1}^{count} r_j`.
pub fn nontrivial_sum(params: &WaveParams, zeros: &ZeroSet, count: usize, opts: &NontrivialOptions) -> Result<WaveTrace> {
    if count == 0 {
        let xs = params.grid.points();
        return WaveTrace::from_values(*params, TraceKind::Composite("0".into()), &xs, vec![0.0; xs.len()]);
    }
    let parts = (1..=count)
        .map(|j| r_nontrivial(params, zeros, j, opts))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<(f64, &WaveTrace)> = parts.iter().map(|t| (1.0, t)).collect();
    let label = (1..=count).map(|j| format!("r{j}")).collect::<Vec<_>>().join("+");
    WaveTrace::combine(&label, &refs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_params(rho: f64) -> WaveParams {
        WaveParams::standard(rho).with_grid(XGrid::new(0.0, 30.0, 0.5).unwrap())
    }

    #[test]
    fn grid_points() {
        let g = XGrid::new(0.0, 30.0, 0.01).unwrap();
        assert_eq!(g.len(), 3001);
        let p = g.points();
        assert_eq!(p[0], 0.0);
        assert!((p[3000] - 30.0).abs() < 1e-12);
        assert!(XGrid::new(0.0, 1.0, 0.0).is_err());
        assert!(XGrid::new(1.0, 0.0, 0.1).is_err());
    }

    #[test]
    fn psi_prefactor_is_one_at_origin_when_rho_is_alpha() {
        let t = MoebiusTable::sieve(2000).unwrap();
        let p = WaveParams::standard(7.5).with_grid(XGrid::new(0.0, 0.0, 0.1).unwrap());
        let v = psi(&p, &t).unwrap().samples[0].value;
        let direct: f64 = (1..=2000u64)
            .map(|n| {
                let nf = n as f64;
                t.mu(n) as f64 * nf.powf(-7.5) * (-nf.powf(-4.0)).exp()
            })
            .sum();
        assert!((v - direct).abs() < 1e-15);
    }

    #[test]
    fn psi_rho_traces_share_sign_pattern() {
        let t = MoebiusTable::sieve(2000).unwrap();
        let a = psi(&small_params(0.5), &t).unwrap();
        let b = psi(&small_params(0.9), &t).unwrap();
        for (sa, sb) in a.samples.iter().zip(&b.samples) {
            assert_eq!(sa.value.signum(), sb.value.signum());
        }
        assert!(!a.outside_representation());
        assert!(psi(&small_params(0.3), &t).unwrap().outside_representation());
    }

    #[test]
    fn log_corrected_rejects_nonpositive_grid() {
        let t = MoebiusTable::sieve(2000).unwrap();
        assert!(psi_log_corrected(&small_params(0.5), &t).is_err());
    }

    #[test]
    fn log_corrected_is_psi_over_x() {
        let t = MoebiusTable::sieve(2000).unwrap();
        let p = small_params(0.5).with_grid(XGrid::new(0.5, 30.0, 0.5).unwrap());
        let a = psi(&p, &t).unwrap();
        let b = psi_log_corrected(&p, &t).unwrap();
        for (sa, sb) in a.samples.iter().zip(&b.samples) {
            let expect = sa.value / sa.x;
            assert!((sb.value - expect).abs() <= 1e-13 * expect.abs().max(1e-300));
        }
    }

    #[test]
    fn unknown_zero_index_rejected() {
        let z = ZeroSet::first(2).unwrap();
        assert!(r_nontrivial(&small_params(0.5), &z, 3, &NontrivialOptions::default()).is_err());
    }

    #[test]
    fn pair_term_is_real_part_of_conjugate_sum() {
        // r_j combines z and conj(z); conj(z) contributes the conjugate term.
        let z = ZeroSet::first(1).unwrap();
        let p = small_params(0.5);
        let zero = z.zero(1).unwrap();
        let opts = NontrivialOptions::default();
        let r = r_nontrivial(&p, &z, 1, &opts).unwrap();
        for s in r.samples.iter().step_by(7) {
            let up = nontrivial_term(&p, zero.imag, zero.zeta_prime, &opts, s.x).unwrap();
            let down = nontrivial_term(&p, -zero.imag, zero.zeta_prime.conj(), &opts, s.x).unwrap();
            assert!((down - up.conj()).norm() < 1e-15);
            let sum = (up + down) / p.beta;
            assert!(sum.im.abs() < 1e-16);
            assert!((sum.re - s.value).abs() < 1e-14);
        }
    }

    #[test]
    fn trivial_part_decays() {
        let z = ZeroSet::first(0).unwrap();
        let g = g_trivial(&small_params(0.5), &z, 20).unwrap();
        let tail: Vec<f64> = g.window(4.0, 30.0).values().iter().map(|v| v.abs()).collect();
        assert!(tail.windows(2).all(|w| w[1] < w[0]), "{tail:?}");
        assert!(tail.last().unwrap() < &1e-6);
        assert!(g_trivial(&small_params(0.5), &z, 0).is_err());
    }
}
