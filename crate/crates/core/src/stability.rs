//! How far in `x` a wave computed with Möbius truncation `N_low` can be
//! trusted, judged against a larger truncation `N_high`.
//!
//! Every threshold here is a root of
//!
//! ```text
//! f(x) = E x - exp(x) / D + c
//! ```
//!
//! with `E = (alpha - rho)/beta`, damping `D = N^beta` and an offset `c`
//! built from a tail sum and the target amplitude. `f` is concave with its
//! peak at `x = ln(E D)`.

use crate::numtheory::{hurwitz_tail, power_sum, zeta_real};
use crate::{Error, Result};

/// The tail constant printed alongside the `N = 2000 -> 10^6` experiment,
/// `(2/65) 10^-26`.
pub const PRINTED_TAIL_CONSTANT: f64 = 2.0 / 65.0 * 1e-26;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityProblem {
    pub alpha: f64,
    pub beta: f64,
    pub rho: f64,
    pub n_low: u64,
    pub n_high: u64,
    pub amplitude: f64,
    pub relative_tolerance: f64,
}

impl StabilityProblem {
    /// `alpha = 15/2, beta = 4, rho = 3/4`, `N: 2000 -> 10^6`, amplitude
    /// `0.015`, tolerance `10^-6`.
    pub fn reference() -> Self {
        Self {
            alpha: 7.5,
            beta: 4.0,
            rho: 0.75,
            n_low: 2000,
            n_high: 1_000_000,
            amplitude: 0.015,
            relative_tolerance: 1e-6,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 1.0) || !self.alpha.is_finite() {
            return Err(Error::invalid(format!("alpha must exceed 1, got {}", self.alpha)));
        }
        if !(self.beta > 0.0) || !self.beta.is_finite() || !self.rho.is_finite() {
            return Err(Error::invalid("beta must be positive and rho finite"));
        }
        if self.n_low == 0 || self.n_low >= self.n_high {
            return Err(Error::invalid(format!(
                "need 1 <= N_low < N_high, got {} and {}",
                self.n_low, self.n_high
            )));
        }
        if !(self.amplitude > 0.0) || !self.amplitude.is_finite() {
            return Err(Error::invalid("amplitude must be positive"));
        }
        if !(self.relative_tolerance > 0.0 && self.relative_tolerance < 1.0) {
            return Err(Error::invalid("relative tolerance must lie in (0, 1)"));
        }
        Ok(())
    }

    /// `E = (alpha - rho)/beta`.
    pub fn exponent(&self) -> f64 {
        (self.alpha - self.rho) / self.beta
    }
}

/// Two estimates of `sum_{N_low < n <= N_high} n^-alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEstimate {
    pub direct_sum: f64,
    /// `N_low^{1-alpha} / (alpha - 1)`.
    pub integral_bound: f64,
}

pub fn tail_estimate(p: &StabilityProblem) -> Result<TailEstimate> {
    p.validate()?;
    Ok(TailEstimate {
        direct_sum: power_sum(p.alpha, p.n_low + 1, p.n_high)?,
        integral_bound: (p.n_low as f64).powf(1.0 - p.alpha) / (p.alpha - 1.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailChoice {
    /// The integral bound `N_low^{1-alpha}/(alpha-1)`.
    Recomputed,
    /// The finite sum itself.
    DirectSum,
    /// [`PRINTED_TAIL_CONSTANT`].
    Printed,
    Explicit(f64),
}

impl TailChoice {
    pub fn resolve(self, est: &TailEstimate) -> f64 {
        match self {
            TailChoice::Recomputed => est.integral_bound,
            TailChoice::DirectSum => est.direct_sum,
            TailChoice::Printed => PRINTED_TAIL_CONSTANT,
            TailChoice::Explicit(t) => t,
        }
    }
}

/// `f(x) = slope x - exp(x - log_damping) + offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcaveCrossing {
    pub slope: f64,
    pub log_damping: f64,
    pub offset: f64,
}

impl ConcaveCrossing {
    pub fn value(&self, x: f64) -> f64 {
        self.slope * x - (x - self.log_damping).exp() + self.offset
    }

    /// Where `f` attains its maximum.
    pub fn peak(&self) -> f64 {
        self.slope.ln() + self.log_damping
    }

    /// Smallest root in `[lo, peak]`, if `f(lo) <= 0 < f(peak)`.
    pub fn first_root(&self, lo: f64) -> Option<f64> {
        let pk = self.peak();
        (pk > lo && self.value(lo) <= 0.0 && self.value(pk) > 0.0).then(|| self.bisect(lo, pk))
    }

    /// Largest root, beyond which `f < 0` for good.
    pub fn last_root(&self, lo: f64) -> Option<f64> {
        let start = self.peak().max(lo);
        if self.value(start) <= 0.0 {
            return None;
        }
        let mut hi = start + 1.0;
        while self.value(hi) > 0.0 {
            hi = start + 2.0 * (hi - start);
        }
        Some(self.bisect(start, hi))
    }

    /// Bisection down to adjacent doubles, keeping the sign change bracketed.
    fn bisect(&self, a: f64, b: f64) -> f64 {
        let (mut a, mut b) = (a, b);
        let fa_neg = self.value(a) < 0.0;
        loop {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if (self.value(m) < 0.0) == fa_neg {
                a = m;
            } else {
                b = m;
            }
        }
        if self.value(a).abs() <= self.value(b).abs() {
            a
        } else {
            b
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub problem: StabilityProblem,
    pub choice: TailChoice,
    /// Tail constant the threshold was solved with.
    pub tail_constant: f64,
    pub tail: TailEstimate,
    /// Largest `x` up to which the truncation change stays below
    /// `amplitude * tolerance`; `None` when it never exceeds it.
    pub x_threshold: Option<f64>,
    /// `f` at the returned threshold.
    pub residual: f64,
    /// `(printed constant, recomputed integral bound)`.
    pub printed_constant_comparison: (f64, f64),
}

pub fn stability_crossing(p: &StabilityProblem, tail_constant: f64) -> Result<ConcaveCrossing> {
    if !(tail_constant > 0.0) || !tail_constant.is_finite() {
        return Err(Error::invalid(format!("tail constant must be positive, got {tail_constant}")));
    }
    let slope = p.exponent();
    if !(slope > 0.0) {
        return Err(Error::invalid("need alpha > rho for a growing prefactor"));
    }
    Ok(ConcaveCrossing {
        slope,
        log_damping: p.beta * (p.n_high as f64).ln(),
        offset: tail_constant.ln() - (p.amplitude * p.relative_tolerance).ln(),
    })
}

/// Solves `E x - e^x / N_high^beta + ln(tail) - ln(amplitude * tolerance) <= 0`
/// for its first crossing in `x >= 0`.
pub fn solve_stability_threshold(p: &StabilityProblem, choice: TailChoice) -> Result<BoundReport> {
    let tail = tail_estimate(p)?;
    let tail_constant = choice.resolve(&tail);
    let f = stability_crossing(p, tail_constant)?;
    if f.value(0.0) > 0.0 {
        return Err(Error::invalid(format!(
            "infeasible: tail {tail_constant:e} already exceeds the tolerance at x = 0"
        )));
    }
    let x_threshold = f.first_root(0.0);
    Ok(BoundReport {
        problem: *p,
        choice,
        tail_constant,
        tail,
        x_threshold,
        residual: x_threshold.map_or(0.0, |x| f.value(x)),
        printed_constant_comparison: (PRINTED_TAIL_CONSTANT, tail.integral_bound),
    })
}

/// Printed-constant run followed by the recomputed-constant run.
pub fn stability_side_by_side(p: &StabilityProblem) -> Result<[BoundReport; 2]> {
    Ok([
        solve_stability_threshold(p, TailChoice::Printed)?,
        solve_stability_threshold(p, TailChoice::Recomputed)?,
    ])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalvingThreshold {
    pub truncation: u64,
    /// `sum_{n <= N} n^-alpha`.
    pub weight_sum: f64,
    pub x_threshold: f64,
    pub residual: f64,
}

/// For each `N`, the `x` beyond which `e^{E x} sum_{n<=N} n^-alpha e^{-e^x/n^beta}`
/// (bounded crudely by `|mu| <= 1` and the slowest decay `n = N`) is below
/// `amplitude / 2`.
pub fn amplitude_halving_thresholds(p: &StabilityProblem, truncations: &[u64]) -> Result<Vec<HalvingThreshold>> {
    if !(p.amplitude > 0.0) || !(p.alpha > 1.0) || !(p.beta > 0.0) {
        return Err(Error::invalid("need amplitude > 0, alpha > 1, beta > 0"));
    }
    let zeta_alpha = zeta_real(p.alpha)?;
    truncations
        .iter()
        .map(|&n| {
            if n == 0 {
                return Err(Error::invalid("truncation must be at least 1"));
            }
            let weight_sum = zeta_alpha - hurwitz_tail(p.alpha, n + 1)?;
            let f = ConcaveCrossing {
                slope: p.exponent(),
                log_damping: p.beta * (n as f64).ln(),
                offset: weight_sum.ln() - (0.5 * p.amplitude).ln(),
            };
            let x = f.last_root(0.0).ok_or_else(|| {
                Error::invalid(format!("bound never exceeds amplitude/2 for N = {n}"))
            })?;
            Ok(HalvingThreshold {
                truncation: n,
                weight_sum,
                x_threshold: x,
                residual: f.value(x),
            })
        })
        .collect()
}
