//! Baez-Duarte coefficients and the exact-versus-exponential fluctuation.
//!
//! Exact form: `c_k = sum_{n<=N} mu(n) n^-alpha (1 - n^-beta)^k`.
//! Exponential form: `ĉ_k = sum_{n<=N} mu(n) n^-alpha exp(-k / n^beta)`.

use rayon::prelude::*;
use statrs::function::gamma::gamma_lr;

use crate::numtheory::{gamma, ln_gamma, ln_gamma_ratio, MoebiusTable};
use crate::sum::CompensatedSum;
use crate::{Complex64, Error, Result};

/// Exponents below this underflow to zero in double precision.
pub const UNDERFLOW_EXPONENT: f64 = -745.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientForm {
    Exact,
    Exponential,
}

impl std::str::FromStr for CoefficientForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Self::Exact),
            "exponential" | "exp" => Ok(Self::Exponential),
            other => Err(Error::invalid(format!(
                "coefficient form must be 'exact' or 'exponential', got '{other}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientQuery {
    pub k: f64,
    pub alpha: f64,
    pub beta: f64,
    pub truncation: usize,
    pub form: CoefficientForm,
}

impl CoefficientQuery {
    pub fn new(k: f64, alpha: f64, beta: f64, truncation: usize, form: CoefficientForm) -> Result<Self> {
        let q = Self {
            k,
            alpha,
            beta,
            truncation,
            form,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 1.0) || !self.alpha.is_finite() {
            return Err(Error::invalid(format!(
                "alpha must exceed 1 for absolute convergence, got {}",
                self.alpha
            )));
        }
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(Error::invalid(format!("beta must be positive, got {}", self.beta)));
        }
        if self.truncation == 0 {
            return Err(Error::invalid("truncation N must be at least 1"));
        }
        if !(self.k >= 0.0) || !self.k.is_finite() {
            return Err(Error::invalid(format!("k must be a finite nonnegative number, got {}", self.k)));
        }
        if self.form == CoefficientForm::Exact && self.k.fract() != 0.0 {
            return Err(Error::invalid(format!("exact form needs integer k, got {}", self.k)));
        }
        Ok(())
    }
}

/// Per-`n` data for the squarefree `n <= N`, shared by every coefficient
/// evaluation with the same `(alpha, beta, N)`.
#[derive(Debug, Clone)]
pub struct CoefficientKernel {
    alpha: f64,
    beta: f64,
    truncation: usize,
    terms: Vec<KernelTerm>,
}

#[derive(Debug, Clone, Copy)]
struct KernelTerm {
    sign: f64,
    /// `-alpha ln n`
    ln_weight: f64,
    /// `n^-alpha`
    weight: f64,
    /// `n^-beta`
    inv_pow: f64,
    /// `ln(1 - n^-beta)`; `-inf` at `n = 1`.
    ln_decay: f64,
}

impl CoefficientKernel {
    pub fn new(table: &MoebiusTable, alpha: f64, beta: f64, truncation: usize) -> Result<Self> {
        CoefficientQuery::new(0.0, alpha, beta, truncation, CoefficientForm::Exact)?;
        if truncation as u64 > table.limit() {
            return Err(Error::invalid(format!(
                "truncation {truncation} exceeds Möbius table limit {}",
                table.limit()
            )));
        }
        let terms = (1..=truncation as u64)
            .filter_map(|n| {
                let mu = table.mu(n);
                (mu != 0).then(|| {
                    let nf = n as f64;
                    let inv_pow = nf.powf(-beta);
                    KernelTerm {
                        sign: mu as f64,
                        ln_weight: -alpha * nf.ln(),
                        weight: nf.powf(-alpha),
                        inv_pow,
                        ln_decay: if n == 1 { f64::NEG_INFINITY } else { (-inv_pow).ln_1p() },
                    }
                })
            })
            .collect();
        Ok(Self {
            alpha,
            beta,
            truncation,
            terms,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// `c_k` in exact form; `k` must be a nonnegative integer.
    pub fn exact(&self, k: f64) -> f64 {
        let mut acc = CompensatedSum::new();
        for t in &self.terms {
            let e = if k == 0.0 { 0.0 } else { k * t.ln_decay };
            if e + t.ln_weight < UNDERFLOW_EXPONENT {
                continue;
            }
            // keeping n^-alpha as a separate factor makes its rounding common to every k
            let v = if t.weight > 1e-250 { t.weight * e.exp() } else { (t.ln_weight + e).exp() };
            acc.add(t.sign * v);
        }
        acc.value()
    }

    /// `ĉ_k` in exponential form, for real `k >= 0`.
    pub fn exponential(&self, k: f64) -> f64 {
        self.exponential_scaled(k, 0.0)
    }

    /// `exp(log_prefactor) * ĉ_k`, with the prefactor folded into each
    /// exponent so that nothing underflows before it is scaled back up.
    pub fn exponential_scaled(&self, k: f64, log_prefactor: f64) -> f64 {
        let mut acc = CompensatedSum::new();
        for t in &self.terms {
            let decay = k * t.inv_pow;
            if -decay < UNDERFLOW_EXPONENT {
                continue;
            }
            acc.add(t.sign * (log_prefactor + t.ln_weight - decay).exp());
        }
        acc.value()
    }

    pub fn eval(&self, k: f64, form: CoefficientForm) -> f64 {
        match form {
            CoefficientForm::Exact => self.exact(k),
            CoefficientForm::Exponential => self.exponential(k),
        }
    }

    /// `ĉ_k - c_k` summed term by term, and its majorant with `|mu(n)|`.
    pub fn fluctuation(&self, k: f64) -> Fluctuation {
        let mut signed = CompensatedSum::new();
        let mut majorant = CompensatedSum::new();
        for t in &self.terms {
            let d = (t.ln_weight.exp()) * exp_minus_power_gap(k, t.inv_pow);
            signed.add(t.sign * d);
            majorant.add(d);
        }
        Fluctuation {
            k,
            signed: signed.value(),
            majorant: majorant.value(),
        }
    }
}

/// `e^{-k y} - (1 - y)^k` for `0 < y <= 1`, `k >= 0`, without cancellation.
///
/// Written as `e^{-k y} (1 - e^{k (ln(1-y) + y)})`; the inner `ln(1-y) + y`
/// is expanded as `-sum_{j>=2} y^j / j` for small `y`.
pub fn exp_minus_power_gap(k: f64, y: f64) -> f64 {
    if k == 0.0 {
        return 0.0;
    }
    if y >= 1.0 {
        return (-k).exp();
    }
    let g = if y < 0.1 {
        let mut term = y * y;
        let mut acc = 0.0;
        let mut j = 2.0;
        loop {
            let t = term / j;
            acc += t;
            if t < 1e-18 * acc {
                break;
            }
            term *= y;
            j += 1.0;
        }
        -acc
    } else {
        (-y).ln_1p() + y
    };
    let lead = -k * y;
    if lead < UNDERFLOW_EXPONENT {
        return 0.0;
    }
    lead.exp() * -(k * g).exp_m1()
}

/// `c_k` for a validated query.
pub fn ck(q: &CoefficientQuery, table: &MoebiusTable) -> Result<f64> {
    q.validate()?;
    let kernel = CoefficientKernel::new(table, q.alpha, q.beta, q.truncation)?;
    Ok(kernel.eval(q.k, q.form))
}

/// Measured difference between the two forms at one `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fluctuation {
    pub k: f64,
    /// `ĉ_k - c_k` with the Möbius signs.
    pub signed: f64,
    /// `sum |mu(n)| n^-alpha (e^{-k/n^beta} - (1 - n^-beta)^k)`, an upper bound for `|signed|`.
    pub majorant: f64,
}

/// Closed forms of the two integrals that bound the fluctuation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluctuationIntegrals {
    /// `int_1^inf x^-alpha (1 - x^-beta)^k dx = Gamma(a) Gamma(k+1) / (beta Gamma(a+k+1))`, `a = (alpha-1)/beta`.
    pub exact_integral: f64,
    /// `int_1^inf x^-alpha e^{-k/x^beta} dx = gamma(a, k) / (beta k^a)`, with the
    /// lower incomplete Gamma function.
    pub exponential_integral: f64,
    /// `Gamma(a) / (beta k^a)`, the large-`k` form of `exponential_integral`;
    /// it overshoots by `Gamma(a, k) / (beta k^a)`.
    pub exponential_integral_asymptotic: f64,
    /// `exponential_integral - exact_integral`.
    pub difference: f64,
    /// Asymptotic decay exponent `(alpha + beta - 1) / beta` of the difference.
    pub exponent: f64,
}

pub fn ck_fluctuation_bound(k: f64, alpha: f64, beta: f64) -> Result<FluctuationIntegrals> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::invalid(format!("k must be positive, got {k}")));
    }
    CoefficientQuery::new(0.0, alpha, beta, 1, CoefficientForm::Exact)?;
    let a = (alpha - 1.0) / beta;
    let gamma_a = gamma(a)?;
    let ratio = ln_gamma_ratio(Complex64::new(k + 1.0, 0.0), Complex64::new(a, 0.0))?.re;
    let exact_integral = gamma_a / beta * (-ratio).exp();
    let exponential_integral_asymptotic = (ln_gamma(a)? - a * k.ln()).exp() / beta;
    let exponential_integral = exponential_integral_asymptotic * gamma_lr(a, k);
    Ok(FluctuationIntegrals {
        exact_integral,
        exponential_integral,
        exponential_integral_asymptotic,
        difference: exponential_integral - exact_integral,
        exponent: decay_exponent(alpha, beta),
    })
}

/// `(alpha + beta - 1) / beta`.
pub fn decay_exponent(alpha: f64, beta: f64) -> f64 {
    (alpha + beta - 1.0) / beta
}

/// Least-squares fit of `ln y = ln C + slope ln k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub slope: f64,
    pub constant: f64,
}

pub fn fit_power_law(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(k, y)| *k > 0.0 && y.abs() > 0.0 && y.is_finite())
        .map(|&(k, y)| (k.ln(), y.abs().ln()))
        .collect();
    if pts.len() < 2 {
        return Err(Error::invalid("power-law fit needs at least two nonzero points"));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("power-law fit needs distinct k values"));
    }
    let slope = sxy / sxx;
    Ok(PowerLawFit {
        slope,
        constant: (my - slope * mx).exp(),
    })
}

/// Fluctuations at `k = 2^lo ..= 2^hi` with fitted decay for both the
/// signed difference and its majorant.
#[derive(Debug, Clone, PartialEq)]
pub struct FluctuationScan {
    pub rows: Vec<Fluctuation>,
    pub signed_fit: PowerLawFit,
    pub majorant_fit: PowerLawFit,
    pub predicted_exponent: f64,
}

pub fn fluctuation_scan(kernel: &CoefficientKernel, lo: u32, hi: u32) -> Result<FluctuationScan> {
    if hi <= lo || hi > 62 {
        return Err(Error::invalid("fluctuation scan needs lo < hi <= 62"));
    }
    let rows: Vec<Fluctuation> = (lo..=hi)
        .into_par_iter()
        .map(|e| kernel.fluctuation((1u64 << e) as f64))
        .collect();
    let signed: Vec<(f64, f64)> = rows.iter().map(|r| (r.k, r.signed)).collect();
    let majorant: Vec<(f64, f64)> = rows.iter().map(|r| (r.k, r.majorant)).collect();
    Ok(FluctuationScan {
        signed_fit: fit_power_law(&signed)?,
        majorant_fit: fit_power_law(&majorant)?,
        predicted_exponent: decay_exponent(kernel.alpha, kernel.beta),
        rows,
    })
}

/// Both sides of `c_k - c_{k+1} = c_k(alpha + beta, beta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeCheck {
    pub lhs: f64,
    pub rhs: f64,
}

impl DerivativeCheck {
    pub fn relative_gap(&self) -> f64 {
        let scale = self.rhs.abs().max(f64::MIN_POSITIVE);
        (self.lhs - self.rhs).abs() / scale
    }
}

pub fn ck_discrete_derivative_check(
    k: u64,
    alpha: f64,
    beta: f64,
    truncation: usize,
    table: &MoebiusTable,
) -> Result<DerivativeCheck> {
    let base = CoefficientKernel::new(table, alpha, beta, truncation)?;
    let shifted = CoefficientKernel::new(table, alpha + beta, beta, truncation)?;
    let k = k as f64;
    Ok(DerivativeCheck {
        lhs: base.exact(k) - base.exact(k + 1.0),
        rhs: shifted.exact(k),
    })
}

/// Continuous analogue: `-d/dk ĉ_k` by central difference against `ĉ_k(alpha + beta, beta)`.
pub fn exponential_derivative_check(
    k: f64,
    step: f64,
    alpha: f64,
    beta: f64,
    truncation: usize,
    table: &MoebiusTable,
) -> Result<DerivativeCheck> {
    if !(step > 0.0) || !(k - step >= 0.0) {
        return Err(Error::invalid("need step > 0 and k - step >= 0"));
    }
    let base = CoefficientKernel::new(table, alpha, beta, truncation)?;
    let shifted = CoefficientKernel::new(table, alpha + beta, beta, truncation)?;
    Ok(DerivativeCheck {
        lhs: -(base.exponential(k + step) - base.exponential(k - step)) / (2.0 * step),
        rhs: shifted.exponential(k),
    })
}

/// `sum_p c_p k^p e^{-k} / p!` against `ĉ_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonCheck {
    pub resummed: f64,
    pub direct: f64,
    /// `sum_{p <= p_max} k^p e^{-k} / p!`; the Poisson mass actually captured.
    pub weight_mass: f64,
}

impl PoissonCheck {
    pub fn relative_gap(&self) -> f64 {
        (self.resummed - self.direct).abs() / self.direct.abs().max(f64::MIN_POSITIVE)
    }
}

/// `ln(k^p e^{-k} / p!)`, with `0^0 = 1`.
fn ln_poisson_weight(k: f64, p: u64) -> f64 {
    if k == 0.0 {
        return if p == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    let pf = p as f64;
    pf * k.ln() - k - ln_gamma(pf + 1.0).expect("p + 1 >= 1 is never a pole")
}

/// Poisson mass `sum_{p <= p_max} k^p e^{-k}/p!`.
pub fn poisson_weight_mass(k: f64, p_max: u64) -> f64 {
    (0..=p_max)
        .map(|p| ln_poisson_weight(k, p).exp())
        .collect::<CompensatedSum>()
        .value()
}

/// Recommended resummation depth `k + 10 sqrt(k)`.
pub fn poisson_depth(k: u64) -> u64 {
    k + (10.0 * (k as f64).sqrt()).ceil() as u64
}

pub fn poisson_resum_check(
    k: u64,
    p_max: u64,
    alpha: f64,
    beta: f64,
    truncation: usize,
    table: &MoebiusTable,
) -> Result<PoissonCheck> {
    if p_max < k {
        return Err(Error::invalid(format!(
            "p_max = {p_max} lies below the Poisson peak at p = {k}"
        )));
    }
    let kernel = CoefficientKernel::new(table, alpha, beta, truncation)?;
    let kf = k as f64;
    let terms: Vec<f64> = (0..=p_max)
        .into_par_iter()
        .map(|p| {
            let w = ln_poisson_weight(kf, p);
            if w < UNDERFLOW_EXPONENT {
                0.0
            } else {
                kernel.exact(p as f64) * w.exp()
            }
        })
        .collect();
    Ok(PoissonCheck {
        resummed: terms.into_iter().collect::<CompensatedSum>().value(),
        direct: kernel.exponential(kf),
        weight_mass: poisson_weight_mass(kf, p_max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> MoebiusTable {
        MoebiusTable::sieve(4000).unwrap()
    }

    #[test]
    fn forms_coincide_at_k_zero() {
        let t = table();
        let kern = CoefficientKernel::new(&t, 7.5, 4.0, 2000).unwrap();
        let direct: f64 = (1..=2000u64)
            .map(|n| t.mu(n) as f64 * (n as f64).powf(-7.5))
            .sum();
        assert!((kern.exact(0.0) - direct).abs() < 1e-15);
        assert_eq!(kern.exact(0.0), kern.exponential(0.0));
    }

    #[test]
    fn query_validation() {
        use CoefficientForm::*;
        assert!(CoefficientQuery::new(1.0, 1.0, 4.0, 10, Exact).is_err());
        assert!(CoefficientQuery::new(1.0, 7.5, 0.0, 10, Exact).is_err());
        assert!(CoefficientQuery::new(1.0, 7.5, 4.0, 0, Exact).is_err());
        assert!(CoefficientQuery::new(1.5, 7.5, 4.0, 10, Exact).is_err());
        assert!(CoefficientQuery::new(1.5, 7.5, 4.0, 10, Exponential).is_ok());
        assert!(CoefficientQuery::new(-1.0, 7.5, 4.0, 10, Exponential).is_err());
        let t = MoebiusTable::sieve(10).unwrap();
        let q = CoefficientQuery::new(1.0, 7.5, 4.0, 11, Exact).unwrap();
        assert!(ck(&q, &t).is_err());
    }

    #[test]
    fn gap_matches_naive_where_naive_is_safe() {
        for &(k, y) in &[(3.0f64, 0.5f64), (10.0, 0.2), (1.0, 0.9), (50.0, 1.0)] {
            let naive = (-k * y).exp() - (1.0f64 - y).powf(k);
            assert!((exp_minus_power_gap(k, y) - naive).abs() < 1e-15, "k={k} y={y}");
        }
        // tiny y: naive difference cancels to zero, the gap does not
        let y = 1e-12;
        let g = exp_minus_power_gap(1e6, y);
        assert!((g - 0.5e6 * y * y).abs() < 1e-3 * g);
    }

    #[test]
    fn exponential_dominates_exact_termwise() {
        for n in 2..200u64 {
            let y = (n as f64).powf(-4.0);
            for k in [1.0, 7.0, 100.0, 1e4, 1e7] {
                assert!((-k * y).exp() >= (k * (-y).ln_1p()).exp(), "n={n} k={k}");
                assert!(exp_minus_power_gap(k, y) >= 0.0);
            }
        }
    }

    #[test]
    fn fluctuation_exponents() {
        assert_eq!(decay_exponent(7.5, 4.0), 21.0 / 8.0);
        assert_eq!(decay_exponent(2.0, 2.0), 1.5);
        let b = ck_fluctuation_bound(100.0, 7.5, 4.0).unwrap();
        assert_eq!(b.exponent, 21.0 / 8.0);
        assert!(b.difference > 0.0);
        assert!(ck_fluctuation_bound(0.0, 7.5, 4.0).is_err());
    }

    #[test]
    fn discrete_derivative_at_zero_is_exact_algebra() {
        let t = table();
        let d = ck_discrete_derivative_check(0, 7.5, 4.0, 2000, &t).unwrap();
        let direct: f64 = (1..=2000u64)
            .map(|n| t.mu(n) as f64 * (n as f64).powf(-11.5))
            .sum();
        assert!((d.rhs - direct).abs() < 1e-15);
        assert!(d.relative_gap() < 1e-14, "{d:?}");
    }

    #[test]
    fn poisson_k_zero_and_low_depth() {
        let t = table();
        let p = poisson_resum_check(0, 0, 7.5, 4.0, 2000, &t).unwrap();
        let c0 = CoefficientKernel::new(&t, 7.5, 4.0, 2000).unwrap().exact(0.0);
        assert_eq!(p.resummed, c0);
        assert!(poisson_resum_check(20, 10, 7.5, 4.0, 2000, &t).is_err());
    }

    #[test]
    fn poisson_mass_normalised() {
        for k in [1u64, 20, 400] {
            let m = poisson_weight_mass(k as f64, poisson_depth(k));
            assert!((m - 1.0).abs() < 1e-8, "k={k}: {m}");
        }
    }

    #[test]
    fn power_law_fit_recovers_slope() {
        let pts: Vec<(f64, f64)> = (1..10).map(|i| (i as f64, 3.0 * (i as f64).powf(-2.5))).collect();
        let f = fit_power_law(&pts).unwrap();
        assert!((f.slope + 2.5).abs() < 1e-12);
        assert!((f.constant - 3.0).abs() < 1e-11);
    }
}
