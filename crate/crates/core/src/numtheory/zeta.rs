//! Riemann zeta: real argument, complex argument, and derivatives at zeros.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{ln_gamma, BERNOULLI_EVEN};
use crate::sum::CompensatedSum;
use crate::{Error, Result};

/// Largest `n` accepted by [`zeta_prime_trivial`].
pub const MAX_TRIVIAL_INDEX: u32 = 20;

const EM_CUTOFF: f64 = 20.0;

/// `sum_{n >= a} n^-s` for real `s > 1`, integer `a >= 1`.
///
/// Direct summation up to `max(a, 20)`, then Euler-Maclaurin for the rest.
pub fn hurwitz_tail(s: f64, a: u64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::invalid(format!("power tail needs s > 1, got {s}")));
    }
    if a == 0 {
        return Err(Error::invalid("power tail starts at n >= 1"));
    }
    let m = (a as f64).max(EM_CUTOFF);
    let mut acc = CompensatedSum::new();
    let mut n = a as f64;
    while n < m {
        acc.add(n.powf(-s));
        n += 1.0;
    }
    // sum_{n >= m} n^-s = m^(1-s)/(s-1) + m^-s/2 + sum_j B_2j/(2j)! (s)_{2j-1} m^(-s-2j+1)
    let m_pow = m.powf(-s);
    acc.add(m * m_pow / (s - 1.0));
    acc.add(0.5 * m_pow);
    let mut rising = s; // s (s+1) ... (s + 2j - 2)
    let mut fact = 2.0; // (2j)!
    let mut mp = m_pow / m; // m^(-s-2j+1)
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = b / fact * rising * mp;
        acc.add(term);
        if term.abs() < 1e-18 * acc.value().abs() {
            break;
        }
        let j2 = 2.0 * (j as f64 + 1.0);
        rising *= (s + j2 - 1.0) * (s + j2);
        fact *= (j2 + 1.0) * (j2 + 2.0);
        mp /= m * m;
    }
    Ok(acc.value())
}

/// `sum_{n = from}^{to} n^-s`, via the difference of two tails.
pub fn power_sum(s: f64, from: u64, to: u64) -> Result<f64> {
    if to < from {
        return Ok(0.0);
    }
    Ok(hurwitz_tail(s, from)? - hurwitz_tail(s, to + 1)?)
}

/// `zeta(s)` for real `s > 1`.
pub fn zeta_real(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::invalid(format!("zeta_real requires s > 1, got {s}")));
    }
    hurwitz_tail(s, 1)
}

/// `zeta(s)` for `Re(s) > 0`, `s != 1`.
///
/// Uses the alternating eta series with Borwein's acceleration,
/// `zeta(s) = eta(s) / (1 - 2^(1-s))`. Where `1 - 2^(1-s)` is close to zero
/// (near `s = 1 + 2 pi i m / ln 2`) the quotient is ill-conditioned, and
/// Euler-Maclaurin is used instead.
pub fn zeta_complex(s: Complex64) -> Result<Complex64> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::invalid(format!("zeta of non-finite {s}")));
    }
    if s.re <= 0.0 {
        return Err(Error::invalid(format!("zeta_complex requires Re(s) > 0, got {s}")));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::invalid("zeta has a pole at s = 1"));
    }
    let denom = Complex64::new(1.0, 0.0) - (Complex64::new(1.0, 0.0) - s).exp2();
    if denom.norm() < 0.25 {
        return zeta_euler_maclaurin(s);
    }
    Ok(eta_borwein(s) / denom)
}

/// Dirichlet eta by Borwein's algorithm 2.
///
/// The truncation error is of order `(3 + sqrt 8)^-n e^{pi |t| / 2}`.
pub fn eta_borwein(s: Complex64) -> Complex64 {
    let n = (((PI * s.im.abs() / 2.0) + 40.0) / (3.0 + 8f64.sqrt()).ln()).ceil() as usize;
    let nf = n as f64;
    // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0 / nf;
    let mut acc = term;
    d.push(nf * acc);
    for i in 1..=n {
        let fi = i as f64;
        term *= 4.0 * (nf + fi - 1.0) * (nf - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
        acc += term;
        d.push(nf * acc);
    }
    let dn = d[n];
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for k in 0..n {
        let w = (d[k] - dn) / dn;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let t = (-s * ((k + 1) as f64).ln()).exp() * (sign * w);
        re.add(t.re);
        im.add(t.im);
    }
    -Complex64::new(re.value(), im.value())
}

/// `zeta(s)` by Euler-Maclaurin summation, valid for any `s != 1`
/// with `|s|` well below `2 pi m` (`m = 40` here).
pub fn zeta_euler_maclaurin(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::invalid("zeta has a pole at s = 1"));
    }
    let m = 40.0f64.max(s.norm());
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    let mut push = |z: Complex64| {
        re.add(z.re);
        im.add(z.im);
    };
    let mut n = 1.0;
    while n < m {
        push((-s * f64::ln(n)).exp());
        n += 1.0;
    }
    let ln_m = m.ln();
    let m_pow = (-s * ln_m).exp();
    push(m_pow * m / (s - 1.0));
    push(m_pow * 0.5);
    let mut rising = s;
    let mut fact = 2.0;
    let mut mp = m_pow / m;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        push(rising * mp * (b / fact));
        let j2 = 2.0 * (j as f64 + 1.0);
        rising *= (s + j2 - 1.0) * (s + j2);
        fact *= (j2 + 1.0) * (j2 + 2.0);
        mp /= m * m;
    }
    Ok(Complex64::new(re.value(), im.value()))
}

/// Central difference of `zeta` at `s` with real step `h`.
fn central_difference(s: Complex64, h: f64) -> Result<Complex64> {
    let up = zeta_complex(s + h)?;
    let down = zeta_complex(s - h)?;
    Ok((up - down) / (2.0 * h))
}

/// Step sizes scanned by [`zeta_derivative`].
pub const DERIVATIVE_STEPS: [f64; 3] = [1e-3, 1e-4, 1e-5];

/// Relative agreement required between the two Richardson extrapolants.
pub const DERIVATIVE_AGREEMENT: f64 = 1e-6;

/// `zeta'(s)` by central differences with Richardson extrapolation.
///
/// Differences at `h = 1e-3, 1e-4, 1e-5` give two extrapolants
/// `(100 D(h/10) - D(h)) / 99`; they must agree to `1e-6` relative.
pub fn zeta_derivative(s: Complex64) -> Result<Complex64> {
    let d: Vec<Complex64> = DERIVATIVE_STEPS
        .iter()
        .map(|&h| central_difference(s, h))
        .collect::<Result<_>>()?;
    let r1 = (d[1] * 100.0 - d[0]) / 99.0;
    let r2 = (d[2] * 100.0 - d[1]) / 99.0;
    if (r1 - r2).norm() > DERIVATIVE_AGREEMENT * r2.norm() {
        return Err(Error::NonConvergent(format!(
            "zeta'({s}) extrapolants disagree: {r1} vs {r2}"
        )));
    }
    Ok(r2)
}

/// `zeta'(1/2 + i t)`, normally evaluated at a nontrivial zero.
pub fn zeta_prime_at_zero(t: f64) -> Result<Complex64> {
    if !(t > 0.0) {
        return Err(Error::invalid(format!("zero ordinate must be positive, got {t}")));
    }
    zeta_derivative(Complex64::new(0.5, t))
}

/// `zeta'(-2n) = (-1)^n (2n)! zeta(2n+1) / (2^{2n+1} pi^{2n})` for `1 <= n <= 20`,
/// evaluated in log space.
pub fn zeta_prime_trivial(n: u32) -> Result<f64> {
    if !(1..=MAX_TRIVIAL_INDEX).contains(&n) {
        return Err(Error::invalid(format!(
            "trivial-zero index must be in 1..={MAX_TRIVIAL_INDEX}, got {n}"
        )));
    }
    let nf = n as f64;
    let ln_mag = ln_gamma(2.0 * nf + 1.0)? + zeta_real(2.0 * nf + 1.0)?.ln()
        - (2.0 * nf + 1.0) * std::f64::consts::LN_2
        - 2.0 * nf * PI.ln();
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * ln_mag.exp())
}
