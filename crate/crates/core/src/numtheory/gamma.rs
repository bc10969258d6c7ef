//! Complex log-Gamma by upward recurrence and the Stirling series.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// `B_{2j}` for `j = 1..=15`.
pub(crate) const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

const STIRLING_TERMS: usize = 10;
const STIRLING_MIN_RE: f64 = 15.0;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Stirling correction `sum B_{2j} / (2j (2j-1) w^{2j-1})`.
fn stirling_correction(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, b) in BERNOULLI_EVEN.iter().take(STIRLING_TERMS).enumerate() {
        let m = 2.0 * (j as f64 + 1.0);
        acc += pow * (b / (m * (m - 1.0)));
        pow *= inv2;
    }
    acc
}

fn stirling(w: Complex64) -> Complex64 {
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + stirling_correction(w)
}

/// Principal-branch `ln Gamma(z)`.
///
/// Arguments with real part below 15 are shifted up with
/// `ln Gamma(z) = ln Gamma(z + m) - sum ln(z + j)`; the imaginary part is
/// therefore a continuous logarithm of `Gamma`, and its exponential is
/// `Gamma(z)` everywhere off the poles.
pub fn log_gamma_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::invalid(format!("log_gamma of non-finite {z}")));
    }
    if is_pole(z) {
        return Err(Error::invalid(format!(
            "Gamma has a pole at the nonpositive integer {}",
            z.re
        )));
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < STIRLING_MIN_RE {
        shift += w.ln();
        w += 1.0;
    }
    Ok(stirling(w) - shift)
}

/// `Gamma(z)` as `exp(ln Gamma(z))`.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    log_gamma_complex(z).map(|l| l.exp())
}

/// `ln |Gamma(x)|` for real `x` off the poles.
pub fn ln_gamma(x: f64) -> Result<f64> {
    log_gamma_complex(Complex64::new(x, 0.0)).map(|l| l.re)
}

/// `Gamma(x)` for real `x`.
pub fn gamma(x: f64) -> Result<f64> {
    let l = log_gamma_complex(Complex64::new(x, 0.0))?;
    // im is 0 or an odd multiple of pi; its cosine carries the sign.
    Ok(l.re.exp() * l.im.cos().signum())
}

/// `ln(1 + w)` without cancellation for small `|w|`.
pub(crate) fn ln1p_complex(w: Complex64) -> Complex64 {
    if w.norm() > 0.5 {
        return (w + 1.0).ln();
    }
    let re = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
    let im = w.im.atan2(1.0 + w.re);
    Complex64::new(re, im)
}

/// `ln Gamma(x + a) - ln Gamma(x)`.
///
/// For large `x` the two log-Gammas are huge and nearly equal; the
/// difference is then expanded directly:
/// `a ln x + (x + a - 1/2) ln(1 + a/x) - a + S(x + a) - S(x)`.
pub fn ln_gamma_ratio(x: Complex64, a: Complex64) -> Result<Complex64> {
    let xa = x + a;
    if is_pole(x) || is_pole(xa) {
        return Err(Error::invalid(format!(
            "Gamma pole in ratio Gamma({xa})/Gamma({x})"
        )));
    }
    if x.re >= 2.0 * STIRLING_MIN_RE && xa.re >= STIRLING_MIN_RE && a.norm() <= 0.5 * x.norm() {
        let lead = a * x.ln() + (xa - 0.5) * ln1p_complex(a / x) - a;
        return Ok(lead + stirling_correction(xa) - stirling_correction(x));
    }
    Ok(log_gamma_complex(xa)? - log_gamma_complex(x)?)
}

/// Reflection-based sanity value: `Gamma(z) Gamma(1 - z) = pi / sin(pi z)`.
pub fn reflection_product(z: Complex64) -> Complex64 {
    Complex64::new(PI, 0.0) / (z * PI).sin()
}
