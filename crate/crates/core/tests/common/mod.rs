//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

/// Möbius function by trial division.
pub fn mu_trial(mut n: u64) -> i8 {
    assert!(n >= 1);
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

// 7-point Gauss and 15-point Kronrod nodes/weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive Gauss-Kronrod quadrature on `[a, b]` to relative tolerance `rtol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, rtol: f64) -> f64 {
    let f: &dyn Fn(f64) -> f64 = &f;
    let mut pieces = vec![(a, b, gk15(f, a, b))];
    for _ in 0..100_000 {
        let total: f64 = pieces.iter().map(|p| p.2 .0).sum();
        let err: f64 = pieces.iter().map(|p| p.2 .1).sum();
        if err <= rtol * total.abs() {
            return total;
        }
        let (i, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2 .1.partial_cmp(&y.1 .2 .1).unwrap())
            .unwrap();
        let (lo, hi, _) = pieces.swap_remove(i);
        let mid = 0.5 * (lo + hi);
        pieces.push((lo, mid, gk15(f, lo, mid)));
        pieces.push((mid, hi, gk15(f, mid, hi)));
    }
    panic!("quadrature did not converge");
}

/// `int_1^inf x^-alpha (1 - x^-beta)^k dx`, via `x = 1/t`.
pub fn exact_integral_quad(k: f64, alpha: f64, beta: f64) -> f64 {
    integrate(|t| t.powf(alpha - 2.0) * (1.0 - t.powf(beta)).powf(k), 0.0, 1.0, 1e-13)
}

/// `int_1^inf x^-alpha exp(-k / x^beta) dx`, via `x = 1/t`.
pub fn exponential_integral_quad(k: f64, alpha: f64, beta: f64) -> f64 {
    integrate(|t| t.powf(alpha - 2.0) * (-k * t.powf(beta)).exp(), 0.0, 1.0, 1e-13)
}

/// Plain double loop over `n <= truncation` using trial-division `mu`.
pub fn ck_exact_naive(k: u64, alpha: f64, beta: f64, truncation: u64) -> f64 {
    (1..=truncation)
        .map(|n| {
            let nf = n as f64;
            mu_trial(n) as f64 * nf.powf(-alpha) * (1.0 - nf.powf(-beta)).powi(k as i32)
        })
        .sum()
}

/// `psi(x)` summed directly from trial-division `mu`, largest terms last.
pub fn psi_naive(x: f64, alpha: f64, beta: f64, rho: f64, truncation: u64) -> f64 {
    let k = x.exp();
    let s: f64 = (1..=truncation)
        .rev()
        .map(|n| {
            let nf = n as f64;
            mu_trial(n) as f64 * nf.powf(-alpha) * (-k * nf.powf(-beta)).exp()
        })
        .sum();
    ((alpha - rho) / beta * x).exp() * s
}

// High-precision reference values.
pub const ZETA_2: f64 = 1.6449340668482264;
pub const ZETA_3: f64 = 1.2020569031595942;
pub const ZETA_7_5: f64 = 1.0058267275365228;
pub const ZETA_PRIME_MINUS_2: f64 = -0.03044845705839327;
pub const ZETA_PRIME_Z1: (f64, f64) = (0.7832965118670309, 0.1246998297481711);
pub const GAMMA_19_8: f64 = 1.2222561575898098;
