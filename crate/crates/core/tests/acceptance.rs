//! End-to-end acceptance checks, one test per criterion. Each prints a single
//! `criterion N [PASS|FAIL]` line with the measured figures before asserting.

mod common;

use std::f64::consts::PI;
use std::io::Write;
use std::time::Instant;

use critwave::coefficients::{
    ck_discrete_derivative_check, ck_fluctuation_bound, fluctuation_scan, CoefficientKernel,
};
use critwave::numtheory::{MoebiusTable, ZeroSet};
use critwave::pochhammer::{
    log_spaced_grid, pochhammer_bound_diagnostic, pochhammer_gamma_ratio, pochhammer_product,
};
use critwave::reciprocal::{duality_transform, reciprocal_zeta_partial, ReciprocalQuery};
use critwave::stability::{amplitude_halving_thresholds, stability_side_by_side, StabilityProblem};
use critwave::wave::{
    analyze_oscillations, g_trivial, inner_sums, nontrivial_sum, psi, psi_from_inner, NontrivialOptions,
    WaveParams, WaveTrace, XGrid, DEFAULT_TRIVIAL_TERMS,
};
use critwave::Complex64;

/// Written to the raw stdout handle so the line survives the harness's output capture.
fn report(n: u32, pass: bool, detail: String) {
    let line = format!("criterion {n} [{}] {detail}\n", if pass { "PASS" } else { "FAIL" });
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
}

fn table() -> MoebiusTable {
    MoebiusTable::sieve(2000).unwrap()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

#[test]
fn criterion_01_decomposition_agreement() {
    let start = Instant::now();
    let t = table();
    let p = WaveParams::standard(0.5).with_grid(XGrid::new(5.0, 30.0, 0.01).unwrap());
    let zeros = ZeroSet::first(2).unwrap();
    let wave = psi(&p, &t).unwrap();
    let r = nontrivial_sum(&p, &zeros, 2, &NontrivialOptions::default()).unwrap();
    let g = g_trivial(&p, &zeros, DEFAULT_TRIVIAL_TERMS).unwrap();
    let resid = WaveTrace::combine("resid", &[(1.0, &wave), (-1.0, &r), (-1.0, &g)]).unwrap();
    let max_resid = max_abs(&resid.values());
    let threshold = 0.25 * max_abs(&g.values());
    let secs = start.elapsed().as_secs_f64();
    let pass = max_resid <= threshold && secs <= 300.0;
    report(
        1,
        pass,
        format!(
            "max |(psi - r1 - r2) - g_1/2| = {max_resid:.4e} vs 25% of max |g_1/2| = {threshold:.4e} on [5, 30]; {secs:.2} s"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_02_oscillation_count() {
    let wave = psi(&WaveParams::standard(0.5), &table()).unwrap();
    let r = analyze_oscillations(&wave).unwrap();
    let pass = (13..=15).contains(&r.count);
    report(
        2,
        pass,
        format!(
            "psi_1/2 on [0, 30]: {} max-then-min oscillations ({} extrema), target 14 +- 1",
            r.count,
            r.extrema.len()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_03_amplitude_ordering() {
    let t = table();
    let base = WaveParams::standard(0.5);
    let inner = inner_sums(&base, &t).unwrap();
    // increasing rho
    let rhos = [0.3, 0.375, 0.5, 0.625, 0.75, 0.875, 1.0];
    let mut envelopes = Vec::new();
    let mut trends = Vec::new();
    for &rho in &rhos {
        let r = analyze_oscillations(&psi_from_inner(&base.with_rho(rho), &inner).unwrap()).unwrap();
        envelopes.push(r.last_envelope(3, 30.0));
        trends.push(r.envelope_trend(10.0).unwrap());
    }
    let ordered = envelopes
        .windows(2)
        .all(|w| w[0].len() == 3 && w[1].len() == 3 && (0..3).all(|j| w[0][j] > w[1][j]));
    let trend_ok = trends[4..].iter().all(|&s| s < 0.0) && trends[..2].iter().all(|&s| s > 0.0);
    let pass = ordered && trend_ok;
    let trend_text: Vec<String> = rhos.iter().zip(&trends).map(|(r, s)| format!("{r}: {s:+.4}")).collect();
    report(
        3,
        pass,
        format!(
            "last-three envelopes strictly decreasing in rho: {ordered}; envelope trends (x >= 10) {}",
            trend_text.join(", ")
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_04_stability_thresholds() {
    let p = StabilityProblem::reference();
    let [printed, recomputed] = stability_side_by_side(&p).unwrap();
    let halving = amplitude_halving_thresholds(&p, &[2000, 1_000_000_000]).unwrap();
    let x27 = printed.x_threshold.unwrap();
    let x35 = halving[0].x_threshold;
    let x88 = halving[1].x_threshold;
    let pass = (x27 - 27.0).abs() <= 1.0
        && (x35 - 35.0).abs() <= 2.0
        && (x88 - 88.0).abs() <= 2.0
        && recomputed.x_threshold.is_some();
    report(
        4,
        pass,
        format!(
            "printed tail {:.3e}: x <= {x27:.3}; recomputed tail {:.3e}: x <= {:.3}; halving x > {x35:.3} (N = 2000), x > {x88:.3} (N = 1e9)",
            printed.tail_constant,
            recomputed.tail_constant,
            recomputed.x_threshold.unwrap()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_05_fluctuation_decay() {
    let t = table();
    let mut pass = true;
    let mut parts = Vec::new();
    for (alpha, beta, target) in [(7.5, 4.0, -21.0 / 8.0), (2.0, 2.0, -1.5)] {
        let k = CoefficientKernel::new(&t, alpha, beta, 2000).unwrap();
        let scan = fluctuation_scan(&k, 4, 20).unwrap();
        let ok = (scan.signed_fit.slope - target).abs() <= 0.15;
        pass &= ok;
        parts.push(format!(
            "({alpha}, {beta}): slope of |c_hat_k - c_k| = {:.3} vs {target:.3} ({}); |mu| majorant slope {:.3}",
            scan.signed_fit.slope,
            if ok { "ok" } else { "off" },
            scan.majorant_fit.slope
        ));
    }
    report(5, pass, parts.join("; "));
    assert!(pass);
}

#[test]
fn criterion_06_integral_identities() {
    let mut worst = 0.0f64;
    let mut worst_asymptotic = 0.0f64;
    for (alpha, beta) in [(7.5, 4.0), (2.0, 2.0)] {
        for k in [10.0, 100.0, 1000.0] {
            let b = ck_fluctuation_bound(k, alpha, beta).unwrap();
            let qe = common::exact_integral_quad(k, alpha, beta);
            let qx = common::exponential_integral_quad(k, alpha, beta);
            worst = worst.max(((b.exact_integral - qe) / qe).abs());
            worst = worst.max(((b.exponential_integral - qx) / qx).abs());
            worst_asymptotic = worst_asymptotic.max(((b.exponential_integral_asymptotic - qx) / qx).abs());
        }
    }
    let pass = worst <= 1e-8;
    report(6, pass, format!(
            "max relative gap closed form vs quadrature: {worst:.3e} (k = 10, 100, 1000); \
             the large-k form Gamma(a)/(beta k^a) is off by up to {worst_asymptotic:.3e}"
        ),);
    assert!(pass);
}

#[test]
fn criterion_07_discrete_derivative() {
    let t = table();
    let mut worst = 0.0f64;
    for k in [0, 1, 10, 100] {
        let c = ck_discrete_derivative_check(k, 7.5, 4.0, 2000, &t).unwrap();
        worst = worst.max(c.relative_gap());
    }
    let pass = worst <= 1e-13;
    report(7, pass, format!("max |(c_k - c_k+1) - c_k(alpha+beta)| / |c_k(alpha+beta)| = {worst:.3e}"));
    assert!(pass);
}

#[test]
fn criterion_08_reciprocal_reconstruction() {
    let t = table();
    let mut pass = true;
    let mut parts = Vec::new();
    for (s, target) in [(2.0, 6.0 / (PI * PI)), (3.0, 1.0 / common::ZETA_3)] {
        let q = ReciprocalQuery::new(Complex64::new(s, 0.0)).with_k_max(10_000);
        let e = reciprocal_zeta_partial(&q, &t).unwrap();
        let target = Complex64::new(target, 0.0);
        let err = (e.final_value - target).norm();
        let err_1e3 = (e.partial_sums[1000] - target).norm();
        let rate = (err / err_1e3).log10();
        let ok = err <= 1e-4;
        pass &= ok;
        parts.push(format!(
            "s = {s}: |partial(1e4) - 1/zeta(s)| = {err:.3e} (at 1e3: {err_1e3:.3e}, error ~ K^{rate:.2})"
        ));
    }
    report(8, pass, parts.join("; "));
    assert!(pass);
}

#[test]
fn criterion_09_duality() {
    let s = Complex64::new(2.0, 0.0);
    let v = duality_transform(s, Complex64::new(6.0 / (PI * PI), 0.0))
        .unwrap()
        .finite()
        .unwrap();
    let rel = (v - (-12.0)).norm() / 12.0;
    let mut worst_inv = 0.0f64;
    for s in [Complex64::new(2.0, 0.0), Complex64::new(0.3, 7.0), Complex64::new(4.0, 0.0), Complex64::new(0.75, -30.0)] {
        let r = Complex64::new(0.6, 0.1);
        let once = duality_transform(s, r).unwrap().finite().unwrap();
        let twice = duality_transform(1.0 - s, once).unwrap().finite().unwrap();
        worst_inv = worst_inv.max((twice - r).norm() / r.norm());
    }
    let pass = rel <= 1e-10 && worst_inv <= 1e-10;
    report(9, pass, format!("1/zeta(-1) relative error {rel:.3e}; involution max relative error {worst_inv:.3e}"));
    assert!(pass);
}

#[test]
fn criterion_10_property_suites() {
    // sieve vs trial division
    let sieve = MoebiusTable::sieve(10_000).unwrap();
    let sieve_ok = (1..=10_000u64).all(|n| sieve.mu(n) == common::mu_trial(n));

    // rescaling law: identical inner sum, hence identical zero sets
    let t = table();
    let base = WaveParams::standard(0.5);
    let inner = inner_sums(&base, &t).unwrap();
    let xs = base.grid.points();
    let mut rescale_ok = true;
    let mut reference_signs: Option<Vec<bool>> = None;
    for rho in [0.3, 0.5, 0.75, 1.0] {
        let p = base.with_rho(rho);
        let w = psi_from_inner(&p, &inner).unwrap();
        let e = p.exponent();
        rescale_ok &= w
            .values()
            .iter()
            .zip(&inner)
            .zip(&xs)
            .all(|((v, s), x)| v.to_bits() == ((e * x).exp() * s).to_bits());
        let signs: Vec<bool> = w.values().iter().map(|v| v.is_sign_negative()).collect();
        match &reference_signs {
            Some(r) => rescale_ok &= *r == signs,
            None => reference_signs = Some(signs),
        }
    }

    // Pochhammer product vs Gamma ratio on a deterministic scatter of pairs
    let mut worst = 0.0f64;
    let mut state = 0x2545_f491_4f6c_dd1du64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    for _ in 0..100 {
        let k = 1 + (next() * 9_999.0) as u64;
        let s = Complex64::new(-2.0 + 12.0 * next(), -40.0 + 80.0 * next());
        let z = (s - 7.5) / 4.0 + 1.0;
        let a = pochhammer_product(z, k);
        if a.ln_abs < (1e-300f64).ln() {
            continue;
        }
        let b = pochhammer_gamma_ratio(z, k).unwrap();
        worst = worst.max((a.value() - b.value()).norm() / a.value().norm());
    }
    let poch_ok = worst <= 1e-10;

    let grid = log_spaced_grid(100, 10_000_000_000, 41);
    let d = pochhammer_bound_diagnostic(Complex64::new(0.5, 0.0), 7.5, 4.0, &grid).unwrap();

    let pass = sieve_ok && rescale_ok && poch_ok && d.bounded;
    report(
        10,
        pass,
        format!(
            "sieve = trial division to 1e4: {sieve_ok}; bit-level rescaling and shared zeros: {rescale_ok}; \
             product vs Gamma ratio max relative gap {worst:.2e}; bound diagnostic sup {:.4} (last decade {:.4}, earlier {:.4}), bounded: {}",
            d.supremum, d.last_decade_max, d.earlier_max, d.bounded
        ),
    );
    assert!(pass);
}
