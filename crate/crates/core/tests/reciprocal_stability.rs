use critwave::coefficients::CoefficientKernel;
use critwave::numtheory::{zeta_real, MoebiusTable};
use critwave::reciprocal::{duality_transform, exact_coefficients, reciprocal_zeta_partial, DualityValue, ReciprocalQuery};
use critwave::stability::{
    amplitude_halving_thresholds, solve_stability_threshold, stability_crossing, stability_side_by_side,
    tail_estimate, StabilityProblem, TailChoice,
};
use critwave::Complex64;
use proptest::prelude::*;

fn real(s: f64) -> Complex64 {
    Complex64::new(s, 0.0)
}

/// Max error over each decade `[10^d, 10^{d+1})` of `K`.
fn decade_errors(s: f64, oracle: f64) -> Vec<f64> {
    let t = MoebiusTable::sieve(2000).unwrap();
    let e = reciprocal_zeta_partial(&ReciprocalQuery::new(real(s)).with_k_max(10_000), &t).unwrap();
    (1..4)
        .map(|d| e.max_error(real(oracle), 10usize.pow(d), 10usize.pow(d + 1) - 1))
        .collect()
}

#[test]
fn partial_sums_approach_the_oracle_decade_by_decade() {
    for s in [2.0, 3.0, 3.5] {
        let errs = decade_errors(s, 1.0 / zeta_real(s).unwrap());
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "s = {s}: {errs:?}");
    }
}

#[test]
fn unit_pochhammer_point_sums_the_coefficients() {
    // s = alpha - beta makes every P_k equal to 1
    let t = MoebiusTable::sieve(2000).unwrap();
    let k_max = 10_000u64;
    let e = reciprocal_zeta_partial(&ReciprocalQuery::new(real(3.5)).with_k_max(k_max), &t).unwrap();
    let kernel = CoefficientKernel::new(&t, 7.5, 4.0, 2000).unwrap();
    let direct: f64 = exact_coefficients(&kernel, k_max).iter().sum();
    assert!((e.final_value.re - direct).abs() < 1e-14, "{} vs {direct}", e.final_value);
    assert_eq!(e.final_value.im, 0.0);
    // |mu| <= 1 majorant of sum_{k > K} c_k plus the n > N tail
    let k_tail: f64 = (2..=2000u64)
        .map(|n| {
            let n = n as f64;
            n.powf(-3.5) * ((k_max + 1) as f64 * (-n.powf(-4.0)).ln_1p()).exp()
        })
        .sum();
    let n_tail = 2000f64.powf(-2.5) / 2.5;
    let gap = (e.final_value.re - 1.0 / zeta_real(3.5).unwrap()).abs();
    assert!(gap <= k_tail + n_tail, "{gap} > {}", k_tail + n_tail);
}

#[test]
fn left_of_the_half_line_warns_but_returns() {
    let t = MoebiusTable::sieve(200).unwrap();
    let q = ReciprocalQuery {
        truncation: 200,
        ..ReciprocalQuery::new(Complex64::new(0.4, 3.0)).with_k_max(50)
    };
    let e = reciprocal_zeta_partial(&q, &t).unwrap();
    assert!(e.warning.is_some());
    assert_eq!(e.partial_sums.len(), 51);
}

#[test]
fn duality_at_four_gives_one_twenty() {
    let v = duality_transform(real(4.0), real(1.0 / zeta_real(4.0).unwrap())).unwrap();
    let c = v.finite().unwrap();
    assert!((c.re - 120.0).abs() < 1e-10 * 120.0 && c.im.abs() < 1e-12);
    assert!(matches!(
        duality_transform(real(5.0), real(1.0)).unwrap(),
        DualityValue::TrivialZero { .. }
    ));
}

#[test]
fn reference_problem_thresholds() {
    let [printed, recomputed] = stability_side_by_side(&StabilityProblem::reference()).unwrap();
    let xp = printed.x_threshold.unwrap();
    let xr = recomputed.x_threshold.unwrap();
    assert!((xp - 27.0).abs() <= 1.0, "{xp}");
    assert!((xr - 20.0).abs() <= 1.0, "{xr}");
    assert!(xr < xp);
    assert_eq!(printed.printed_constant_comparison, recomputed.printed_constant_comparison);
    assert!(printed.residual.abs() <= 1e-9 && recomputed.residual.abs() <= 1e-9);
}

#[test]
fn halving_thresholds_grow_with_truncation() {
    let p = StabilityProblem::reference();
    let h = amplitude_halving_thresholds(&p, &[100, 2000, 100_000, 1_000_000_000]).unwrap();
    assert!(h.windows(2).all(|w| w[1].x_threshold > w[0].x_threshold));
    assert!((h[1].x_threshold - 35.0).abs() <= 2.0);
    assert!((h[3].x_threshold - 88.0).abs() <= 2.0);
    assert!(h.iter().all(|t| t.residual.abs() <= 1e-9));
}

#[test]
fn infeasible_problem_is_reported() {
    let p = StabilityProblem::reference();
    assert!(solve_stability_threshold(&p, TailChoice::Explicit(1.0)).is_err());
    assert!(stability_crossing(&p, 0.0).is_err());
    let bad = StabilityProblem { n_low: 10, n_high: 5, ..p };
    assert!(tail_estimate(&bad).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn direct_tail_below_integral_bound(n_low in 2u64..5000, span in 1u64..100_000, alpha in 1.1f64..12.0) {
        let p = StabilityProblem { alpha, n_low, n_high: n_low + span, ..StabilityProblem::reference() };
        let t = tail_estimate(&p).unwrap();
        prop_assert!(t.direct_sum <= t.integral_bound * (1.0 + 1e-12));
    }

    #[test]
    fn bisection_residual_at_the_root(tail_exp in -40.0f64..-12.0, rho in 0.0f64..1.5) {
        let p = StabilityProblem { rho, ..StabilityProblem::reference() };
        if let Ok(r) = solve_stability_threshold(&p, TailChoice::Explicit(10f64.powf(tail_exp))) {
            if let Some(x) = r.x_threshold {
                prop_assert!(x > 0.0);
                prop_assert!(r.residual.abs() <= 1e-9, "{:?}", r);
            }
        }
    }
}
