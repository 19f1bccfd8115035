use std::f64::consts::PI;

use lightning_core::domain::{chebyshev_nodes, prototype_eval, PrototypeSpec, DEFAULT_DELTA};
use lightning_core::quadrature::{
    closed_form_e1, closed_form_e2, closed_form_i1, closed_form_i2, closed_form_sinc,
    fourier_decay_fit, integral_rep_pow, integral_rep_pow_log, poisson_error_bound,
    trapezoid_real_line, FourierDecayProfile,
};
use lightning_core::{Complex64, Error};
use proptest::prelude::*;

fn sector_point(beta: f64, r: f64, t: f64) -> Complex64 {
    Complex64::from_polar(r, t * (1.0 - beta / 2.0) * PI)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn representation_matches_power(r in 1e-6f64..1.0, t in -1.0f64..1.0) {
        for beta in [0.0, 0.5, 1.5] {
            let z = sector_point(beta, r, t);
            for alpha in [0.3, 0.5, 0.8] {
                let v = integral_rep_pow(z, alpha, 0, &[]).unwrap();
                let exact = prototype_eval(&PrototypeSpec::pow(alpha).unwrap(), z).unwrap();
                prop_assert!((v - exact).norm() <= 1e-10 * z.norm().powf(alpha).max(1.0));
            }
            for alpha in [1.7f64, 2.5] {
                let ell = alpha.floor() as usize;
                let v = integral_rep_pow(z, alpha, ell, &chebyshev_nodes(ell, DEFAULT_DELTA)).unwrap();
                let exact = prototype_eval(&PrototypeSpec::pow(alpha).unwrap(), z).unwrap();
                prop_assert!((v - exact).norm() <= 1e-8 * z.norm().powf(alpha).max(1.0));
                let ell = alpha.ceil() as usize;
                let v = integral_rep_pow_log(z, alpha, ell, &chebyshev_nodes(ell, DEFAULT_DELTA)).unwrap();
                let exact = prototype_eval(&PrototypeSpec::pow_log(alpha).unwrap(), z).unwrap();
                prop_assert!((v - exact).norm() <= 1e-8 * z.norm().powf(alpha).max(1.0));
            }
        }
    }
}

#[test]
fn representation_branch_cut_is_rejected() {
    let z = Complex64::new(-0.5, 0.0);
    assert!(matches!(
        integral_rep_pow(z, 0.5, 0, &[]),
        Err(Error::BranchCut { .. })
    ));
}

#[test]
fn trapezoid_engine_matches_closed_forms() {
    for h in [1.0, 0.5] {
        let n = (100.0 / h) as usize;
        let r1 = trapezoid_real_line(|x| 1.0 / (1.0 + x * x), h, n, 3).unwrap();
        assert!((r1.value - closed_form_i1(h)).abs() <= 1e-9);
        assert!(r1.tail_estimate >= 0.0);
        let r2 = trapezoid_real_line(|x| (1.0 + x * x).powi(-2), h, n, 3).unwrap();
        assert!((r2.value - closed_form_i2(h)).abs() <= 1e-9);
    }
    // the long-window example
    let r = trapezoid_real_line(|x| 1.0 / (1.0 + x * x), 1.0, 400, 3).unwrap();
    assert!((r.value - PI / PI.tanh()).abs() <= 1e-9);
    let g = trapezoid_real_line(|x| (-x * x).exp(), 0.5, 20, 0).unwrap();
    assert!((g.value - PI.sqrt()).abs() <= 1e-12);
}

#[test]
fn error_ratio_law() {
    for h in [1.0, 0.5] {
        let ratio = closed_form_e1(h / 2.0) / closed_form_e1(h);
        let law = (2.0 * PI / h).exp_m1() / (4.0 * PI / h).exp_m1();
        assert!((ratio - law).abs() <= 1e-12 * law);
    }
}

#[test]
fn second_closed_form_agrees_with_its_error_formula() {
    for h in [0.25, 0.5, 1.0, 2.0] {
        let e2 = PI / 2.0 - closed_form_i2(h);
        assert!((e2 - closed_form_e2(h)).abs() <= 1e-13 * e2.abs().max(1e-300) + 1e-15);
        // coth form, computed independently
        let c = 1.0 / (PI / h).tanh();
        let v = PI * PI / (2.0 * h) * (c * c - 1.0) + 0.5 * PI * c;
        assert!((v - closed_form_i2(h)).abs() <= 1e-13 * v);
    }
    for h in [0.05, 0.1] {
        let q = closed_form_e2(h) / closed_form_e1(h) * h / PI;
        assert!((q - 1.0).abs() < 3.0 * h, "{h}: {q}");
    }
}

#[test]
fn poisson_bound_dominates_both_integrands() {
    let p1 = FourierDecayProfile::new(1.0, 1, PI).unwrap();
    let p2 = FourierDecayProfile::new(1.0, 2, 2.0 * PI * PI).unwrap();
    for h in [1.0, 0.5, 0.25] {
        assert!(poisson_error_bound(&p1, h) >= closed_form_e1(h).abs());
        assert!(poisson_error_bound(&p2, h) >= closed_form_e2(h).abs());
    }
    let unit = FourierDecayProfile::new(1.0, 1, 1.0).unwrap();
    assert!((poisson_error_bound(&unit, 1.0) - 2.0 / (2.0 * PI).exp_m1()).abs() < 1e-18);
    assert!(poisson_error_bound(&p2, 1e-3) < 1e-300);
}

#[test]
fn sinc_sums() {
    for h in [0.3, 0.5, 0.7, 0.999] {
        assert_eq!(closed_form_sinc(h).unwrap(), 0.5);
    }
    assert_eq!(0.5 - closed_form_sinc(1.0).unwrap(), -0.5);
    assert_eq!(0.5 - closed_form_sinc(2.5).unwrap(), -2.0);
    // raw symmetric partial sum of sin(2πx)/(2πx); its oscillating tail is O(1/(πnh))
    let h = 0.7;
    let sinc = |x: f64| {
        if x == 0.0 {
            1.0
        } else {
            (2.0 * PI * x).sin() / (2.0 * PI * x)
        }
    };
    let n = 200_000;
    let s: f64 = h * (1..=n).map(|k| 2.0 * sinc(k as f64 * h)).sum::<f64>() + h;
    assert!((s - 0.5).abs() < 1e-4);
}

#[test]
fn fourier_decay_examples() {
    let grid = [0.2, 0.4, 0.6, 0.8, 1.0];
    let f = fourier_decay_fit(|x| 1.0 / (1.0 + x * x), &grid, 0).unwrap();
    assert!((f.slope + 2.0 * PI).abs() <= 0.05 * 2.0 * PI);
    let upper = [0.5, 0.75, 1.0, 1.25, 1.5];
    let d = fourier_decay_fit(|x| 2.0 * x / (1.0 + x * x).powi(2), &upper, 1).unwrap();
    assert!((d.slope + 2.0 * PI).abs() <= 0.05 * 2.0 * PI);
    // slope of −π²ξ² is −2π²·mean(ξ), steeper than −4π once the grid is centered past 2/π
    let g = fourier_decay_fit(|x| (-x * x).exp(), &upper, 0).unwrap();
    assert!(g.slope < -4.0 * PI);
    assert!(fourier_decay_fit(|x| 1.0 / (1.0 + x * x), &grid[..3], 0).is_err());
}

#[test]
fn fourier_drops_unresolved_points() {
    // e^{-π²ξ²}·√π falls below the floor past ξ ≈ 1.7
    let grid = [0.2, 0.4, 0.6, 0.8, 1.0, 2.0, 3.0];
    let g = fourier_decay_fit(|x| (-x * x).exp(), &grid, 0).unwrap();
    assert_eq!(g.dropped, vec![2.0, 3.0]);
    assert_eq!(g.samples.len(), grid.len());
}
