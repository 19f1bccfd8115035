use std::f64::consts::PI;

use lightning_core::bench::{sweep_prototype, SweepSetup};
use lightning_core::domain::{
    default_plan, make_sector, prototype_eval, Multiplier, PrototypeSpec,
};
use lightning_core::lightning::{
    analytic_residues_pow, build_lp, cluster_poles, default_n2, eval_approximant, quadrature_sum,
    sigma_opt, sup_error, DiscretizationPlan, LpMode,
};
use lightning_core::{Complex64, Error};

#[test]
fn integer_power_is_reproduced_by_the_polynomial() {
    let domain = make_sector(0.5, 1.0).unwrap();
    for sigma in [1.0, 3.0, 7.0] {
        let a = build_lp(
            &PrototypeSpec::pow(2.0).unwrap(),
            &domain,
            sigma,
            9,
            2,
            LpMode::LsPoly,
            1.0,
        )
        .unwrap();
        assert!(a.residues.iter().all(|r| *r == Complex64::new(0.0, 0.0)));
        let (err, _) = sup_error(&a, &default_plan(&domain)).unwrap();
        assert!(err <= 1e-12, "sigma {sigma}: {err}");
    }
    let recs = sweep_prototype(
        &PrototypeSpec::pow(2.0).unwrap(),
        0.0,
        2.0,
        &[4, 9, 16],
        SweepSetup::default(),
    )
    .unwrap();
    assert!(recs.iter().all(|r| r.sup_err <= 1e-12));
}

#[test]
fn integer_alpha_with_cosine_multiplier() {
    let spec = PrototypeSpec::new(
        lightning_core::domain::TargetKind::Pow,
        2.0,
        Multiplier::Cos,
    )
    .unwrap();
    let domain = make_sector(0.0, 1.0).unwrap();
    let a = build_lp(
        &spec,
        &domain,
        sigma_opt(2.0, 0.0).unwrap(),
        16,
        12,
        LpMode::LsPoly,
        1.0,
    )
    .unwrap();
    let (err, _) = sup_error(&a, &default_plan(&domain)).unwrap();
    assert!(err <= 1e-10, "{err}");
}

#[test]
fn half_power_point_example() {
    let domain = make_sector(0.0, 1.0).unwrap();
    let a = build_lp(
        &PrototypeSpec::pow(0.5).unwrap(),
        &domain,
        2.0 * PI,
        36,
        8,
        LpMode::LsPoly,
        1.0,
    )
    .unwrap();
    let (err, at) = sup_error(&a, &default_plan(&domain)).unwrap();
    assert!(err <= 1e-7, "{err}");
    assert!(at.norm() < 1.0);
}

#[test]
fn degree_accounting() {
    let domain = make_sector(1.0, 1.0).unwrap();
    for n1 in [9, 16, 25] {
        let n2 = default_n2(n1);
        let a = build_lp(
            &PrototypeSpec::pow(0.5).unwrap(),
            &domain,
            3.0,
            n1,
            n2,
            LpMode::LsPoly,
            1.0,
        )
        .unwrap();
        assert_eq!(a.residues.len(), n1 + 1);
        assert_eq!(a.poly.degree(), n2);
        assert!(a.tail_poles.is_empty() && a.tail_residues.is_empty());
        assert_eq!(a.total_degree(), n1 + n2 + 1);
    }
    assert_eq!(default_n2(9), 4);
    assert_eq!(default_n2(64), 11);
}

#[test]
fn residue_examples() {
    let spec = PrototypeSpec::pow(0.5).unwrap();
    let plan = DiscretizationPlan::new(&spec, 2.0 * PI, 16, 1.0).unwrap();
    let poles = cluster_poles(1.0, 2.0 * PI, 16).unwrap();
    let r = analytic_residues_pow(&plan, &poles, 0.5).unwrap();
    assert!((r[0].re + 0.5).abs() < 1e-15);
    // C = 2 scales residues by 2^{1+α}
    let plan2 = DiscretizationPlan::new(&spec, 2.0 * PI, 16, 2.0).unwrap();
    let poles2 = cluster_poles(2.0, 2.0 * PI, 16).unwrap();
    let r2 = analytic_residues_pow(&plan2, &poles2, 0.5).unwrap();
    for (a, b) in r.iter().zip(&r2) {
        assert!((b.re - 2f64.powf(1.5) * a.re).abs() <= 1e-14 * b.re.abs());
    }
    let mismatched = cluster_poles(1.0, 3.0, 16).unwrap();
    assert!(matches!(
        analytic_residues_pow(&plan, &mismatched, 0.5),
        Err(Error::Domain(_))
    ));
}

#[test]
fn quadrature_sum_tracks_the_target() {
    let spec = PrototypeSpec::pow(0.5).unwrap();
    let plan = DiscretizationPlan::new(&spec, 2.0 * PI, 64, 1.0).unwrap();
    // e^{−π√N₁}-scale discretization plus truncation error
    let budget = 10.0 * (-PI * 8.0f64).exp();
    for k in 0..20 {
        let r = 10f64.powf(-8.0 * k as f64 / 19.0);
        let z = Complex64::new(r, 0.0);
        let v = quadrature_sum(&plan, &spec, z).unwrap();
        assert!(
            (v - prototype_eval(&spec, z).unwrap()).norm() <= budget,
            "{z}"
        );
    }
    assert_eq!(
        quadrature_sum(&plan, &spec, Complex64::new(0.0, 0.0)).unwrap(),
        Complex64::new(0.0, 0.0)
    );
}

#[test]
fn modes_agree_up_to_their_errors() {
    for beta in [0.0, 0.5, 1.0] {
        let domain = make_sector(beta, 1.0).unwrap();
        let spec = PrototypeSpec::pow(0.5).unwrap();
        let sigma = sigma_opt(0.5, beta).unwrap();
        let plan = default_plan(&domain);
        let tail = build_lp(
            &spec,
            &domain,
            sigma,
            25,
            default_n2(25),
            LpMode::AnalyticTail,
            1.0,
        )
        .unwrap();
        let ls = build_lp(
            &spec,
            &domain,
            sigma,
            25,
            default_n2(25),
            LpMode::LsPoly,
            1.0,
        )
        .unwrap();
        let (e1, _) = sup_error(&tail, &plan).unwrap();
        let (e2, _) = sup_error(&ls, &plan).unwrap();
        let gap = plan
            .points
            .iter()
            .map(|&z| (tail.eval(z).unwrap() - ls.eval(z).unwrap()).norm())
            .fold(0.0, f64::max);
        assert!(gap <= 10.0 * e1.max(e2), "beta {beta}: {gap} vs {e1} {e2}");
        assert!(!tail.tail_poles.is_empty() && tail.tail_poles.iter().all(|p| p.abs() > 1.0));
    }
}

#[test]
fn analytic_tail_needs_unit_multiplier() {
    let spec = PrototypeSpec::new(
        lightning_core::domain::TargetKind::Pow,
        0.5,
        Multiplier::Exp,
    )
    .unwrap();
    let domain = make_sector(0.0, 1.0).unwrap();
    assert!(build_lp(&spec, &domain, 2.0, 9, 4, LpMode::AnalyticTail, 1.0).is_err());
    assert!(build_lp(
        &PrototypeSpec::pow(0.5).unwrap(),
        &domain,
        2.0,
        9,
        0,
        LpMode::LsPoly,
        1.0
    )
    .is_ok());
    assert!(build_lp(
        &PrototypeSpec::pow(1.5).unwrap(),
        &domain,
        2.0,
        9,
        0,
        LpMode::LsPoly,
        1.0
    )
    .is_err());
}

#[test]
fn multipliers_converge() {
    for g in [Multiplier::Cos, Multiplier::Exp, Multiplier::SinZ5] {
        let spec = PrototypeSpec::new(lightning_core::domain::TargetKind::Pow, 0.5, g).unwrap();
        let domain = make_sector(0.5, 1.0).unwrap();
        let sigma = sigma_opt(0.5, 0.5).unwrap();
        let coarse = build_lp(&spec, &domain, sigma, 9, 6, LpMode::LsPoly, 1.0).unwrap();
        let fine = build_lp(&spec, &domain, sigma, 49, 12, LpMode::LsPoly, 1.0).unwrap();
        let plan = default_plan(&domain);
        let (e1, _) = sup_error(&coarse, &plan).unwrap();
        let (e2, _) = sup_error(&fine, &plan).unwrap();
        // sin(z⁵) needs a high-degree polynomial part, so its gain is the slowest
        assert!(e2 < 0.1 * e1, "{g:?}: {e1} -> {e2}");
    }
}

#[test]
fn evaluation_near_a_pole_is_reported() {
    let domain = make_sector(0.0, 1.0).unwrap();
    let a = build_lp(
        &PrototypeSpec::pow(0.5).unwrap(),
        &domain,
        2.0 * PI,
        9,
        4,
        LpMode::LsPoly,
        1.0,
    )
    .unwrap();
    let p = a.poles.poles[3];
    assert!(matches!(
        eval_approximant(&a, Complex64::new(p, 0.0)),
        Err(Error::PoleProximity { index: 3 })
    ));
    assert!(eval_approximant(&a, Complex64::new(0.0, 0.0))
        .unwrap()
        .norm()
        .is_finite());
}

#[test]
fn tip_dominated_error_for_fractional_powers() {
    let domain = make_sector(0.0, 1.0).unwrap();
    let plan = default_plan(&domain);
    for alpha in [0.25, 0.5, 0.75] {
        let a = build_lp(
            &PrototypeSpec::pow(alpha).unwrap(),
            &domain,
            sigma_opt(alpha, 0.0).unwrap(),
            25,
            default_n2(25),
            LpMode::LsPoly,
            1.0,
        )
        .unwrap();
        let (_, at) = sup_error(&a, &plan).unwrap();
        // diagnostic only: the maximizer sits well inside the unit interval
        assert!(at.norm() < 0.5, "alpha {alpha}: argmax {at}");
    }
}
