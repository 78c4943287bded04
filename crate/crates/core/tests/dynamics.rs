use std::f64::consts::PI;

use ddpopt_core::basis::{to_basis, Basis};
use ddpopt_core::ddp::{
    ddp_integral, ddp_probability_single, find_transition_points, gamma_factor, stokes_check, SearchRegion,
    StokesOptions,
};
use ddpopt_core::families::{
    make_erf, make_erf_deviated, make_gaussian, make_landau_zener, make_parametrized, superadiabatic_gaussian,
    ShapeFunction,
};
use ddpopt_core::gaussian::{transition_points_closed, GaussianParams};
use ddpopt_core::propagator::{propagate, transition_probability, PropagationConfig};
use ddpopt_core::PulseModel;
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn probability(m: &PulseModel, rel: f64) -> f64 {
    let cfg = PropagationConfig::for_model(m).with_tolerances(rel, rel * 1e-2);
    transition_probability(m, &cfg).unwrap().p_adiabatic
}

#[test]
fn basis_equivalence_for_every_family() {
    let models = [
        make_erf(4.0, 1.0).unwrap(),
        make_erf_deviated(4.0, 1.0, 1.0).unwrap(),
        make_gaussian(3.0, 1.0, 1.0).unwrap(),
        superadiabatic_gaussian(3.0, 1.0).unwrap(),
        make_landau_zener(1.0, 1.0).unwrap().with_window((-8.0, 8.0)),
        make_parametrized(ShapeFunction::gaussian_pulse(1.0), 2.0, 1.0).unwrap(),
    ];
    for m in &models {
        let cfg = PropagationConfig::for_model(m);
        let d = propagate(m, &cfg).unwrap();
        let a = propagate(m, &cfg.with_basis(Basis::Adiabatic)).unwrap();
        let d = to_basis(m, d, Basis::Adiabatic).unwrap();
        for i in 0..2 {
            assert!((d.amps[i] - a.amps[i]).norm() <= 1e-8, "{}: {:?} vs {:?}", m.label(), d.amps, a.amps);
        }
    }
}

#[test]
fn tolerance_halving_stays_within_error_estimate() {
    for i in 0..20 {
        let w = 0.5 + 0.5 * i as f64;
        let m = make_erf(w, 1.0).unwrap();
        let cfg = PropagationConfig::for_model(&m).with_tolerances(1e-8, 1e-10);
        let coarse = transition_probability(&m, &cfg).unwrap();
        let fine = transition_probability(&m, &cfg.with_tolerances(5e-9, 5e-11)).unwrap();
        assert!(
            (coarse.p_adiabatic - fine.p_adiabatic).abs() <= coarse.error_estimate,
            "Omega0 T = {w}: {} vs {} (estimate {})",
            coarse.p_adiabatic,
            fine.p_adiabatic,
            coarse.error_estimate
        );
    }
}

#[test]
fn probabilities_are_complementary() {
    for &w in &[0.3, 2.0, 5.0] {
        let m = make_erf(w, 1.0).unwrap();
        let r = transition_probability(&m, &PropagationConfig::for_model(&m)).unwrap();
        assert!((r.p_adiabatic + r.p_diabatic - 1.0).abs() <= 2.0 * (r.norm_drift + 1e-10));
        assert!(r.norm_drift <= 1e-9);
    }
}

#[test]
fn integrators_at_two_tolerances_agree_for_erf_pulse() {
    let m = make_erf(5.0, 1.0).unwrap();
    let a = probability(&m, 1e-8);
    let b = probability(&m, 1e-10);
    assert!((a - b).abs() <= 1e-7 * b.max(1e-6), "{a} vs {b}");
}

#[test]
fn landau_zener_single_point_is_exact() {
    for &ratio in &[0.1f64, 0.5, 1.0, 2.0] {
        let m = make_landau_zener(ratio.sqrt(), 1.0).unwrap();
        let t0 = C64::new(0.0, ratio.sqrt());
        let ddp = ddp_probability_single(&m, t0).unwrap();
        assert!((ddp - (-PI * ratio / 2.0).exp()).abs() < 1e-12);
        let ode = probability(&m, 1e-10);
        assert!((ddp - ode).abs() < 1e-2, "ratio {ratio}: {ddp} vs {ode}");
    }
}

#[test]
fn fast_sweep_is_diabatic() {
    let m = make_landau_zener(1.0, 1e4).unwrap();
    assert!(probability(&m, 1e-10) > 0.999);
}

#[test]
fn deviated_probability_tends_to_optimized() {
    let base = probability(&make_erf(4.0, 1.0).unwrap(), 1e-11);
    for n in 1..8 {
        let mu = 2f64.powi(-n);
        let p = probability(&make_erf_deviated(4.0, 1.0, mu).unwrap(), 1e-11);
        let gap = (p - base).abs();
        // P(mu) = |a + b mu + ...|^2 need not approach P(0) monotonically.
        assert!(gap <= 0.05 * mu, "mu = {mu}: gap {gap}");
    }
}

#[test]
fn parametrized_points_sit_where_the_shape_is_imaginary() {
    // Omega0 = 2, Delta0 = 1: L(t0) = +-i/sqrt(3)
    let m = make_parametrized(ShapeFunction::gaussian_pulse(1.0), 2.0, 1.0).unwrap();
    let r = find_transition_points(&m, &SearchRegion::for_model(&m), 4).unwrap();
    assert!(!r.points.is_empty());
    for p in &r.points {
        let l = (-p.t0 * p.t0).exp();
        assert!((l.re).abs() < 1e-8 && (l.im.abs() - 3f64.sqrt().recip()).abs() < 1e-8, "{l}");
    }
}

#[test]
fn optimal_parametrized_pulse_has_no_points() {
    let m = make_parametrized(ShapeFunction::gaussian_pulse(1.0), 1.0, 1.0).unwrap();
    let r = find_transition_points(&m, &SearchRegion::for_model(&m), 4).unwrap();
    assert!(r.points.is_empty());
}

#[test]
fn zeros_satisfy_residual_bound_and_gamma_is_unimodular() {
    let models = [
        make_gaussian(0.5, 1.0, 1.0).unwrap(),
        superadiabatic_gaussian(2.0, 1.0).unwrap(),
        make_landau_zener(0.7, 1.3).unwrap(),
        make_erf_deviated(4.0, 1.0, 1.0).unwrap(),
        make_parametrized(ShapeFunction::sech_pulse(1.0), 2.0, 1.0).unwrap(),
    ];
    for m in &models {
        let region = SearchRegion::for_model(m).with_im_max(2.0 * m.time_scale());
        let r = find_transition_points(m, &region, 8).unwrap();
        assert!(!r.points.is_empty(), "{}", m.label());
        for p in &r.points {
            let w = m.frequency_scale();
            assert!(m.splitting_sq(p.t0).norm() <= 1e-10 * w * w);
            let g = gamma_factor(m, p.t0).unwrap();
            assert!((g.value.norm() - 1.0).abs() <= 1e-4, "{} at {}: {}", m.label(), p.t0, g.value);
            assert!((g.at_r - g.at_half_r).norm() <= 1e-6);
        }
    }
}

#[test]
fn symmetric_families_give_mirrored_points_and_actions() {
    let models = [
        make_gaussian(2.0, 1.0, 1.0).unwrap(),
        make_erf_deviated(4.0, 1.0, 1.0).unwrap(),
        make_parametrized(ShapeFunction::gaussian_pulse(1.0), 2.0, 1.0).unwrap(),
    ];
    for m in &models {
        let region = SearchRegion::for_model(m).with_im_max(2.0 * m.time_scale());
        let pts = find_transition_points(m, &region, 6).unwrap().points;
        for p in pts.iter().filter(|p| p.t0.re > 1e-6) {
            let mirror = -p.t0.conj();
            assert!(pts.iter().any(|q| (q.t0 - mirror).norm() < 1e-8), "{}", m.label());
            let d = ddp_integral(m, p.t0).unwrap().value;
            let dm = ddp_integral(m, mirror).unwrap().value;
            assert!((dm + d.conj()).norm() <= 1e-8 * d.norm(), "{}", m.label());
        }
    }
}

#[test]
fn closed_form_points_match_the_root_finder() {
    for &a in &[0.25, 0.5, 1.0, 2.0] {
        let m = make_gaussian(a, 1.0, 1.0).unwrap();
        let pts = find_transition_points(&m, &SearchRegion::for_model(&m), 6).unwrap().points;
        for k in 0..3 {
            let (p, q) = transition_points_closed(a, k);
            let minus = pts.iter().find(|x| x.index_k == k && x.t0.re < 0.0).unwrap();
            let plus = pts.iter().find(|x| x.index_k == k && x.t0.re > 0.0).unwrap();
            assert!((minus.t0.re - q.re).abs() <= 1e-8 && (minus.t0.im - q.im).abs() <= 1e-8);
            assert!((plus.t0.re - p.re).abs() <= 1e-8 && (plus.t0.im - p.im).abs() <= 1e-8);
        }
    }
}

#[test]
fn superadiabatic_image_reproduces_quantized_gammas() {
    let p = GaussianParams::superadiabatic(2.0, 1.0).unwrap();
    let m = superadiabatic_gaussian(2.0, 1.0).unwrap();
    for k in 0..2 {
        let (plus, minus) = transition_points_closed(p.alpha, k);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let gp = gamma_factor(&m, plus).unwrap().value;
        let gm = gamma_factor(&m, minus).unwrap().value;
        assert!((gp - sign).norm() <= 1e-4, "k = {k}: {gp}");
        assert!((gm + sign).norm() <= 1e-4, "k = {k}: {gm}");
    }
}

#[test]
fn stokes_line_of_landau_zener_and_gaussian() {
    let lz = make_landau_zener(1.0, 1.0).unwrap();
    assert!(stokes_check(&lz, C64::new(0.0, 1.0), &[], &StokesOptions::for_model(&lz)).unwrap().ok);
    let g = superadiabatic_gaussian(2.0, 1.0).unwrap();
    let a = PI.sqrt() / 2.0;
    let (plus, minus) = transition_points_closed(a, 0);
    let chk = stokes_check(&g, plus, &[minus], &StokesOptions::for_model(&g)).unwrap();
    assert!(chk.ok, "{}", chk.message);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gaussian_action_symmetry(alpha in 0.1f64..4.0) {
        let m = make_gaussian(alpha, 1.0, 1.0).unwrap();
        let (p, q) = transition_points_closed(alpha, 0);
        let dp = ddp_integral(&m, p).unwrap().value;
        let dq = ddp_integral(&m, q).unwrap().value;
        prop_assert!((dq + dp.conj()).norm() <= 1e-8 * dp.norm());
    }

    #[test]
    fn forward_and_back_returns_the_state(w in 0.5f64..6.0, split in 0.0f64..1.0) {
        use ddpopt_core::basis::AmplitudePair;
        use ddpopt_core::propagator::evolve;
        let m = make_erf(w, 1.0).unwrap();
        let init = AmplitudePair::new(
            C64::new(split.sqrt(), 0.0),
            C64::new(0.0, (1.0 - split).sqrt()),
            Basis::Diabatic,
            -4.0,
        );
        let (mid, _) = evolve(&m, init, 4.0, Basis::Diabatic, 1e-11, 1e-13).unwrap();
        let (back, _) = evolve(&m, mid, -4.0, Basis::Diabatic, 1e-11, 1e-13).unwrap();
        for i in 0..2 {
            prop_assert!((back.amps[i] - init.amps[i]).norm() <= 1e-8);
        }
    }
}
