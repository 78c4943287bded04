//! Acceptance criteria 1 to 11. Each test writes one `PASS`/`FAIL` line to
//! stderr, bypassing the test harness capture, then asserts.

use std::io::Write;

use ddpopt::compare::{landau_zener_deviation, node_offsets};
use ddpopt::nodes::{local_minima, match_nodes};
use ddpopt::points::find_points;
use ddpopt::{run_sweep, Config, SweepRecord};
use ddpopt_core::basis::{eigen_splitting_real, mixing_angle, nonadiabatic_coupling, Basis};
use ddpopt_core::ddp::{ddp_integral, find_transition_points, gamma_factor, SearchRegion};
use ddpopt_core::families::{make_erf, make_erf_deviated, make_gaussian, make_landau_zener, superadiabatic_gaussian};
use ddpopt_core::gaussian::{
    d_quadrature, ddp_series_small_alpha, im_d_uniform, transition_points_closed, GaussianParams,
};
use ddpopt_core::propagator::{transition_probability, PropagationConfig};
use num_complex::Complex64 as C64;

fn verdict(n: usize, pass: bool, detail: String) {
    let line = format!("{} criterion {n}: {detail}\n", if pass { "PASS" } else { "FAIL" });
    std::io::stderr().write_all(line.as_bytes()).unwrap();
    assert!(pass, "criterion {n}: {detail}");
}

fn sweep(toml: &str) -> Vec<SweepRecord> {
    let cfg = Config::parse(toml).unwrap();
    let rows = run_sweep(&cfg).unwrap();
    let errors: Vec<_> = rows.iter().filter_map(|r| r.error.as_deref()).collect();
    assert!(errors.is_empty(), "{errors:?}");
    rows
}

#[test]
fn criterion_01_landau_zener_exactness() {
    let (worst, rows) = landau_zener_deviation(1e-10, 1e-12).unwrap();
    let detail = rows
        .iter()
        .map(|(r, a, b)| format!("{r}: {:.2e}", (a - b).abs()))
        .collect::<Vec<_>>()
        .join(", ");
    verdict(1, worst <= 1e-2, format!("max |P_ddp - P_ode| = {worst:.3e} <= 1e-2 [{detail}]"));
}

#[test]
fn criterion_02_gaussian_points() {
    let mut worst: f64 = 0.0;
    let mut missing = 0;
    for alpha in [0.25, 0.5, 1.0, 2.0] {
        let m = make_gaussian(alpha, 1.0, 1.0).unwrap();
        let closed: Vec<C64> = (0..=2)
            .flat_map(|k| {
                let (p, q) = transition_points_closed(alpha, k);
                [p, q]
            })
            .collect();
        let re = closed.iter().map(|z| z.re.abs()).fold(0.0, f64::max);
        let im = closed.iter().map(|z| z.im).fold(0.0, f64::max);
        let mut region = SearchRegion::for_model(&m).with_im_max(1.2 * im);
        region.re_min = -1.2 * re;
        region.re_max = 1.2 * re;
        let found = find_transition_points(&m, &region, 1000).unwrap();
        for z in &closed {
            match found.points.iter().min_by(|a, b| (a.t0 - z).norm().total_cmp(&(b.t0 - z).norm())) {
                Some(p) => worst = worst.max((p.t0.re - z.re).abs()).max((p.t0.im - z.im).abs()),
                None => missing += 1,
            }
        }
    }
    verdict(
        2,
        missing == 0 && worst <= 1e-8,
        format!("max componentwise offset {worst:.3e} <= 1e-8, {missing} unmatched"),
    );
}

#[test]
fn criterion_03_action_symmetry() {
    let mut worst: f64 = 0.0;
    for alpha in [0.25, 1.0, 2.0] {
        let m = make_gaussian(alpha, 1.0, 1.0).unwrap();
        let (plus, minus) = transition_points_closed(alpha, 0);
        let dp = ddp_integral(&m, plus).unwrap().value;
        let dm = ddp_integral(&m, minus).unwrap().value;
        worst = worst.max((dm + dp.conj()).norm() / dp.norm());
    }
    verdict(3, worst <= 1e-8, format!("max |D- + conj D+| / |D+| = {worst:.3e} <= 1e-8"));
}

#[test]
fn criterion_04_small_alpha_series() {
    let mut worst: f64 = 0.0;
    let mut detail = Vec::new();
    for alpha in [0.05, 0.1, 0.3] {
        let p = GaussianParams::new(alpha, 1.0, 1.0).unwrap();
        let series = ddp_series_small_alpha(&p, 20).unwrap();
        let quad = d_quadrature(&p).unwrap();
        let rel = (series - quad).norm() / quad.norm();
        detail.push(format!("{alpha}: {rel:.2e}"));
        worst = worst.max(rel);
    }
    verdict(
        4,
        worst <= 1e-6,
        format!("max relative series error at n = 20 is {worst:.3e} <= 1e-6 [{}]", detail.join(", ")),
    );
}

#[test]
fn criterion_05_uniform_im_d() {
    let rel = |alpha: f64| {
        let p = GaussianParams::new(alpha, 1.0, 1.0).unwrap();
        let q = d_quadrature(&p).unwrap().im;
        (im_d_uniform(&p) - q).abs() / q
    };
    let anchor = rel(1.0);
    let n = 60;
    let band = (0..n)
        .map(|i| 0.1 * 50f64.powf(i as f64 / (n - 1) as f64))
        .map(rel)
        .fold(0.0, f64::max);
    verdict(
        5,
        anchor <= 1e-5 && band <= 0.03,
        format!("alpha = 1: {anchor:.3e} <= 1e-5; max over [0.1, 5]: {band:.3e} <= 0.03"),
    );
}

fn fig1(delta_t: f64) -> Vec<SweepRecord> {
    sweep(&format!(
        "methods = \"ode,ddp-sech\"\n[model]\nfamily = \"gaussian\"\ndeltaT = {delta_t:?}\n[sweep]\ngrid = \"0:10:200\"\n"
    ))
}

#[test]
fn criterion_06_fig1_nodes() {
    let mut pass = true;
    let mut detail = Vec::new();
    for delta_t in [1.0, 3.0, 10.0] {
        let rows = fig1(delta_t);
        let (ode, sech) = node_offsets(&rows);
        let fwd = match_nodes(&sech, &ode);
        let back = match_nodes(&ode, &sech);
        let worst = fwd.iter().chain(&back).map(|m| m.relative).fold(0.0, f64::max);
        let complete = fwd.len() == sech.len() && back.len() == ode.len();
        pass &= complete && worst <= 0.05;
        let mut line = format!("deltaT = {delta_t}: {} vs {} minima, worst offset {worst:.3e}", sech.len(), ode.len());
        if delta_t >= 3.0 {
            let dev = rows
                .iter()
                .filter_map(|r| Some((r.p_ddp_sech? - r.p_adiabatic_ode?).abs()))
                .fold(0.0, f64::max);
            pass &= dev <= 0.05;
            line += &format!(", max deviation {dev:.3e}");
        }
        detail.push(line);
    }
    let rows = fig1(0.3);
    let (ode, sech) = node_offsets(&rows);
    pass &= ode.len() == sech.len();
    detail.push(format!("deltaT = 0.3: {} vs {} minima", sech.len(), ode.len()));
    verdict(
        6,
        pass,
        format!("node offsets <= 0.05, max deviation <= 0.05 for deltaT >= 3 [{}]", detail.join("; ")),
    );
}

#[test]
fn criterion_07_optimized_pulse() {
    let m = make_erf(50.0, 1.0).unwrap();
    let p = transition_probability(&m, &PropagationConfig::for_model(&m)).unwrap().p_adiabatic;
    let cfg = Config::parse("[model]\nfamily = \"erf\"\nomega0T = 50.0\n").unwrap();
    let no_points = find_points(&cfg).unwrap().no_points;
    let (a, b) = m.window();
    let n = 4001;
    let flat = (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .map(|t| (eigen_splitting_real(&m, t) - 50.0).abs())
        .fold(0.0, f64::max);
    verdict(
        7,
        p <= 1e-6 && no_points && flat <= 1e-12 * 50.0,
        format!("P_ode = {p:.3e} <= 1e-6, no points = {no_points}, max |E - Omega0| = {flat:.3e} <= 5e-11"),
    );
}

#[test]
fn criterion_08_superadiabatic_nodes() {
    let rows = sweep(
        "methods = \"ode,ddp-sech\"\n[model]\nfamily = \"erf\"\n[sweep]\ngrid = \"2:10:161\"\n[numerics]\naction = \"uniform\"\n",
    );
    let xs: Vec<f64> = rows.iter().map(|r| r.sweep_value).collect();
    // Minima of P are the maxima of ln(1 - P).
    let neg_ln: Vec<f64> = rows.iter().map(|r| -r.ln_one_minus_p.unwrap()).collect();
    let sech: Vec<f64> = rows.iter().map(|r| r.p_ddp_sech.unwrap()).collect();
    let observed = local_minima(&xs, &neg_ln);
    let predicted = local_minima(&xs, &sech);
    let matches = match_nodes(&predicted, &observed);
    let worst = matches.iter().map(|m| m.relative).fold(0.0, f64::max);
    let detail = matches
        .iter()
        .map(|m| format!("{:.4} vs {:.4}", m.predicted, m.observed))
        .collect::<Vec<_>>()
        .join(", ");
    verdict(
        8,
        !observed.is_empty() && !predicted.is_empty() && matches.len() == predicted.len() && worst <= 0.10,
        format!(
            "{} oscillation minima, {} predicted nodes, worst offset {worst:.3e} <= 0.10 [{detail}]",
            observed.len(),
            predicted.len()
        ),
    );
}

#[test]
fn criterion_09_fig2_curves() {
    let run = |family: &str, mu: &str| {
        sweep(&format!(
            "methods = \"ode,ddp-generic\"\n[model]\nfamily = \"{family}\"\n{mu}[sweep]\ngrid = \"0.5:10:39\"\n"
        ))
    };
    let opt = run("erf", "");
    let dev = run("erf-mu", "muT = 1.0\n");
    let gap = opt
        .iter()
        .zip(&dev)
        .map(|(a, b)| (a.ln_one_minus_p.unwrap() - b.ln_one_minus_p.unwrap()).abs())
        .fold(0.0, f64::max);
    let opt_points: usize = opt.iter().map(|r| r.n_points.unwrap()).sum();
    let dev_rows = dev.iter().filter(|r| r.n_points.unwrap() > 0).count();
    verdict(
        9,
        gap >= 1e-3 && opt_points == 0 && dev_rows > 0,
        format!(
            "max |ln(1-P) difference| = {gap:.3e} >= 1e-3; optimized points {opt_points}; deviated rows with points {dev_rows} of {}",
            dev.len()
        ),
    );
}

#[test]
fn criterion_10_propagator_integrity() {
    let models = [
        make_erf(4.0, 1.0).unwrap(),
        make_erf_deviated(4.0, 1.0, 1.0).unwrap(),
        make_gaussian(3.0, 1.0, 1.0).unwrap(),
        make_landau_zener(1.0, 1.0).unwrap(),
    ];
    let mut drift: f64 = 0.0;
    let mut basis: f64 = 0.0;
    let mut coupling: f64 = 0.0;
    for m in &models {
        let cfg = PropagationConfig::for_model(m);
        let d = transition_probability(m, &cfg).unwrap();
        let a = transition_probability(m, &cfg.with_basis(Basis::Adiabatic)).unwrap();
        drift = drift.max(d.norm_drift).max(a.norm_drift);
        for i in 0..2 {
            basis = basis.max((d.final_state.amps[i] - a.final_state.amps[i]).norm());
        }
        let ts = m.time_scale();
        let theta = |t: f64| {
            let s = m.sample(t);
            mixing_angle(s.omega, s.delta).unwrap().value()
        };
        let grid: Vec<f64> = (0..=400).map(|i| ts * (-2.0 + 4.0 * i as f64 / 400.0)).collect();
        let exact: Vec<f64> = grid.iter().map(|&t| nonadiabatic_coupling(m, t).unwrap()).collect();
        let peak = exact.iter().map(|c| c.abs()).fold(0.0, f64::max);
        let h = 1e-4 * ts;
        for (t, c) in grid.iter().zip(&exact) {
            if c.abs() >= 1e-3 * peak {
                let fd = (theta(t + h) - theta(t - h)) / (2.0 * h);
                coupling = coupling.max((fd - c).abs() / c.abs());
            }
        }
    }
    verdict(
        10,
        drift <= 1e-9 && basis <= 1e-8 && coupling <= 1e-5,
        format!("norm drift {drift:.3e} <= 1e-9, basis gap {basis:.3e} <= 1e-8, coupling vs FD {coupling:.3e} <= 1e-5"),
    );
}

#[test]
fn criterion_11_gamma_quantization() {
    let mut worst: f64 = 0.0;
    for omega0_t in [1.0, 2.0, 4.0] {
        let p = GaussianParams::superadiabatic(omega0_t, 1.0).unwrap();
        let m = superadiabatic_gaussian(omega0_t, 1.0).unwrap();
        for k in 0..2 {
            let (plus, minus) = transition_points_closed(p.alpha, k);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            worst = worst
                .max((gamma_factor(&m, plus).unwrap().value - sign).norm())
                .max((gamma_factor(&m, minus).unwrap().value + sign).norm());
        }
    }
    verdict(11, worst <= 1e-4, format!("max |Gamma - (+-(-1)^k)| = {worst:.3e} <= 1e-4"));
}
