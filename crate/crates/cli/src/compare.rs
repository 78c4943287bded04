//! Tolerance checks for continuous integration.

use ddpopt_core::ddp::ddp_probability_single;
use ddpopt_core::families::make_landau_zener;
use ddpopt_core::propagator::{transition_probability, PropagationConfig};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Config, Family};
use crate::error::CliResult;
use crate::methods::{Method, MethodSet};
use crate::nodes::{local_minima, match_nodes};
use crate::sweep::{run_sweep, SweepRecord};

/// `Omega0^2 / v` values of the Landau–Zener exactness check.
pub const LZ_RATIOS: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 5.0];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, value: f64, tolerance: f64, detail: String) -> Self {
        Self {
            name: name.to_string(),
            value,
            tolerance,
            pass: value <= tolerance,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub checks: Vec<Check>,
    pub skipped: Vec<String>,
}

impl CompareReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }
}

/// Largest `|P_ddp - P_ode|` over the Landau–Zener ratios, at `v = 1`.
pub fn landau_zener_deviation(rel_tol: f64, abs_tol: f64) -> CliResult<(f64, Vec<(f64, f64, f64)>)> {
    let rows: Vec<CliResult<(f64, f64, f64)>> = LZ_RATIOS
        .par_iter()
        .map(|&ratio| {
            let w = ratio.sqrt();
            let m = make_landau_zener(w, 1.0)?;
            let ddp = ddp_probability_single(&m, C64::new(0.0, w))?;
            let cfg = PropagationConfig::for_model(&m).with_tolerances(rel_tol, abs_tol);
            let ode = transition_probability(&m, &cfg)?.p_adiabatic;
            Ok((ratio, ddp, ode))
        })
        .collect();
    let rows = rows.into_iter().collect::<CliResult<Vec<_>>>()?;
    let worst = rows.iter().map(|(_, a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok((worst, rows))
}

/// Minima of the integrated and sech curves of a sweep, paired.
pub fn node_offsets(rows: &[SweepRecord]) -> (Vec<f64>, Vec<f64>) {
    let ok: Vec<&SweepRecord> = rows
        .iter()
        .filter(|r| r.p_adiabatic_ode.is_some() && r.p_ddp_sech.is_some())
        .collect();
    let xs: Vec<f64> = ok.iter().map(|r| r.sweep_value).collect();
    let ode: Vec<f64> = ok.iter().map(|r| r.p_adiabatic_ode.unwrap_or_default()).collect();
    let sech: Vec<f64> = ok.iter().map(|r| r.p_ddp_sech.unwrap_or_default()).collect();
    (local_minima(&xs, &ode), local_minima(&xs, &sech))
}

pub fn run_compare(cfg: &Config) -> CliResult<CompareReport> {
    let mut checks = Vec::new();
    let mut skipped = Vec::new();
    let num = &cfg.numerics;
    let tol = &cfg.compare;

    let (lz, lz_rows) = landau_zener_deviation(num.rel_tol, num.abs_tol)?;
    let detail = lz_rows
        .iter()
        .map(|(r, a, b)| format!("{r}: {a:.6e} vs {b:.6e}"))
        .collect::<Vec<_>>()
        .join(", ");
    checks.push(Check::new("landau-zener exactness", lz, tol.lz_tolerance, detail));

    let has_sech = matches!(cfg.model.family, Family::Gaussian | Family::Erf);
    let mut sweep_cfg = cfg.clone();
    let mut methods: Vec<Method> = cfg.methods.iter().collect();
    methods.push(Method::Ode);
    if has_sech {
        methods.push(Method::DdpSech);
    }
    sweep_cfg.methods = MethodSet::new(methods)?;
    let rows = run_sweep(&sweep_cfg)?;

    let errors = rows.iter().filter(|r| r.error.is_some()).count();
    checks.push(Check::new(
        "error rows",
        errors as f64,
        0.0,
        format!("{errors} of {} rows", rows.len()),
    ));

    let drift = rows.iter().filter_map(|r| r.norm_drift).fold(0.0, f64::max);
    checks.push(Check::new("norm drift", drift, tol.norm_drift, format!("max over {} rows", rows.len())));

    if has_sech && cfg.sweep.parameter == crate::config::Param::Omega0T {
        let (ode_min, sech_min) = node_offsets(&rows);
        let matches = match_nodes(&sech_min, &ode_min);
        let worst = if sech_min.is_empty() || matches.len() < sech_min.len() {
            f64::INFINITY
        } else {
            matches.iter().map(|m| m.relative).fold(0.0, f64::max)
        };
        let detail = matches
            .iter()
            .map(|m| format!("{:.4} vs {:.4}", m.predicted, m.observed))
            .collect::<Vec<_>>()
            .join(", ");
        checks.push(Check::new(
            "node positions",
            worst,
            tol.node_tolerance,
            format!("sech vs ode minima: [{detail}]"),
        ));
        if let Some(limit) = tol.max_deviation {
            let dev = rows
                .iter()
                .filter_map(|r| Some((r.p_ddp_sech? - r.p_adiabatic_ode?).abs()))
                .fold(0.0, f64::max);
            checks.push(Check::new("max deviation", dev, limit, "max |P_sech - P_ode|".into()));
        }
    } else {
        skipped.push(format!(
            "node positions: needs the gaussian or erf family swept in omega0T, got {} swept in {}",
            cfg.model.family,
            cfg.sweep.parameter.name()
        ));
    }
    Ok(CompareReport { checks, skipped })
}

pub fn print_report(report: &CompareReport) {
    for c in &report.checks {
        println!(
            "{} {}: {:.6e} (tolerance {:.3e}) {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.value,
            c.tolerance,
            c.detail
        );
    }
    for s in &report.skipped {
        println!("SKIP {s}");
    }
}
