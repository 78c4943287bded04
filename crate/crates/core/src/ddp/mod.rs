//! Dykhne–Davis–Pechukas asymptotics for an arbitrary analytic pulse.

mod gamma;
mod integral;
mod roots;
mod stokes;

pub use gamma::{gamma_at_radius, gamma_factor, GammaEstimate};
pub use integral::{ddp_integral, ddp_integral_from, DdpIntegral};
pub use roots::{find_transition_points, PointSign, RootSearch, SearchRegion, TransitionPoint};
pub use stokes::{stokes_check, BranchEnd, StokesCheck, StokesOptions, TracedBranch};

use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::model::PulseModel;

/// `exp(-2 Im D(t0))` for the point nearest the real axis.
pub fn ddp_probability_single(model: &PulseModel, t0: C64) -> Result<f64> {
    let d = ddp_integral(model, t0)?.value;
    Ok((-2.0 * d.im).exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiProbability {
    /// `|sum Gamma_k exp(i D_k)|^2`, possibly above one.
    pub raw: f64,
    pub clipped: f64,
    /// Set when no points contributed: the pulse is free of transition points.
    pub no_points: bool,
}

/// Coherent sum over `(D_k, Gamma_k)` pairs.
pub fn ddp_probability_multi(terms: &[(C64, C64)]) -> MultiProbability {
    if terms.is_empty() {
        return MultiProbability {
            raw: 0.0,
            clipped: 0.0,
            no_points: true,
        };
    }
    let amp: C64 = terms.iter().map(|&(d, g)| g * (C64::new(0.0, 1.0) * d).exp()).sum();
    let raw = amp.norm_sqr();
    MultiProbability {
        raw,
        clipped: raw.clamp(0.0, 1.0),
        no_points: false,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointContribution {
    pub point: TransitionPoint,
    pub d: DdpIntegral,
    pub gamma: GammaEstimate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdpOptions {
    /// Levels `k <= max_level` enter the coherent sum.
    pub max_level: usize,
    pub max_points: usize,
    pub check_stokes: bool,
}

impl Default for DdpOptions {
    fn default() -> Self {
        Self {
            max_level: 1,
            max_points: 16,
            check_stokes: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DdpResult {
    pub points: Vec<PointContribution>,
    /// Single-point estimate from the lowest point; zero without points.
    pub p_single: f64,
    pub p_multi: MultiProbability,
    /// Stokes check of the lowest point, when requested.
    pub stokes: Option<StokesCheck>,
    pub warnings: Vec<String>,
}

impl DdpResult {
    pub fn no_points(&self) -> bool {
        self.p_multi.no_points
    }
}

/// Finds the transition points in `region` and assembles the DDP estimates.
pub fn analyze(model: &PulseModel, region: &SearchRegion, opts: &DdpOptions) -> Result<DdpResult> {
    let search = find_transition_points(model, region, opts.max_points)?;
    let mut points = Vec::new();
    for p in search.points.iter().filter(|p| p.index_k <= opts.max_level) {
        points.push(PointContribution {
            point: *p,
            d: ddp_integral(model, p.t0)?,
            gamma: gamma_factor(model, p.t0)?,
        });
    }
    let terms: Vec<(C64, C64)> = points.iter().map(|c| (c.d.value, c.gamma.value)).collect();
    let p_multi = ddp_probability_multi(&terms);
    let p_single = points.first().map_or(0.0, |c| (-2.0 * c.d.value.im).exp());
    let stokes = match (opts.check_stokes, search.points.first()) {
        (true, Some(lowest)) => {
            let others: Vec<C64> = search.points.iter().skip(1).map(|p| p.t0).collect();
            Some(stokes_check(model, lowest.t0, &others, &StokesOptions::for_model(model))?)
        }
        _ => None,
    };
    Ok(DdpResult {
        points,
        p_single,
        p_multi,
        stokes,
        warnings: search.warnings,
    })
}
