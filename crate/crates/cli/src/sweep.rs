//! Parameter sweeps comparing integrated and DDP probabilities.

use ddpopt_core::ddp::{analyze, DdpOptions};
use ddpopt_core::gaussian::{ddp_action, probability_all_points, probability_two_point};
use ddpopt_core::propagator::{transition_probability, PropagationConfig};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Analytic, Config};
use crate::error::CliResult;
use crate::methods::Method;

/// One grid point. Absent quantities are `None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub sweep_value: f64,
    pub p_adiabatic_ode: Option<f64>,
    pub p_diabatic_ode: Option<f64>,
    pub p_ddp_sech: Option<f64>,
    /// Unclipped; may exceed one.
    pub p_ddp_two_point: Option<f64>,
    /// Unclipped coherent sum over the points found.
    pub p_ddp_generic: Option<f64>,
    pub ln_one_minus_p: Option<f64>,
    pub norm_drift: Option<f64>,
    pub n_points: Option<usize>,
    pub error: Option<String>,
}

impl SweepRecord {
    fn empty(v: f64) -> Self {
        Self {
            sweep_value: v,
            p_adiabatic_ode: None,
            p_diabatic_ode: None,
            p_ddp_sech: None,
            p_ddp_two_point: None,
            p_ddp_generic: None,
            ln_one_minus_p: None,
            norm_drift: None,
            n_points: None,
            error: None,
        }
    }

    fn fail(&mut self, what: &str, e: impl std::fmt::Display) {
        let msg = format!("{what}: {e}");
        self.error = Some(match self.error.take() {
            Some(prev) => format!("{prev}; {msg}"),
            None => msg,
        });
    }
}

/// Evaluates every requested method at one value of the swept parameter.
/// Failures are recorded in the `error` field; the other columns are kept.
pub fn evaluate(cfg: &Config, value: f64) -> SweepRecord {
    let mut rec = SweepRecord::empty(value);
    let spec = cfg.model.with(cfg.sweep.parameter, value);
    let model = match spec.build() {
        Ok(m) => m,
        Err(e) => {
            rec.fail("model", e);
            return rec;
        }
    };
    let methods = &cfg.methods;
    let num = &cfg.numerics;

    if methods.contains(Method::Ode) {
        match &model {
            None => {
                rec.p_adiabatic_ode = Some(0.0);
                rec.p_diabatic_ode = Some(1.0);
                rec.ln_one_minus_p = Some(0.0);
                rec.norm_drift = Some(0.0);
            }
            Some(m) => {
                let pc = PropagationConfig::for_model(m).with_tolerances(num.rel_tol, num.abs_tol);
                match transition_probability(m, &pc) {
                    Ok(r) => {
                        rec.p_adiabatic_ode = Some(r.p_adiabatic);
                        rec.p_diabatic_ode = Some(r.p_diabatic);
                        rec.ln_one_minus_p = Some((-r.p_adiabatic).ln_1p());
                        rec.norm_drift = Some(r.norm_drift);
                    }
                    Err(e) => rec.fail("ode", e),
                }
            }
        }
    }

    let wants_analytic = methods.contains(Method::DdpSech) || methods.contains(Method::DdpTwoPoint);
    if wants_analytic {
        match spec.analytic() {
            Ok(Analytic::Uncoupled) => {
                set_analytic(&mut rec, methods, 0.0, 0.0);
            }
            Ok(Analytic::Gaussian(p)) => match ddp_action(&p, num.action_source(methods)) {
                Ok(d) => {
                    let sech = probability_all_points(d.re, d.im);
                    let two = probability_two_point(d.re, d.im);
                    set_analytic(&mut rec, methods, sech, two);
                }
                Err(e) => rec.fail("action", e),
            },
            Ok(Analytic::NotApplicable) => {}
            Err(e) => rec.fail("action", e),
        }
    }

    if methods.contains(Method::DdpGeneric) {
        match &model {
            None => {
                rec.p_ddp_generic = Some(0.0);
                rec.n_points = Some(0);
            }
            Some(m) => {
                let opts = DdpOptions {
                    max_level: num.max_level,
                    ..DdpOptions::default()
                };
                match analyze(m, &spec.search_region(m, num.im_max), &opts) {
                    Ok(r) => {
                        rec.p_ddp_generic = Some(r.p_multi.raw);
                        rec.n_points = Some(r.points.len());
                    }
                    Err(e) => rec.fail("ddp-generic", e),
                }
            }
        }
    }
    rec
}

fn set_analytic(rec: &mut SweepRecord, methods: &crate::methods::MethodSet, sech: f64, two: f64) {
    if methods.contains(Method::DdpSech) {
        rec.p_ddp_sech = Some(sech);
    }
    if methods.contains(Method::DdpTwoPoint) {
        rec.p_ddp_two_point = Some(two);
    }
}

/// Evaluates the whole grid in parallel; rows come back in grid order.
pub fn run_sweep(cfg: &Config) -> CliResult<Vec<SweepRecord>> {
    cfg.validate()?;
    let values = cfg.sweep.grid.values();
    Ok(values.par_iter().map(|&v| evaluate(cfg, v)).collect())
}
