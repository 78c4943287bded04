//! Direct integration of `i dc/dt = H(t) c` in the diabatic or adiabatic basis.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64 as C64;

use crate::basis::{eigen_splitting_real, mixing_angle, to_basis, AmplitudePair, Basis};
use crate::error::{Error, Result};
use crate::model::PulseModel;
use crate::ode::{self, State, StepStats, Tolerances};

/// Boundary mixing angles further than this from 0 or pi/2 trigger a warning.
pub const BOUNDARY_THETA_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationConfig {
    pub t_start: f64,
    pub t_end: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Basis the equations of motion are integrated in.
    pub basis: Basis,
    /// Initial amplitudes at `t_start`; `None` selects the adiabatic state
    /// connected to the first diabatic state.
    pub initial: Option<AmplitudePair>,
}

impl PropagationConfig {
    /// The model's default window with `rel_tol = 1e-10`, `abs_tol = 1e-12`.
    pub fn for_model(model: &PulseModel) -> Self {
        let (t_start, t_end) = model.window();
        Self {
            t_start,
            t_end,
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            basis: Basis::Diabatic,
            initial: None,
        }
    }

    pub fn with_window(mut self, t_start: f64, t_end: f64) -> Self {
        self.t_start = t_start;
        self.t_end = t_end;
        self
    }

    pub fn with_tolerances(mut self, rel_tol: f64, abs_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_basis(mut self, basis: Basis) -> Self {
        self.basis = basis;
        self
    }

    pub fn with_initial(mut self, initial: AmplitudePair) -> Self {
        self.initial = Some(initial);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_start.is_finite() && self.t_end.is_finite() && self.t_start < self.t_end) {
            return Err(Error::InvalidConfig(format!(
                "window [{}, {}] is empty or not finite",
                self.t_start, self.t_end
            )));
        }
        for (name, tol) in [("rel_tol", self.rel_tol), ("abs_tol", self.abs_tol)] {
            if !(tol > 0.0 && tol <= 1e-3) {
                return Err(Error::InvalidConfig(format!("{name} = {tol} is outside (0, 1e-3]")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransitionResult {
    /// Population left in the initial adiabatic state, `1 - p_adiabatic`.
    pub p_diabatic: f64,
    /// Probability of a transition between the adiabatic states.
    pub p_adiabatic: f64,
    /// Final amplitudes in the adiabatic basis at `t_end`.
    pub final_state: AmplitudePair,
    pub norm_drift: f64,
    /// Accumulated local error estimate of the integrator, in probability units.
    pub error_estimate: f64,
    pub stats: StepStats,
    pub warnings: Vec<String>,
}

/// Index of the adiabatic state (0 = minus, 1 = plus) that overlaps most with
/// the first diabatic state at `t`.
pub fn connected_state(model: &PulseModel, t: f64) -> Result<usize> {
    let s = model.sample(t);
    let theta = mixing_angle(s.omega, s.delta)?.value();
    Ok(if theta > FRAC_PI_4 { 1 } else { 0 })
}

fn initial_state(model: &PulseModel, cfg: &PropagationConfig) -> Result<AmplitudePair> {
    if let Some(init) = cfg.initial {
        return Ok(init);
    }
    let mut amps = [C64::new(0.0, 0.0); 2];
    amps[connected_state(model, cfg.t_start)?] = C64::new(1.0, 0.0);
    Ok(AmplitudePair {
        amps,
        basis: Basis::Adiabatic,
        time: cfg.t_start,
    })
}

/// Per-step tolerance relative to the requested one. Errors accumulate over
/// thousands of oscillations in long windows; at this factor the norm drift of
/// a Landau–Zener run over `+-50/sqrt(v)` stays near `0.1 rel_tol`.
const LOCAL_TOL_FACTOR: f64 = 0.01;

fn diabatic_rhs(model: &PulseModel) -> impl Fn(f64, &State) -> State + '_ {
    move |t, c| {
        let s = model.sample(t);
        let mi = C64::new(0.0, -0.5);
        [
            mi * (-s.delta * c[0] + s.omega * c[1]),
            mi * (s.omega * c[0] + s.delta * c[1]),
        ]
    }
}

fn adiabatic_rhs(model: &PulseModel) -> impl Fn(f64, &State) -> State + '_ {
    move |t, a| {
        let s = model.sample(t);
        let e2 = s.omega * s.omega + s.delta * s.delta;
        let e = e2.sqrt();
        let td = 0.5 * (s.omega_dot * s.delta - s.delta_dot * s.omega) / e2;
        let half = C64::new(0.0, 0.5 * e);
        [half * a[0] - td * a[1], td * a[0] - half * a[1]]
    }
}

/// Integrates from `amps.time` to `t_target` in `basis` (either direction).
///
/// The result is returned in the basis of the input amplitudes.
pub fn evolve(
    model: &PulseModel,
    amps: AmplitudePair,
    t_target: f64,
    basis: Basis,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<(AmplitudePair, StepStats)> {
    let input_basis = amps.basis;
    let start = to_basis(model, amps, basis)?;
    let tol = Tolerances {
        rel: rel_tol * LOCAL_TOL_FACTOR,
        abs: abs_tol * LOCAL_TOL_FACTOR,
    };
    let (y, stats) = match basis {
        Basis::Diabatic => ode::integrate(diabatic_rhs(model), start.time, start.amps, t_target, tol)?,
        Basis::Adiabatic => {
            check_splitting(model, start.time.min(t_target), start.time.max(t_target))?;
            ode::integrate(adiabatic_rhs(model), start.time, start.amps, t_target, tol)?
        }
    };
    let end = AmplitudePair {
        amps: y,
        basis,
        time: t_target,
    };
    Ok((to_basis(model, end, input_basis)?, stats))
}

fn check_splitting(model: &PulseModel, a: f64, b: f64) -> Result<()> {
    const PROBES: usize = 2001;
    for i in 0..PROBES {
        let t = a + (b - a) * i as f64 / (PROBES - 1) as f64;
        if eigen_splitting_real(model, t) == 0.0 {
            return Err(Error::DegenerateSplitting { t });
        }
    }
    Ok(())
}

/// Solves the Schrödinger equation over the configured window and returns the
/// amplitudes at `t_end` in `cfg.basis`.
pub fn propagate(model: &PulseModel, cfg: &PropagationConfig) -> Result<AmplitudePair> {
    propagate_with_stats(model, cfg).map(|(a, _)| a)
}

pub fn propagate_with_stats(model: &PulseModel, cfg: &PropagationConfig) -> Result<(AmplitudePair, StepStats)> {
    cfg.validate()?;
    let init = initial_state(model, cfg)?;
    if init.time != cfg.t_start {
        return Err(Error::InvalidConfig(format!(
            "initial amplitudes given at t = {}, window starts at {}",
            init.time, cfg.t_start
        )));
    }
    let init = to_basis(model, init, cfg.basis)?;
    evolve(model, init, cfg.t_end, cfg.basis, cfg.rel_tol, cfg.abs_tol)
}

fn boundary_warning(model: &PulseModel, t: f64, which: &str) -> Result<Option<String>> {
    let s = model.sample(t);
    let theta = mixing_angle(s.omega, s.delta)?.value();
    let dev = theta.min(FRAC_PI_2 - theta);
    Ok((dev > BOUNDARY_THETA_TOLERANCE).then(|| {
        format!("window too narrow: mixing angle at {which} t = {t} is {dev:.3e} from its limit")
    }))
}

/// Transition probability between the adiabatic states across the window.
pub fn transition_probability(model: &PulseModel, cfg: &PropagationConfig) -> Result<TransitionResult> {
    cfg.validate()?;
    let mut warnings = Vec::new();
    warnings.extend(boundary_warning(model, cfg.t_start, "start")?);
    warnings.extend(boundary_warning(model, cfg.t_end, "end")?);
    let cfg = PropagationConfig {
        initial: None,
        ..*cfg
    };
    let start = connected_state(model, cfg.t_start)?;
    let (end, stats) = propagate_with_stats(model, &cfg)?;
    let fin = to_basis(model, end, Basis::Adiabatic)?;
    let pops = fin.populations();
    let norm = pops[0] + pops[1];
    Ok(TransitionResult {
        p_diabatic: pops[start].clamp(0.0, 1.0),
        p_adiabatic: pops[1 - start].clamp(0.0, 1.0),
        final_state: fin,
        norm_drift: (norm - 1.0).abs(),
        error_estimate: 2.0 * stats.error_sum,
        stats,
        warnings,
    })
}
