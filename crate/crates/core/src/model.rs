//! Analytic pulse models: Rabi frequency and detuning as functions of
//! (possibly complex) time. Units are angular frequency with hbar = 1.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64 as C64;

/// Rabi frequency `Omega(t)` and detuning `Delta(t)` with their derivatives.
///
/// Implementations must return real values for real `t` and must be
/// analytic wherever [`Pulse::complex_capable`] claims complex evaluation.
pub trait Pulse: Send + Sync + fmt::Debug {
    fn omega(&self, t: C64) -> C64;
    fn delta(&self, t: C64) -> C64;
    fn omega_dot(&self, t: C64) -> C64;
    fn delta_dot(&self, t: C64) -> C64;

    fn complex_capable(&self) -> bool {
        true
    }
}

/// Real-time sample of a pulse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub omega: f64,
    pub delta: f64,
    pub omega_dot: f64,
    pub delta_dot: f64,
}

/// A named pulse model with its parameters and natural scales.
#[derive(Clone)]
pub struct PulseModel {
    label: String,
    params: Vec<(String, f64)>,
    time_scale: f64,
    frequency_scale: f64,
    window: (f64, f64),
    pulse: Arc<dyn Pulse>,
}

impl fmt::Debug for PulseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PulseModel")
            .field("label", &self.label)
            .field("params", &self.params)
            .field("window", &self.window)
            .finish()
    }
}

impl PulseModel {
    /// Wraps an arbitrary pulse.
    ///
    /// `time_scale` sets seed spacing and path resolution for the complex-plane
    /// searches, `frequency_scale` the residual scale for transition points and
    /// `window` the default real propagation interval.
    pub fn new(
        label: impl Into<String>,
        params: Vec<(String, f64)>,
        time_scale: f64,
        frequency_scale: f64,
        window: (f64, f64),
        pulse: Arc<dyn Pulse>,
    ) -> Self {
        Self {
            label: label.into(),
            params,
            time_scale,
            frequency_scale,
            window,
            pulse,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn params(&self) -> &[(String, f64)] {
        &self.params
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }

    pub fn time_scale(&self) -> f64 {
        self.time_scale
    }

    pub fn frequency_scale(&self) -> f64 {
        self.frequency_scale
    }

    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    pub fn with_window(mut self, window: (f64, f64)) -> Self {
        self.window = window;
        self
    }

    pub fn complex_capable(&self) -> bool {
        self.pulse.complex_capable()
    }

    pub fn omega(&self, t: C64) -> C64 {
        self.pulse.omega(t)
    }

    pub fn delta(&self, t: C64) -> C64 {
        self.pulse.delta(t)
    }

    pub fn omega_dot(&self, t: C64) -> C64 {
        self.pulse.omega_dot(t)
    }

    pub fn delta_dot(&self, t: C64) -> C64 {
        self.pulse.delta_dot(t)
    }

    pub fn sample(&self, t: f64) -> Sample {
        let z = C64::new(t, 0.0);
        Sample {
            omega: self.pulse.omega(z).re,
            delta: self.pulse.delta(z).re,
            omega_dot: self.pulse.omega_dot(z).re,
            delta_dot: self.pulse.delta_dot(z).re,
        }
    }

    /// `Omega^2 + Delta^2`, analytic wherever the pulse is.
    pub fn splitting_sq(&self, t: C64) -> C64 {
        let o = self.pulse.omega(t);
        let d = self.pulse.delta(t);
        o * o + d * d
    }

    /// `d/dt (Omega^2 + Delta^2)`.
    pub fn splitting_sq_dot(&self, t: C64) -> C64 {
        2.0 * (self.pulse.omega(t) * self.pulse.omega_dot(t)
            + self.pulse.delta(t) * self.pulse.delta_dot(t))
    }
}
