//! Built-in pulse families.
//!
//! * the Lambda-parametrized family `Omega = Omega0 L(t)`,
//!   `Delta = Delta0 sign(t) sqrt(1 - L^2)`,
//! * the constant-splitting family `Delta = A sin(pi f / 2)`, `Omega = Omega0 cos(pi f / 2)`
//!   built on a monotone shape `f`, with the erf model and its deviated variant,
//! * Landau–Zener and Gaussian reference models.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::model::{Pulse, PulseModel};
use crate::special::{erf, erf_derivative};

type ComplexFn = Arc<dyn Fn(C64) -> C64 + Send + Sync>;

const VALIDATION_POINTS: usize = 10_000;
const VALIDATION_HALF_WIDTH: f64 = 8.0;
/// Relative distance from `t = 0` inside which the parametrized detuning
/// switches to its linear limit.
const LINEAR_LIMIT: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeKind {
    /// Pulse envelope `L(t)` with values in `(0, 1]`, peaked at `t = 0`.
    Pulse,
    /// Monotone ramp `f(t)` from -1 to 1.
    Monotone,
}

/// A dimensionless shape `L(t)` or `f(t)` with its analytic derivative.
#[derive(Clone)]
pub struct ShapeFunction {
    name: String,
    kind: ShapeKind,
    scale: f64,
    even: bool,
    complex: bool,
    value: ComplexFn,
    derivative: ComplexFn,
}

impl fmt::Debug for ShapeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ShapeFunction")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("scale", &self.scale)
            .finish()
    }
}

impl ShapeFunction {
    /// A user-supplied shape. `scale` is its characteristic width, used for
    /// validation grids and finite-difference steps.
    pub fn custom<V, D>(name: impl Into<String>, kind: ShapeKind, scale: f64, value: V, derivative: D) -> Self
    where
        V: Fn(C64) -> C64 + Send + Sync + 'static,
        D: Fn(C64) -> C64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            kind,
            scale,
            even: false,
            complex: true,
            value: Arc::new(value),
            derivative: Arc::new(derivative),
        }
    }

    /// Declares the shape even in `t`, which the parametrized family needs
    /// for complex evaluation.
    pub fn even(mut self) -> Self {
        self.even = true;
        self
    }

    /// Marks the shape as defined on the real line only.
    pub fn real_only(mut self) -> Self {
        self.complex = false;
        self
    }

    /// `exp(-t^2 / T^2)`
    pub fn gaussian_pulse(t_width: f64) -> Self {
        let w = t_width;
        Self::custom(
            "gaussian",
            ShapeKind::Pulse,
            w,
            move |t| (-(t / w) * (t / w)).exp(),
            move |t| -2.0 * t / (w * w) * (-(t / w) * (t / w)).exp(),
        )
        .even()
    }

    /// `sech(t / T)`
    pub fn sech_pulse(t_width: f64) -> Self {
        let w = t_width;
        Self::custom(
            "sech",
            ShapeKind::Pulse,
            w,
            move |t| (t / w).cosh().inv(),
            move |t| -(t / w).tanh() / ((t / w).cosh() * w),
        )
        .even()
    }

    /// `erf(t / T)`
    pub fn erf_ramp(t_width: f64) -> Self {
        let w = t_width;
        Self::custom(
            "erf",
            ShapeKind::Monotone,
            w,
            move |t| erf(t / w),
            move |t| erf_derivative(t / w) / w,
        )
    }

    /// `tanh(t / T)`
    pub fn tanh_ramp(t_width: f64) -> Self {
        let w = t_width;
        Self::custom(
            "tanh",
            ShapeKind::Monotone,
            w,
            move |t| (t / w).tanh(),
            move |t| {
                let c = (t / w).cosh();
                1.0 / (c * c * w)
            },
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> ShapeKind {
        self.kind
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn complex_capable(&self) -> bool {
        self.complex
    }

    pub fn value(&self, t: C64) -> C64 {
        (self.value)(t)
    }

    pub fn derivative(&self, t: C64) -> C64 {
        (self.derivative)(t)
    }

    fn value_re(&self, t: f64) -> C64 {
        (self.value)(C64::new(t, 0.0))
    }

    fn derivative_re(&self, t: f64) -> f64 {
        (self.derivative)(C64::new(t, 0.0)).re
    }

    /// Checks the invariants of the shape's kind on a dense real grid.
    pub fn validate(&self) -> Result<()> {
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::Validation(format!("{}: width must be positive", self.name)));
        }
        let half = VALIDATION_HALF_WIDTH * self.scale;
        let n = VALIDATION_POINTS;
        let ts: Vec<f64> = (0..n).map(|i| -half + 2.0 * half * i as f64 / (n - 1) as f64).collect();
        let mut values = Vec::with_capacity(n);
        for &t in &ts {
            let v = self.value_re(t);
            if !v.re.is_finite() || v.im.abs() > 1e-12 * (1.0 + v.re.abs()) {
                return Err(Error::Validation(format!("{}: not real and finite at t = {t}", self.name)));
            }
            values.push(v.re);
        }
        let derivs: Vec<f64> = ts.iter().map(|&t| self.derivative_re(t)).collect();
        let d_max = derivs.iter().fold(0.0f64, |m, d| m.max(d.abs()));
        if !d_max.is_finite() || d_max == 0.0 {
            return Err(Error::Validation(format!("{}: derivative is zero or non-finite", self.name)));
        }

        match self.kind {
            ShapeKind::Monotone => {
                if let Some(i) = (1..n).find(|&i| values[i] < values[i - 1] - 1e-15) {
                    return Err(Error::Validation(format!(
                        "{}: decreases near t = {}",
                        self.name, ts[i]
                    )));
                }
                if (values[0] + 1.0).abs() > 1e-6 || (values[n - 1] - 1.0).abs() > 1e-6 {
                    return Err(Error::Validation(format!(
                        "{}: limits are {} and {}, expected -1 and 1",
                        self.name,
                        values[0],
                        values[n - 1]
                    )));
                }
            }
            ShapeKind::Pulse => {
                let peak = self.value_re(0.0).re;
                if let Some(i) = (0..n).find(|&i| !(values[i] > 0.0 && values[i] <= 1.0 + 1e-15)) {
                    return Err(Error::Validation(format!(
                        "{}: value {} at t = {} outside (0, 1]",
                        self.name, values[i], ts[i]
                    )));
                }
                if values.iter().any(|&v| v > peak + 1e-15) {
                    return Err(Error::Validation(format!("{}: maximum is not at t = 0", self.name)));
                }
            }
        }

        // Declared derivative against central differences, then continuity of
        // the derivative between grid neighbours.
        let h = 1e-5 * self.scale;
        for (&t, &d) in ts.iter().zip(&derivs) {
            let fd = (self.value_re(t + h).re - self.value_re(t - h).re) / (2.0 * h);
            if (fd - d).abs() > 1e-6 * d_max {
                return Err(Error::Validation(format!(
                    "{}: derivative {d} disagrees with difference quotient {fd} at t = {t}",
                    self.name
                )));
            }
        }
        if let Some(i) = (1..n).find(|&i| (derivs[i] - derivs[i - 1]).abs() > 0.05 * d_max) {
            return Err(Error::Validation(format!(
                "{}: derivative jumps near t = {}",
                self.name, ts[i]
            )));
        }

        if self.complex {
            // Cauchy–Riemann through a complex step.
            let hs = 1e-4 * self.scale;
            for (&t, &d) in ts.iter().zip(&derivs).step_by(7) {
                let step = self.value(C64::new(t, hs)) - self.value_re(t) - C64::new(0.0, hs * d);
                if !(step.norm() <= 1e-3 * hs * d_max) {
                    return Err(Error::Validation(format!(
                        "{}: not analytic near t = {t}",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }
}

fn positive(what: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what, value })
    }
}

fn params(pairs: &[(&str, f64)]) -> Vec<(String, f64)> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

#[derive(Debug)]
struct Parametrized {
    shape: ShapeFunction,
    omega0: f64,
    delta0: f64,
    /// `sqrt(-L''(0))`, used for the detuning near `t = 0`.
    curvature: f64,
}

impl Parametrized {
    fn near_origin(&self, t: C64) -> bool {
        t.norm() < LINEAR_LIMIT * self.shape.scale
    }

    /// `sqrt(1 - L^2)` carrying the sign of `t`.
    fn signed_root(&self, t: C64) -> C64 {
        if self.near_origin(t) {
            return self.curvature * t;
        }
        let l = self.shape.value(t);
        let one_minus = (1.0 - l) * (1.0 + l);
        if t.im == 0.0 {
            let r = one_minus.re.max(0.0).sqrt();
            return C64::new(if t.re > 0.0 { r } else { -r }, 0.0);
        }
        t * (one_minus / (t * t)).sqrt()
    }
}

impl Pulse for Parametrized {
    fn omega(&self, t: C64) -> C64 {
        self.omega0 * self.shape.value(t)
    }

    fn delta(&self, t: C64) -> C64 {
        self.delta0 * self.signed_root(t)
    }

    fn omega_dot(&self, t: C64) -> C64 {
        self.omega0 * self.shape.derivative(t)
    }

    fn delta_dot(&self, t: C64) -> C64 {
        if self.near_origin(t) {
            return C64::new(self.delta0 * self.curvature, 0.0);
        }
        let root = self.signed_root(t);
        -self.delta0 * self.shape.value(t) * self.shape.derivative(t) / root
    }

    fn complex_capable(&self) -> bool {
        self.shape.complex_capable() && self.shape.is_even()
    }
}

/// `Omega = Omega0 L(t)`, `Delta = Delta0 sign(t) sqrt(1 - L^2(t))`.
///
/// The splitting is `sqrt(Delta0^2 + (Omega0^2 - Delta0^2) L^2)`. Complex
/// evaluation is offered only for even, complex-capable `L` with `L(0) = 1`;
/// otherwise the model reports itself as real-line only.
pub fn make_parametrized(shape: ShapeFunction, omega0: f64, delta0: f64) -> Result<PulseModel> {
    positive("peak Rabi frequency", omega0)?;
    positive("detuning amplitude", delta0)?;
    if shape.kind() != ShapeKind::Pulse {
        return Err(Error::Validation(format!("{} is not a pulse shape", shape.name())));
    }
    shape.validate()?;
    let s = shape.scale();
    let h = 1e-3 * s;
    let second = (shape.derivative(C64::new(h, 0.0)).re - shape.derivative(C64::new(-h, 0.0)).re) / (2.0 * h);
    let mut shape = shape;
    if (shape.value(C64::new(0.0, 0.0)).re - 1.0).abs() > 1e-14 || second >= 0.0 {
        shape = shape.real_only();
    }
    let curvature = (-second).max(0.0).sqrt();
    let label = format!("parametrized-{}", shape.name());
    let pulse = Parametrized {
        shape,
        omega0,
        delta0,
        curvature,
    };
    Ok(PulseModel::new(
        label,
        params(&[("omega0", omega0), ("delta0", delta0), ("T", s)]),
        s,
        omega0.max(delta0),
        (-6.0 * s, 6.0 * s),
        Arc::new(pulse),
    ))
}

#[derive(Debug)]
struct ConstantSplitting {
    shape: ShapeFunction,
    omega0: f64,
    detuning_amplitude: f64,
}

impl ConstantSplitting {
    fn phase(&self, t: C64) -> C64 {
        FRAC_PI_2 * self.shape.value(t)
    }
}

impl Pulse for ConstantSplitting {
    fn omega(&self, t: C64) -> C64 {
        self.omega0 * self.phase(t).cos()
    }

    fn delta(&self, t: C64) -> C64 {
        self.detuning_amplitude * self.phase(t).sin()
    }

    fn omega_dot(&self, t: C64) -> C64 {
        -self.omega0 * self.phase(t).sin() * FRAC_PI_2 * self.shape.derivative(t)
    }

    fn delta_dot(&self, t: C64) -> C64 {
        self.detuning_amplitude * self.phase(t).cos() * FRAC_PI_2 * self.shape.derivative(t)
    }

    fn complex_capable(&self) -> bool {
        self.shape.complex_capable()
    }
}

fn constant_splitting(
    label: &str,
    shape: ShapeFunction,
    omega0: f64,
    detuning_amplitude: f64,
    extra: &[(&str, f64)],
) -> PulseModel {
    let s = shape.scale();
    let mut p = vec![("omega0", omega0), ("T", s)];
    p.extend_from_slice(extra);
    PulseModel::new(
        label,
        params(&p),
        s,
        omega0.max(detuning_amplitude),
        (-6.0 * s, 6.0 * s),
        Arc::new(ConstantSplitting {
            shape,
            omega0,
            detuning_amplitude,
        }),
    )
}

/// `Delta = Omega0 sin(pi f / 2)`, `Omega = Omega0 cos(pi f / 2)`: the
/// splitting is `Omega0` for every real `t`.
pub fn make_constant_splitting(shape: ShapeFunction, omega0: f64) -> Result<PulseModel> {
    positive("splitting", omega0)?;
    if shape.kind() != ShapeKind::Monotone {
        return Err(Error::Validation(format!("{} is not a monotone shape", shape.name())));
    }
    shape.validate()?;
    let label = format!("constant-splitting-{}", shape.name());
    Ok(constant_splitting(&label, shape, omega0, omega0, &[]))
}

/// The constant-splitting model with `f = erf(t / T)`.
pub fn make_erf(omega0: f64, t_width: f64) -> Result<PulseModel> {
    positive("splitting", omega0)?;
    positive("pulse width", t_width)?;
    Ok(constant_splitting("erf", ShapeFunction::erf_ramp(t_width), omega0, omega0, &[]))
}

/// The erf model with the detuning amplitude raised to `Omega0 + mu`.
///
/// `mu = 0` returns exactly [`make_erf`].
pub fn make_erf_deviated(omega0: f64, t_width: f64, mu: f64) -> Result<PulseModel> {
    if mu == 0.0 {
        return make_erf(omega0, t_width);
    }
    positive("splitting", omega0)?;
    positive("pulse width", t_width)?;
    positive("deviated detuning amplitude", omega0 + mu)?;
    Ok(constant_splitting(
        "erf-mu",
        ShapeFunction::erf_ramp(t_width),
        omega0,
        omega0 + mu,
        &[("mu", mu)],
    ))
}

#[derive(Debug)]
struct LandauZener {
    omega0: f64,
    slope: f64,
}

impl Pulse for LandauZener {
    fn omega(&self, _t: C64) -> C64 {
        C64::new(self.omega0, 0.0)
    }

    fn delta(&self, t: C64) -> C64 {
        self.slope * t
    }

    fn omega_dot(&self, _t: C64) -> C64 {
        C64::new(0.0, 0.0)
    }

    fn delta_dot(&self, _t: C64) -> C64 {
        C64::new(self.slope, 0.0)
    }
}

/// `Omega = Omega0`, `Delta = v t`. Time scale `1/sqrt(v)`, window `+-50/sqrt(v)`.
pub fn make_landau_zener(omega0: f64, slope: f64) -> Result<PulseModel> {
    positive("coupling", omega0)?;
    positive("sweep rate", slope)?;
    let s = slope.sqrt().recip();
    Ok(PulseModel::new(
        "landau-zener",
        params(&[("omega0", omega0), ("v", slope)]),
        s,
        omega0.max(slope.sqrt()),
        (-50.0 * s, 50.0 * s),
        Arc::new(LandauZener {
            omega0,
            slope,
        }),
    ))
}

#[derive(Debug)]
struct GaussianPulse {
    omega0: f64,
    delta: f64,
    width: f64,
}

impl Pulse for GaussianPulse {
    fn omega(&self, t: C64) -> C64 {
        let x = t / self.width;
        self.omega0 * (-x * x).exp()
    }

    fn delta(&self, _t: C64) -> C64 {
        C64::new(self.delta, 0.0)
    }

    fn omega_dot(&self, t: C64) -> C64 {
        let x = t / self.width;
        -2.0 * self.omega0 * x / self.width * (-x * x).exp()
    }

    fn delta_dot(&self, _t: C64) -> C64 {
        C64::new(0.0, 0.0)
    }
}

/// Gaussian coupling `Omega0 exp(-t^2/T^2)` at constant detuning `Delta`.
pub fn make_gaussian(omega0: f64, delta: f64, t_width: f64) -> Result<PulseModel> {
    positive("peak Rabi frequency", omega0)?;
    positive("pulse width", t_width)?;
    if delta == 0.0 || !delta.is_finite() {
        return Err(Error::Domain {
            what: "detuning",
            value: delta,
        });
    }
    Ok(PulseModel::new(
        "gaussian",
        params(&[("omega0", omega0), ("delta", delta), ("T", t_width)]),
        t_width,
        omega0.max(delta.abs()),
        (-6.0 * t_width, 6.0 * t_width),
        Arc::new(GaussianPulse {
            omega0,
            delta,
            width: t_width,
        }),
    ))
}

/// The adiabatic-basis image of the erf model written as a two-state
/// problem of its own: coupling `(sqrt(pi)/T) exp(-t^2/T^2)` at detuning `-Omega0`.
pub fn superadiabatic_gaussian(omega0: f64, t_width: f64) -> Result<PulseModel> {
    positive("splitting", omega0)?;
    positive("pulse width", t_width)?;
    make_gaussian(PI.sqrt() / t_width, -omega0, t_width)
}

#[derive(Debug)]
struct Constant {
    omega: f64,
    delta: f64,
}

impl Pulse for Constant {
    fn omega(&self, _t: C64) -> C64 {
        C64::new(self.omega, 0.0)
    }

    fn delta(&self, _t: C64) -> C64 {
        C64::new(self.delta, 0.0)
    }

    fn omega_dot(&self, _t: C64) -> C64 {
        C64::new(0.0, 0.0)
    }

    fn delta_dot(&self, _t: C64) -> C64 {
        C64::new(0.0, 0.0)
    }
}

/// Time-independent couplings (Rabi problem and free precession).
pub fn make_constant(omega: f64, delta: f64) -> PulseModel {
    let scale = omega.abs().max(delta.abs()).max(f64::MIN_POSITIVE);
    PulseModel::new(
        "constant",
        params(&[("omega", omega), ("delta", delta)]),
        1.0 / scale,
        scale,
        (0.0, 10.0 / scale),
        Arc::new(Constant { omega, delta }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{eigen_splitting, eigen_splitting_real, mixing_angle};

    #[test]
    fn erf_model_endpoints_and_origin() {
        let m = make_erf(4.0, 1.0).unwrap();
        let s = m.sample(0.0);
        assert_eq!(s.delta, 0.0);
        assert_eq!(s.omega, 4.0);
        let s = m.sample(30.0);
        assert!((s.delta - 4.0).abs() < 1e-15 && s.omega.abs() < 1e-14);
    }

    #[test]
    fn erf_splitting_is_constant() {
        let m = make_erf(2.5, 1.3).unwrap();
        for i in 0..=400 {
            let t = -8.0 + 16.0 * i as f64 / 400.0;
            assert!((eigen_splitting_real(&m, t) - 2.5).abs() <= 1e-12 * 2.5);
        }
    }

    #[test]
    fn tanh_constant_splitting_model() {
        let m = make_constant_splitting(ShapeFunction::tanh_ramp(0.8), 3.0).unwrap();
        for i in 0..=200 {
            let t = -6.0 + 12.0 * i as f64 / 200.0;
            assert!((eigen_splitting_real(&m, t) - 3.0).abs() <= 3e-12);
        }
    }

    #[test]
    fn deviated_with_zero_mu_is_the_erf_model() {
        let a = make_erf(3.0, 1.0).unwrap();
        let b = make_erf_deviated(3.0, 1.0, 0.0).unwrap();
        assert_eq!(a.label(), b.label());
        assert_eq!(a.params(), b.params());
        for &t in &[-1.3, 0.0, 0.4, 2.2] {
            assert_eq!(a.sample(t), b.sample(t));
        }
    }

    #[test]
    fn deviated_splitting_formula() {
        let (o, mu) = (4.0, 1.0);
        let m = make_erf_deviated(o, 1.0, mu).unwrap();
        for &t in &[-2.0, -0.5, 0.3, 1.1] {
            let s = (FRAC_PI_2 * erf(C64::new(t, 0.0)).re).sin();
            let e2 = o * o + (2.0 * o * mu + mu * mu) * s * s;
            assert!((m.splitting_sq(C64::new(t, 0.0)).re - e2).abs() < 1e-12 * e2);
        }
    }

    #[test]
    fn clipped_ramp_is_rejected() {
        let ramp = ShapeFunction::custom(
            "clipped-linear",
            ShapeKind::Monotone,
            1.0,
            |t: C64| C64::new(t.re.clamp(-1.0, 1.0), 0.0),
            |t: C64| C64::new(if t.re.abs() < 1.0 { 1.0 } else { 0.0 }, 0.0),
        );
        assert!(matches!(make_constant_splitting(ramp, 1.0), Err(Error::Validation(_))));
    }

    #[test]
    fn decreasing_ramp_is_rejected() {
        let f = ShapeFunction::custom(
            "reversed",
            ShapeKind::Monotone,
            1.0,
            |t: C64| -t.tanh(),
            |t: C64| -1.0 / (t.cosh() * t.cosh()),
        );
        assert!(make_constant_splitting(f, 1.0).is_err());
    }

    #[test]
    fn parametrized_identity_and_optimum() {
        let m = make_parametrized(ShapeFunction::gaussian_pulse(1.0), 2.0, 1.0).unwrap();
        assert!(m.complex_capable());
        for i in 0..1000 {
            let t = -6.0 + 12.0 * i as f64 / 999.0;
            let l = (-t * t).exp();
            let expect = 1.0 + 3.0 * l * l;
            assert!((m.splitting_sq(C64::new(t, 0.0)).re - expect).abs() <= 1e-12 * expect);
        }
        let opt = make_parametrized(ShapeFunction::sech_pulse(1.0), 1.5, 1.5).unwrap();
        for &t in &[-3.0, -0.2, 0.0, 1e-7, 0.9] {
            assert!((eigen_splitting_real(&opt, t) - 1.5).abs() < 1e-12);
        }
    }

    #[test]
    fn parametrized_detuning_is_odd_and_continuous() {
        let m = make_parametrized(ShapeFunction::sech_pulse(1.0), 2.0, 1.0).unwrap();
        assert_eq!(m.sample(0.0).delta, 0.0);
        for &t in &[1e-7, 1e-4, 0.5, 3.0] {
            assert_eq!(m.sample(t).delta, -m.sample(-t).delta);
        }
        let inside = m.sample(0.99e-5).delta;
        let outside = m.sample(1.01e-5).delta;
        assert!((outside / inside - 1.01 / 0.99).abs() < 1e-6);
    }

    #[test]
    fn parametrized_rejects_bad_shapes() {
        let wide = ShapeFunction::custom("tall", ShapeKind::Pulse, 1.0, |t: C64| 2.0 * (-t * t).exp(), |t: C64| {
            -4.0 * t * (-t * t).exp()
        });
        assert!(matches!(make_parametrized(wide, 2.0, 1.0), Err(Error::Validation(_))));
        assert!(make_parametrized(ShapeFunction::erf_ramp(1.0), 2.0, 1.0).is_err());
    }

    #[test]
    fn odd_pulse_is_real_only() {
        let skew = ShapeFunction::custom(
            "skewed",
            ShapeKind::Pulse,
            1.0,
            |t: C64| (-t * t).exp(),
            |t: C64| -2.0 * t * (-t * t).exp(),
        );
        let m = make_parametrized(skew, 2.0, 1.0).unwrap();
        assert!(!m.complex_capable());
    }

    #[test]
    fn level_crossing_boundaries() {
        for m in [
            make_erf(3.0, 1.0).unwrap(),
            make_erf_deviated(3.0, 1.0, 1.0).unwrap(),
            make_parametrized(ShapeFunction::gaussian_pulse(1.0), 2.0, 1.0).unwrap(),
            make_constant_splitting(ShapeFunction::erf_ramp(1.0), 1.0).unwrap(),
        ] {
            let (a, b) = m.window();
            let sa = m.sample(a);
            let sb = m.sample(b);
            let ta = mixing_angle(sa.omega, sa.delta).unwrap().value();
            let tb = mixing_angle(sb.omega, sb.delta).unwrap().value();
            assert!((ta - FRAC_PI_2).abs() < 1e-6, "{}: {ta}", m.label());
            assert!(tb < 1e-6, "{}: {tb}", m.label());
        }
    }

    #[test]
    fn landau_zener_transition_point() {
        let m = make_landau_zener(0.7, 2.0).unwrap();
        let t0 = C64::new(0.0, 0.35);
        assert!(eigen_splitting(&m, t0).norm() < 1e-15);
    }
}
