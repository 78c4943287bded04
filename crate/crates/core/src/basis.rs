//! Diabatic and adiabatic representations of the two-state problem.
//!
//! With `H = 1/2 [[-Delta, Omega], [Omega, Delta]]` the amplitudes are related
//! by `c = R(theta) a`, `R = [[cos, sin], [-sin, cos]]`, where the mixing angle
//! obeys `tan 2 theta = Omega / Delta`, `0 <= theta <= pi/2`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::model::PulseModel;

pub type Mat2 = [[C64; 2]; 2];

/// Mixing angle in `[0, pi/2]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MixingAngle(f64);

impl MixingAngle {
    /// Wraps an angle, rejecting values outside `[0, pi/2]`.
    pub fn new(theta: f64) -> Result<Self> {
        if (0.0..=FRAC_PI_2).contains(&theta) {
            Ok(Self(theta))
        } else {
            Err(Error::Domain {
                what: "mixing angle",
                value: theta,
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    Diabatic,
    Adiabatic,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Diabatic => "diabatic",
            Basis::Adiabatic => "adiabatic",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Two probability amplitudes valid at `time`.
///
/// In the adiabatic basis `amps = [a_minus, a_plus]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudePair {
    pub amps: [C64; 2],
    pub basis: Basis,
    pub time: f64,
}

impl AmplitudePair {
    pub fn new(c1: C64, c2: C64, basis: Basis, time: f64) -> Self {
        Self {
            amps: [c1, c2],
            basis,
            time,
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps[0].norm_sqr() + self.amps[1].norm_sqr()
    }

    pub fn populations(&self) -> [f64; 2] {
        [self.amps[0].norm_sqr(), self.amps[1].norm_sqr()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rotation {
    /// `a = R^-1(theta) c`
    ToAdiabatic,
    /// `c = R(theta) a`
    ToDiabatic,
}

/// Which form of the adiabatic-basis Hamiltonian to return.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HamiltonianConvention {
    /// `R^-1 H R - i R^-1 dR/dt`: diagonal `-/+ E/2`, coupling `-/+ i theta_dot`.
    #[default]
    Canonical,
    /// The printed constant-splitting form `[[E, -2 theta_dot], [-2 theta_dot, -E]]`,
    /// twice the canonical scale with the phase of the coupling removed.
    Displayed,
}

/// Mixing angle from `tan 2 theta = omega / delta`.
///
/// Negative `omega` is folded back into `[0, pi/2]` through the period of
/// the tangent, so `theta` is discontinuous there.
pub fn mixing_angle(omega: f64, delta: f64) -> Result<MixingAngle> {
    if omega == 0.0 && delta == 0.0 {
        return Err(Error::DegenerateInput("mixing angle with zero Rabi frequency and detuning"));
    }
    if delta == 0.0 {
        return Ok(MixingAngle(FRAC_PI_4));
    }
    // atan2 can return exactly pi, which rem_euclid would wrap to zero.
    let mut two_theta = omega.atan2(delta);
    if two_theta < 0.0 {
        two_theta += PI;
    }
    Ok(MixingAngle((0.5 * two_theta).min(FRAC_PI_2)))
}

/// `theta_dot = (Omega_dot Delta - Delta_dot Omega) / (2 (Omega^2 + Delta^2))`.
pub fn nonadiabatic_coupling(model: &PulseModel, t: f64) -> Result<f64> {
    let s = model.sample(t);
    let e2 = s.omega * s.omega + s.delta * s.delta;
    if e2 == 0.0 {
        return Err(Error::DegenerateSplitting { t });
    }
    Ok(0.5 * (s.omega_dot * s.delta - s.delta_dot * s.omega) / e2)
}

/// Analytic continuation of the nonadiabatic coupling.
pub fn nonadiabatic_coupling_complex(model: &PulseModel, t: C64) -> C64 {
    let o = model.omega(t);
    let d = model.delta(t);
    0.5 * (model.omega_dot(t) * d - model.delta_dot(t) * o) / (o * o + d * d)
}

/// `sqrt(Omega^2 + Delta^2)` on the principal branch (non-negative on the real axis).
///
/// Along a complex path use [`crate::branch::TrackedSqrt`] instead.
pub fn eigen_splitting(model: &PulseModel, t: C64) -> C64 {
    model.splitting_sq(t).sqrt()
}

pub fn eigen_splitting_real(model: &PulseModel, t: f64) -> f64 {
    let s = model.sample(t);
    s.omega.hypot(s.delta)
}

/// Applies `R(theta)` or its inverse.
pub fn adiabatic_rotate(
    amps: AmplitudePair,
    theta: MixingAngle,
    direction: Rotation,
) -> Result<AmplitudePair> {
    let (expected, target) = match direction {
        Rotation::ToAdiabatic => (Basis::Diabatic, Basis::Adiabatic),
        Rotation::ToDiabatic => (Basis::Adiabatic, Basis::Diabatic),
    };
    if amps.basis != expected {
        return Err(Error::BasisMismatch {
            expected: expected.name(),
            found: amps.basis.name(),
        });
    }
    let (s, c) = theta.0.sin_cos();
    let [x, y] = amps.amps;
    let out = match direction {
        Rotation::ToAdiabatic => [c * x - s * y, s * x + c * y],
        Rotation::ToDiabatic => [c * x + s * y, -s * x + c * y],
    };
    Ok(AmplitudePair {
        amps: out,
        basis: target,
        time: amps.time,
    })
}

/// Rotates whatever basis `amps` is in to `target` using the model's angle at `amps.time`.
pub fn to_basis(model: &PulseModel, amps: AmplitudePair, target: Basis) -> Result<AmplitudePair> {
    if amps.basis == target {
        return Ok(amps);
    }
    let s = model.sample(amps.time);
    let theta = mixing_angle(s.omega, s.delta)?;
    let dir = match target {
        Basis::Adiabatic => Rotation::ToAdiabatic,
        Basis::Diabatic => Rotation::ToDiabatic,
    };
    adiabatic_rotate(amps, theta, dir)
}

/// The diabatic Hamiltonian `1/2 [[-Delta, Omega], [Omega, Delta]]` at real `t`.
pub fn diabatic_hamiltonian(model: &PulseModel, t: f64) -> Mat2 {
    let s = model.sample(t);
    let h = |v: f64| C64::new(0.5 * v, 0.0);
    [[h(-s.delta), h(s.omega)], [h(s.omega), h(s.delta)]]
}

/// Hamiltonian in the adiabatic basis.
pub fn adiabatic_hamiltonian(
    model: &PulseModel,
    t: f64,
    convention: HamiltonianConvention,
) -> Result<Mat2> {
    let e = eigen_splitting_real(model, t);
    if e == 0.0 {
        return Err(Error::DegenerateSplitting { t });
    }
    let td = nonadiabatic_coupling(model, t)?;
    Ok(match convention {
        HamiltonianConvention::Canonical => [
            [C64::new(-0.5 * e, 0.0), C64::new(0.0, -td)],
            [C64::new(0.0, td), C64::new(0.5 * e, 0.0)],
        ],
        HamiltonianConvention::Displayed => [
            [C64::new(e, 0.0), C64::new(-2.0 * td, 0.0)],
            [C64::new(-2.0 * td, 0.0), C64::new(-e, 0.0)],
        ],
    })
}
