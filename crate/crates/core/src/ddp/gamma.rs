//! Prefactors `Gamma = 4i lim (t - t0) theta_dot(t)` at transition points.

use std::f64::consts::TAU;

use num_complex::Complex64 as C64;

use crate::basis::nonadiabatic_coupling_complex;
use crate::error::{Error, Result};
use crate::model::PulseModel;

const CIRCLE_POINTS: usize = 64;
const RADIUS_FRACTION: f64 = 1e-3;

/// Circle average of `4i (t - t0) theta_dot(t)` on `|t - t0| = r`.
///
/// For a simple pole of `theta_dot` this is the residue times `4i` for any
/// radius below the distance to the next singularity.
pub fn gamma_at_radius(model: &PulseModel, t0: C64, r: f64) -> C64 {
    let mut sum = C64::new(0.0, 0.0);
    for j in 0..CIRCLE_POINTS {
        let w = C64::from_polar(r, TAU * (j as f64 + 0.5) / CIRCLE_POINTS as f64);
        sum += w * nonadiabatic_coupling_complex(model, t0 + w);
    }
    C64::new(0.0, 4.0) * sum / CIRCLE_POINTS as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaEstimate {
    /// Extrapolated value.
    pub value: C64,
    pub at_r: C64,
    pub at_half_r: C64,
    pub radius: f64,
}

/// `Gamma` from two radii `r = 1e-3 Im t0` and `r/2` with Richardson extrapolation.
pub fn gamma_factor(model: &PulseModel, t0: C64) -> Result<GammaEstimate> {
    if !model.complex_capable() {
        return Err(Error::RealOnly(model.label().to_string()));
    }
    let scale = model.frequency_scale();
    let slope = model.splitting_sq_dot(t0);
    let ts = model.time_scale();
    // E^2 vanishes at t0; a simple zero has a derivative of order W^2 / T.
    if slope.norm() <= 1e-8 * scale * scale / ts {
        return Err(Error::NonSimpleZero { t0 });
    }
    let r = RADIUS_FRACTION * t0.im.abs().max(1e-3 * ts);
    let g1 = gamma_at_radius(model, t0, r);
    let g2 = gamma_at_radius(model, t0, 0.5 * r);
    if !(g1.norm().is_finite() && g2.norm().is_finite()) {
        return Err(Error::NonSimpleZero { t0 });
    }
    Ok(GammaEstimate {
        value: (4.0 * g2 - g1) / 3.0,
        at_r: g1,
        at_half_r: g2,
        radius: r,
    })
}
