//! `D(t0) = integral of E(t) dt` from the origin to a transition point.

use num_complex::Complex64 as C64;

use crate::branch::TrackedSqrt;
use crate::error::Result;
use crate::model::PulseModel;
use crate::quadrature;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdpIntegral {
    pub value: C64,
    pub error: f64,
    pub intervals: usize,
}

const REL_TOL: f64 = 1e-11;

/// Integrates the splitting from the origin to `t0`: along the real axis to
/// `Re t0`, then straight up.
///
/// Branch cuts are taken to run vertically upward from every zero, so the
/// vertical leg never crosses the cut of a lower point with a different real
/// part. The branch of `E` is positive on the real axis and continued along
/// the path.
pub fn ddp_integral(model: &PulseModel, t0: C64) -> Result<DdpIntegral> {
    ddp_integral_from(model, C64::new(0.0, 0.0), t0)
}

/// Same as [`ddp_integral`] from an arbitrary start point `a`: horizontal leg
/// to `Re t0 + i Im a`, then vertical leg to `t0`.
pub fn ddp_integral_from(model: &PulseModel, a: C64, t0: C64) -> Result<DdpIntegral> {
    if !model.complex_capable() {
        return Err(crate::Error::RealOnly(model.label().to_string()));
    }
    let corner = C64::new(t0.re, a.im);
    let start = model.splitting_sq(a).sqrt();
    let start = if start.re < 0.0 { -start } else { start };
    let (h, root) = segment(model, a, corner, start, false)?;
    let (v, _) = segment(model, corner, t0, root, true)?;
    Ok(DdpIntegral {
        value: h.value + v.value,
        error: h.error + v.error,
        intervals: h.intervals + v.intervals,
    })
}

/// Integral over the segment `from -> to` and the root reached at `to`.
///
/// With `singular_end` the segment is parametrized as
/// `t = from + (to - from)(1 - (1 - u)^2)`, which turns the square-root
/// behaviour at a simple zero into a smooth integrand.
fn segment(model: &PulseModel, from: C64, to: C64, start: C64, singular_end: bool) -> Result<(DdpIntegral, C64)> {
    if from == to {
        let zero = DdpIntegral {
            value: C64::new(0.0, 0.0),
            error: 0.0,
            intervals: 0,
        };
        return Ok((zero, start));
    }
    let span = to - from;
    let path = |u: f64| {
        if singular_end {
            from + span * (1.0 - (1.0 - u) * (1.0 - u))
        } else {
            from + span * u
        }
    };
    let jac = |u: f64| if singular_end { span * (2.0 * (1.0 - u)) } else { span };
    let radicand = |u: f64| model.splitting_sq(path(u));
    let branch = TrackedSqrt::build(radicand, start, to)?;
    let integrand = |u: f64| branch.eval(u, radicand(u)) * jac(u);
    let scale = model.frequency_scale() * span.norm();
    let r = quadrature::integrate(integrand, 0.0, 1.0, REL_TOL, 1e-14 * scale)?;
    let end = branch.eval(1.0, radicand(1.0));
    Ok((
        DdpIntegral {
            value: r.value,
            error: r.error,
            intervals: r.intervals,
        },
        end,
    ))
}
