//! Tracing the level line `Im D(t) = Im D(t0)` away from a transition point.
//!
//! Three branches of the line leave a simple zero `t0` of `E^2`. Each is
//! followed by predictor–corrector steps: the predictor moves along
//! `conj(E)`, on which `D` changes by a real amount, and the corrector pulls
//! `Im D` back to its target along `i conj(E)`. A branch ends when it leaves
//! the strip `|Re t| <= far`, crosses the real axis, escapes upward, stalls,
//! or runs into another known zero, in which case tracing resumes along that
//! zero's other two branches.

use std::f64::consts::TAU;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::model::PulseModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchEnd {
    PlusInfinity,
    MinusInfinity,
    /// Crossed the real axis at the recorded point.
    RealAxis,
    Escaped,
    Stalled,
    /// Came back to a zero already on the traced line.
    Loop,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TracedBranch {
    /// Outgoing direction at `t0` in radians.
    pub direction: f64,
    pub path: Vec<C64>,
    /// Every end reached, including ends of continuations through other zeros.
    pub ends: Vec<BranchEnd>,
    /// Zeros the branch passed through.
    pub via: Vec<C64>,
    pub stall_at: Option<C64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StokesCheck {
    pub ok: bool,
    pub branches: Vec<TracedBranch>,
    /// First real time where the splitting vanishes, if any.
    pub real_axis_zero: Option<f64>,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokesOptions {
    /// Half-width of the strip; reaching `|Re t| > far` counts as infinity.
    pub far: f64,
    pub step: f64,
    pub max_steps: usize,
    pub max_depth: usize,
}

impl StokesOptions {
    pub fn for_model(model: &PulseModel) -> Self {
        let t = model.time_scale();
        Self {
            far: 6.0 * t,
            step: 0.02 * t,
            max_steps: 20_000,
            max_depth: 4,
        }
    }
}

const GL_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189,
    0.478_628_670_499_366,
    0.568_888_888_888_889,
    0.478_628_670_499_366,
    0.236_926_885_056_189,
];

fn nearest_root(model: &PulseModel, t: C64, reference: C64) -> C64 {
    let r = model.splitting_sq(t).sqrt();
    if (r * reference.conj()).re >= 0.0 {
        r
    } else {
        -r
    }
}

/// `integral of E` over `[a, b]` with the branch continued from `e_a`.
fn segment(model: &PulseModel, a: C64, b: C64, e_a: C64) -> (C64, C64) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = C64::new(0.0, 0.0);
    let mut reference = e_a;
    for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
        let e = nearest_root(model, mid + half * x, reference);
        reference = e;
        sum += w * e;
    }
    (sum * half, nearest_root(model, b, reference))
}

/// `integral of E` from the zero `t0` to `b` along the ray, substituting
/// `t = t0 + (b - t0) s^2` to absorb the square-root endpoint.
fn from_zero(model: &PulseModel, t0: C64, b: C64) -> (C64, C64) {
    let e_b = model.splitting_sq(b).sqrt();
    let span = b - t0;
    let mut sum = C64::new(0.0, 0.0);
    for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
        let s = 0.5 * (x + 1.0);
        let e = nearest_root(model, t0 + span * s * s, e_b);
        sum += 0.5 * w * e * 2.0 * s;
    }
    (sum * span, e_b)
}

struct Tracer<'a> {
    model: &'a PulseModel,
    zeros: &'a [C64],
    opts: StokesOptions,
    capture: f64,
    tol: f64,
}

struct Leg {
    path: Vec<C64>,
    end: LegEnd,
}

enum LegEnd {
    Final(BranchEnd),
    Zero(usize, C64),
    Stall(C64),
}

impl Tracer<'_> {
    /// Moves `t` onto `Im D = 0` (relative to the branch origin) by Newton steps.
    fn correct(&self, base: C64, d_base: C64, e_base: C64, mut t: C64, reach: f64) -> Option<(C64, C64, C64)> {
        for _ in 0..30 {
            let (inc, e) = segment(self.model, base, t, e_base);
            let d = d_base + inc;
            if d.im.abs() <= self.tol {
                return Some((t, d, e));
            }
            if e.norm() == 0.0 || !e.norm().is_finite() {
                return None;
            }
            let delta = C64::new(0.0, 1.0) * e.conj() * (-d.im) / e.norm_sqr();
            if delta.norm() > 0.5 * reach {
                return None;
            }
            t += delta;
        }
        None
    }

    fn leg(&self, origin: usize, direction: C64) -> Leg {
        let t0 = self.zeros[origin];
        let mut h = self.opts.step;
        let mut path = vec![t0];
        // First step along the ray, then project.
        let (mut t, mut d, mut e) = loop {
            let b = t0 + h * direction;
            let (d1, e1) = from_zero(self.model, t0, b);
            if let Some((t, d, e)) = self.correct(b, d1, e1, b, h) {
                break (t, d, e);
            }
            h *= 0.5;
            if h < 1e-6 * self.opts.step {
                return Leg {
                    path,
                    end: LegEnd::Stall(t0),
                };
            }
        };
        path.push(t);
        let mut heading = t - t0;
        let mut travelled = heading.norm();
        h = self.opts.step;
        for _ in 0..self.opts.max_steps {
            if t.re > self.opts.far {
                return Leg { path, end: LegEnd::Final(BranchEnd::PlusInfinity) };
            }
            if t.re < -self.opts.far {
                return Leg { path, end: LegEnd::Final(BranchEnd::MinusInfinity) };
            }
            if t.im < 0.0 {
                return Leg { path, end: LegEnd::Final(BranchEnd::RealAxis) };
            }
            if t.im > self.opts.far {
                return Leg { path, end: LegEnd::Final(BranchEnd::Escaped) };
            }
            for (k, &z) in self.zeros.iter().enumerate() {
                let close = (t - z).norm() < self.capture;
                if close && (k != origin || travelled > 10.0 * self.capture) {
                    path.push(z);
                    return Leg { path, end: LegEnd::Zero(k, t - z) };
                }
            }
            // Keep steps short compared with the distance to the nearest zero.
            let e2 = self.model.splitting_sq(t);
            let de2 = self.model.splitting_sq_dot(t);
            let local = if de2.norm() > 0.0 { 0.5 * e2.norm() / de2.norm() } else { f64::INFINITY };
            let step = h.min(local.max(0.1 * self.capture));
            let mut dir = e.conj() / e.norm();
            if (dir * heading.conj()).re < 0.0 {
                dir = -dir;
            }
            match self.correct(t, d, e, t + step * dir, step) {
                Some((tn, dn, en)) => {
                    heading = tn - t;
                    travelled += heading.norm();
                    t = tn;
                    d = dn;
                    e = en;
                    path.push(t);
                    h = (h * 1.5).min(self.opts.step * (1.0 + t.norm() / self.model.time_scale()));
                }
                None => {
                    h *= 0.5;
                    if h < 1e-7 * self.opts.step {
                        return Leg { path, end: LegEnd::Stall(t) };
                    }
                }
            }
        }
        Leg { path, end: LegEnd::Stall(t) }
    }

    fn directions(&self, t0: C64) -> [C64; 3] {
        let c1 = self.model.splitting_sq_dot(t0);
        let phi0 = -c1.arg() / 3.0;
        [0, 1, 2].map(|n| C64::from_polar(1.0, phi0 + TAU * n as f64 / 3.0))
    }

    fn trace(&self, origin: usize, direction: C64, depth: usize, visited: &mut Vec<usize>, out: &mut TracedBranch) {
        let leg = self.leg(origin, direction);
        out.path.extend_from_slice(&leg.path);
        match leg.end {
            LegEnd::Final(end) => out.ends.push(end),
            LegEnd::Stall(at) => {
                out.ends.push(BranchEnd::Stalled);
                out.stall_at.get_or_insert(at);
            }
            LegEnd::Zero(k, offset) => {
                let z = self.zeros[k];
                if visited.contains(&k) || depth >= self.opts.max_depth {
                    out.ends.push(BranchEnd::Loop);
                    return;
                }
                out.via.push(z);
                visited.push(k);
                // Leave along the two rays other than the one we arrived on.
                let back = offset / offset.norm();
                let mut rays = self.directions(z).to_vec();
                rays.sort_by(|a, b| (b * back.conj()).re.total_cmp(&(a * back.conj()).re));
                for ray in rays.into_iter().skip(1) {
                    self.trace(k, ray, depth + 1, visited, out);
                }
            }
        }
    }
}

/// Checks that the splitting does not vanish on the real axis and that the
/// level line through `t0` extends to both `Re t -> -inf` and `Re t -> +inf`.
///
/// `zeros` lists the other known transition points; the line may pass
/// through them on its way.
pub fn stokes_check(model: &PulseModel, t0: C64, zeros: &[C64], opts: &StokesOptions) -> Result<StokesCheck> {
    if !model.complex_capable() {
        return Err(Error::RealOnly(model.label().to_string()));
    }
    let scale = model.frequency_scale();
    let (a, b) = (-opts.far, opts.far);
    const PROBES: usize = 4001;
    for i in 0..PROBES {
        let t = a + (b - a) * i as f64 / (PROBES - 1) as f64;
        let s = model.sample(t);
        if (s.omega * s.omega + s.delta * s.delta).sqrt() <= 1e-12 * scale {
            return Ok(StokesCheck {
                ok: false,
                branches: Vec::new(),
                real_axis_zero: Some(t),
                message: format!("splitting vanishes on the real axis at t = {t}"),
            });
        }
    }
    if model.splitting_sq(t0).norm() > 1e-8 * scale * scale {
        return Err(Error::InvalidConfig(format!("{t0} is not a zero of the splitting")));
    }

    let mut all: Vec<C64> = vec![t0];
    all.extend(zeros.iter().copied().filter(|z| (z - t0).norm() > 1e-8 * model.time_scale()));
    let tracer = Tracer {
        model,
        zeros: &all,
        opts: *opts,
        capture: 0.05 * model.time_scale(),
        tol: 1e-11 * scale * model.time_scale(),
    };
    let mut branches = Vec::new();
    for dir in tracer.directions(t0) {
        let mut out = TracedBranch {
            direction: dir.arg(),
            path: Vec::new(),
            ends: Vec::new(),
            via: Vec::new(),
            stall_at: None,
        };
        let mut visited = vec![0];
        tracer.trace(0, dir, 0, &mut visited, &mut out);
        branches.push(out);
    }
    let reaches = |e: BranchEnd| -> Vec<usize> {
        (0..branches.len()).filter(|&i| branches[i].ends.contains(&e)).collect()
    };
    let plus = reaches(BranchEnd::PlusInfinity);
    let minus = reaches(BranchEnd::MinusInfinity);
    let ok = plus.iter().any(|p| minus.iter().any(|m| m != p));
    let message = if ok {
        "level line extends from -inf to +inf through t0".to_string()
    } else if let Some(at) = branches.iter().find_map(|b| b.stall_at) {
        format!("tracer stalled at {at}")
    } else {
        format!(
            "level line does not span the real direction (ends: {:?})",
            branches.iter().map(|b| b.ends.clone()).collect::<Vec<_>>()
        )
    };
    Ok(StokesCheck {
        ok,
        branches,
        real_axis_zero: None,
        message,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_gaussian, make_landau_zener};
    use crate::model::{Pulse, PulseModel};
    use std::f64::consts::PI;
    use std::sync::Arc;

    #[test]
    fn landau_zener_line_spans_the_axis() {
        let m = make_landau_zener(1.0, 1.0).unwrap();
        let chk = stokes_check(&m, C64::new(0.0, 1.0), &[], &StokesOptions::for_model(&m)).unwrap();
        assert!(chk.ok, "{}", chk.message);
    }

    #[test]
    fn gaussian_pair_shares_a_line() {
        let m = make_gaussian(1.0, 1.0, 1.0).unwrap();
        let h = PI.sqrt() / 2.0;
        let (p, q) = (C64::new(h, h), C64::new(-h, h));
        let chk = stokes_check(&m, p, &[q], &StokesOptions::for_model(&m)).unwrap();
        assert!(chk.ok, "{}", chk.message);
        assert!(chk.branches.iter().any(|b| b.via.iter().any(|z| (z - q).norm() < 1e-12)));
    }

    #[test]
    fn real_axis_zero_fails_condition_one() {
        #[derive(Debug)]
        struct Linear;
        impl Pulse for Linear {
            fn omega(&self, t: C64) -> C64 {
                0.6 * t
            }
            fn delta(&self, t: C64) -> C64 {
                0.8 * t
            }
            fn omega_dot(&self, _t: C64) -> C64 {
                C64::new(0.6, 0.0)
            }
            fn delta_dot(&self, _t: C64) -> C64 {
                C64::new(0.8, 0.0)
            }
        }
        let m = PulseModel::new("linear", vec![], 1.0, 1.0, (-5.0, 5.0), Arc::new(Linear));
        let chk = stokes_check(&m, C64::new(0.0, 0.0), &[], &StokesOptions::for_model(&m)).unwrap();
        assert!(!chk.ok);
        assert!(chk.real_axis_zero.unwrap().abs() < 1e-2);
    }
}
