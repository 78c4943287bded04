//! Square root of an analytic radicand continued along a parametrized path.

use num_complex::Complex64 as C64;
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

const INITIAL_SAMPLES: usize = 257;
const MAX_SAMPLES: usize = 1 << 17;

/// Branch table of `sqrt(r(u))` for `u` in `[0, 1]`.
///
/// The sign at `u = 0` matches `start`, and later samples are chosen by
/// continuity. The table is refined until the argument of the radicand moves
/// by less than `pi/2` between neighbours (ignoring samples where the
/// radicand has collapsed to a zero of the path end point).
#[derive(Debug, Clone)]
pub struct TrackedSqrt {
    values: Vec<C64>,
}

impl TrackedSqrt {
    pub fn build<F>(radicand: F, start: C64, target: C64) -> Result<Self>
    where
        F: Fn(f64) -> C64,
    {
        let mut n = INITIAL_SAMPLES;
        'refine: while n <= MAX_SAMPLES {
            let rs: Vec<C64> = (0..n).map(|i| radicand(i as f64 / (n - 1) as f64)).collect();
            if rs.iter().any(|r| !r.re.is_finite() || !r.im.is_finite()) {
                return Err(Error::PathRefinement { target });
            }
            let scale = rs.iter().map(|r| r.norm()).fold(0.0, f64::max);
            let floor = 1e-10 * scale;
            let mut values = Vec::with_capacity(n);
            let mut prev = start;
            for (i, r) in rs.iter().enumerate() {
                if i > 0 {
                    let (a, b) = (rs[i - 1], *r);
                    if a.norm() > floor && b.norm() > floor && (b / a).arg().abs() >= FRAC_PI_2 {
                        n = 2 * n - 1;
                        continue 'refine;
                    }
                }
                let root = r.sqrt();
                let v = if (root * prev.conj()).re >= 0.0 { root } else { -root };
                values.push(v);
                if v.norm() > 0.0 {
                    prev = v;
                }
            }
            return Ok(Self { values });
        }
        Err(Error::PathRefinement { target })
    }

    /// Root of `radicand` (the value of `r(u)`) on the tracked branch.
    pub fn eval(&self, u: f64, radicand: C64) -> C64 {
        let n = self.values.len();
        let mut idx = ((u.clamp(0.0, 1.0)) * (n - 1) as f64).round() as usize;
        while idx > 0 && self.values[idx].norm() == 0.0 {
            idx -= 1;
        }
        let reference = self.values[idx];
        let root = radicand.sqrt();
        if (root * reference.conj()).re >= 0.0 {
            root
        } else {
            -root
        }
    }

    pub fn samples(&self) -> &[C64] {
        &self.values
    }
}
