//! Complex zeros of `E^2(t) = Omega^2 + Delta^2` in the upper half-plane.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::model::PulseModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointSign {
    Plus,
    Minus,
}

impl PointSign {
    pub fn symbol(self) -> &'static str {
        match self {
            PointSign::Plus => "+",
            PointSign::Minus => "-",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionPoint {
    pub t0: C64,
    /// Level index, counted from the real axis by distinct `Im t0`.
    pub index_k: usize,
    /// Half-plane quadrant: `Plus` for `Re t0 >= 0`.
    pub sign: PointSign,
    /// `|Omega^2 + Delta^2|` at `t0`.
    pub residual: f64,
}

/// Rectangle of seeds for the Newton search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchRegion {
    pub re_min: f64,
    pub re_max: f64,
    /// Points with `Im t0 <= im_min` are discarded; must be >= 0.
    pub im_min: f64,
    pub im_max: f64,
    pub spacing: f64,
}

impl SearchRegion {
    /// `Re t in [-4T, 4T]`, `Im t in (0, 4T]`, seed spacing `min(T, pi/W)`
    /// with `T` and `W` the model's time and frequency scales.
    pub fn for_model(model: &PulseModel) -> Self {
        let t = model.time_scale();
        Self {
            re_min: -4.0 * t,
            re_max: 4.0 * t,
            im_min: 0.0,
            im_max: 4.0 * t,
            spacing: t.min(PI / model.frequency_scale()),
        }
    }

    pub fn with_im_max(mut self, im_max: f64) -> Self {
        self.im_max = im_max;
        self
    }

    pub fn with_spacing(mut self, spacing: f64) -> Self {
        self.spacing = spacing;
        self
    }

    pub fn contains(&self, t: C64) -> bool {
        t.re >= self.re_min && t.re <= self.re_max && t.im > self.im_min && t.im <= self.im_max
    }

    fn validate(&self) -> Result<()> {
        let ok = self.re_min < self.re_max
            && self.im_min >= 0.0
            && self.im_min < self.im_max
            && self.spacing > 0.0
            && [self.re_min, self.re_max, self.im_max, self.spacing].iter().all(|v| v.is_finite());
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!("bad search region {self:?}")))
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RootSearch {
    pub points: Vec<TransitionPoint>,
    pub warnings: Vec<String>,
    pub seeds: usize,
    pub converged: usize,
}

const MAX_ITER: usize = 80;
/// Bisection depth of the completeness check.
const MAX_DEPTH: usize = 6;
/// Bisection depth at which ill-conditioned tiles are given up.
const ILL_DEPTH: usize = 3;
/// Seeds per side when a tile is re-searched.
const TILE_SEEDS: usize = 5;
/// Zeros whose `|Omega|^2 + |Delta|^2` exceeds this multiple of the squared
/// frequency scale are dominated by cancellation and rejected.
const MAX_CONDITIONING: f64 = 1e8;

enum Outcome {
    Converged(C64, f64),
    Failed,
}

fn newton(model: &PulseModel, seed: C64, max_step: f64, scale2: f64) -> Outcome {
    let mut t = seed;
    let mut converged_at = None;
    for it in 0..MAX_ITER {
        let g = model.splitting_sq(t);
        let dg = model.splitting_sq_dot(t);
        if !(g.re.is_finite() && g.im.is_finite() && dg.re.is_finite() && dg.im.is_finite()) {
            return Outcome::Failed;
        }
        if g.norm() <= 1e-13 * scale2 && converged_at.is_none() {
            converged_at = Some(it);
        }
        if converged_at.is_some_and(|c| it >= c + 3) {
            break;
        }
        if dg.norm() == 0.0 {
            return Outcome::Failed;
        }
        let mut step = g / dg;
        if step.norm() > max_step {
            step *= max_step / step.norm();
        }
        t -= step;
        if step.norm() <= 1e-15 * t.norm().max(1e-300) {
            break;
        }
    }
    let g = model.splitting_sq(t);
    let o = model.omega(t);
    let d = model.delta(t);
    let magnitude = o.norm_sqr() + d.norm_sqr();
    if g.norm() <= 1e-10 * scale2 && magnitude <= MAX_CONDITIONING * scale2 && g.norm() <= 1e-12 * magnitude.max(scale2) {
        Outcome::Converged(t, g.norm())
    } else {
        Outcome::Failed
    }
}

#[derive(Debug, Clone, Copy)]
struct Rect {
    re: (f64, f64),
    im: (f64, f64),
}

impl Rect {
    fn contains(&self, t: C64) -> bool {
        t.re >= self.re.0 && t.re < self.re.1 && t.im >= self.im.0 && t.im < self.im.1
    }

    /// Four children, split off-centre so that points on symmetry lines do
    /// not land on an edge.
    fn split(&self) -> [Rect; 4] {
        let xm = self.re.0 + 0.5379 * (self.re.1 - self.re.0);
        let ym = self.im.0 + 0.4621 * (self.im.1 - self.im.0);
        [
            Rect { re: (self.re.0, xm), im: (self.im.0, ym) },
            Rect { re: (xm, self.re.1), im: (self.im.0, ym) },
            Rect { re: (self.re.0, xm), im: (ym, self.im.1) },
            Rect { re: (xm, self.re.1), im: (ym, self.im.1) },
        ]
    }
}

/// Why the winding of a rectangle could not be counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Blocked {
    /// A zero or singularity sits on (or very near) the boundary.
    OnEdge,
    /// `E^2` is lost to cancellation on the boundary.
    IllConditioned,
}

/// `E^2 = g` at `t` is resolved unless it is both large cancellation in
/// absolute terms and lost against rounding of `Omega^2` and `Delta^2`.
fn conditioned(model: &PulseModel, t: C64, g: C64, scale2: f64) -> bool {
    let magnitude = model.omega(t).norm_sqr() + model.delta(t).norm_sqr();
    magnitude <= MAX_CONDITIONING * scale2 || magnitude <= 1e10 * g.norm()
}

fn blocked_at(model: &PulseModel, t: C64, g: C64, scale2: f64) -> Blocked {
    if conditioned(model, t, g, scale2) {
        Blocked::OnEdge
    } else {
        Blocked::IllConditioned
    }
}

/// Change of `arg E^2` from `a` to `b`, bisecting until each piece turns by
/// less than half a radian and is short against `|E^2 / (E^2)'|`.
fn arg_change(
    model: &PulseModel,
    (a, b): (C64, C64),
    (ga, gb): (C64, C64),
    scale2: f64,
    depth: usize,
) -> std::result::Result<f64, Blocked> {
    let m = 0.5 * (a + b);
    let gm = model.splitting_sq(m);
    if !(gm.re.is_finite() && gm.im.is_finite()) || gm == C64::new(0.0, 0.0) {
        return Err(blocked_at(model, m, gm, scale2));
    }
    let d1 = (gm / ga).arg();
    let d2 = (gb / gm).arg();
    let short = (b - a).norm() * model.splitting_sq_dot(m).norm() < 0.3 * gm.norm();
    if short && d1.abs() < 0.5 && d2.abs() < 0.5 && (d1 + d2 - (gb / ga).arg()).abs() < 1e-9 {
        return Ok(d1 + d2);
    }
    if depth == 0 {
        return Err(blocked_at(model, m, gm, scale2));
    }
    Ok(arg_change(model, (a, m), (ga, gm), scale2, depth - 1)? + arg_change(model, (m, b), (gm, gb), scale2, depth - 1)?)
}

/// Zeros minus poles of `E^2` inside `r`.
fn winding(model: &PulseModel, r: &Rect, scale2: f64) -> std::result::Result<i64, Blocked> {
    let c = [
        C64::new(r.re.0, r.im.0),
        C64::new(r.re.1, r.im.0),
        C64::new(r.re.1, r.im.1),
        C64::new(r.re.0, r.im.1),
    ];
    let pieces = 32;
    let mut total = 0.0;
    for i in 0..4 {
        let (a, b) = (c[i], c[(i + 1) % 4]);
        let mut za = a;
        let mut ga = model.splitting_sq(a);
        for j in 1..=pieces {
            let zb = a + (b - a) * (j as f64 / pieces as f64);
            let gb = model.splitting_sq(zb);
            if !conditioned(model, zb, gb, scale2) {
                return Err(Blocked::IllConditioned);
            }
            if !(ga.re.is_finite() && ga.im.is_finite() && gb.re.is_finite() && gb.im.is_finite()) {
                return Err(Blocked::OnEdge);
            }
            total += arg_change(model, (za, zb), (ga, gb), scale2, 40)?;
            za = zb;
            ga = gb;
        }
    }
    let n = total / (2.0 * PI);
    if (n - n.round()).abs() < 1e-3 {
        Ok(n.round() as i64)
    } else {
        Err(Blocked::OnEdge)
    }
}

/// Newton on `E^2 / prod (t - z_i)` so that known zeros repel the iterate.
fn deflated_newton(model: &PulseModel, seed: C64, known: &[(C64, f64)], max_step: f64) -> Option<C64> {
    let mut t = seed;
    for _ in 0..MAX_ITER {
        let g = model.splitting_sq(t);
        let dg = model.splitting_sq_dot(t);
        if g == C64::new(0.0, 0.0) {
            return Some(t);
        }
        let ratio = dg / g - known.iter().map(|(z, _)| (t - z).inv()).sum::<C64>();
        if !(ratio.re.is_finite() && ratio.im.is_finite()) || ratio.norm() == 0.0 {
            return None;
        }
        let mut step = ratio.inv();
        if step.norm() > max_step {
            step *= max_step / step.norm();
        }
        t -= step;
        if step.norm() <= 1e-14 * t.norm().max(1e-300) {
            break;
        }
    }
    Some(t)
}

struct Refine<'a> {
    model: &'a PulseModel,
    region: &'a SearchRegion,
    scale2: f64,
    dedup: f64,
    found: &'a mut Vec<(C64, f64)>,
    warnings: &'a mut Vec<String>,
    /// Tiles left uncounted because `E^2` cannot be evaluated accurately.
    skipped: Vec<Rect>,
}

impl Refine<'_> {
    fn count_in(&self, r: &Rect) -> i64 {
        self.found.iter().filter(|(z, _)| r.contains(*z)).count() as i64
    }

    fn accept(&mut self, t: C64) {
        if let Outcome::Converged(t, res) = newton(self.model, t, self.dedup, self.scale2) {
            if self.region.contains(t) && t.im > self.dedup && !self.found.iter().any(|(f, _)| (f - t).norm() <= self.dedup) {
                self.found.push((t, res));
            }
        }
    }

    fn tile(&mut self, r: Rect, depth: usize) {
        let expected = match winding(self.model, &r, self.scale2) {
            Ok(n) => n,
            Err(Blocked::IllConditioned) if depth >= ILL_DEPTH => {
                self.skipped.push(r);
                return;
            }
            Err(Blocked::OnEdge) if depth == MAX_DEPTH => {
                self.warnings.push(format!(
                    "zero count undetermined in Re [{:.3}, {:.3}], Im [{:.3}, {:.3}]",
                    r.re.0, r.re.1, r.im.0, r.im.1
                ));
                return;
            }
            Err(_) => {
                for child in r.split() {
                    self.tile(child, depth + 1);
                }
                return;
            }
        };
        if self.count_in(&r) >= expected {
            return;
        }
        let (w, h) = (r.re.1 - r.re.0, r.im.1 - r.im.0);
        for i in 0..TILE_SEEDS {
            for j in 0..TILE_SEEDS {
                let seed = C64::new(
                    r.re.0 + (i as f64 + 0.5) * w / TILE_SEEDS as f64,
                    r.im.0 + (j as f64 + 0.5) * h / TILE_SEEDS as f64,
                );
                if let Some(t) = deflated_newton(self.model, seed, self.found, 0.5 * w.max(h)) {
                    self.accept(t);
                }
                if self.count_in(&r) >= expected {
                    return;
                }
            }
        }
        if depth == MAX_DEPTH {
            self.warnings.push(format!(
                "{} zero(s) not located in Re [{:.3}, {:.3}], Im [{:.3}, {:.3}]",
                expected - self.count_in(&r),
                r.re.0,
                r.re.1,
                r.im.0,
                r.im.1
            ));
            return;
        }
        for child in r.split() {
            self.tile(child, depth + 1);
        }
    }
}

/// Newton search for zeros of `E^2` seeded on a grid over `region`, then
/// completed tile by tile until the count matches the winding of `E^2`.
///
/// Zeros are deduplicated, sorted by `Im t0` then `Re t0`, labelled by level
/// `k` and quadrant, and truncated to `max_points`. Zeros on the real axis
/// are reported as warnings, never as points.
pub fn find_transition_points(model: &PulseModel, region: &SearchRegion, max_points: usize) -> Result<RootSearch> {
    if !model.complex_capable() {
        return Err(Error::RealOnly(model.label().to_string()));
    }
    region.validate()?;
    let ts = model.time_scale();
    let scale = model.frequency_scale();
    let scale2 = scale * scale;
    let nx = (((region.re_max - region.re_min) / region.spacing).round() as usize).max(1) + 1;
    let ny = (((region.im_max - region.im_min) / region.spacing).round() as usize).max(1);
    let dx = (region.re_max - region.re_min) / (nx - 1) as f64;
    let dy = (region.im_max - region.im_min) / ny as f64;

    let mut out = RootSearch::default();
    let mut found: Vec<(C64, f64)> = Vec::new();
    let mut real_zeros: Vec<f64> = Vec::new();
    let dedup = 1e-6 * ts;

    for j in 1..=ny {
        for i in 0..nx {
            let seed = C64::new(region.re_min + i as f64 * dx, region.im_min + j as f64 * dy);
            out.seeds += 1;
            match newton(model, seed, 2.0 * region.spacing, scale2) {
                Outcome::Converged(t, res) => {
                    out.converged += 1;
                    if t.im.abs() <= dedup {
                        if !real_zeros.iter().any(|&r| (r - t.re).abs() <= dedup) {
                            real_zeros.push(t.re);
                        }
                        continue;
                    }
                    if !region.contains(t) {
                        continue;
                    }
                    if !found.iter().any(|(f, _)| (f - t).norm() <= dedup) {
                        found.push((t, res));
                    }
                }
                Outcome::Failed => {}
            }
        }
    }

    // Close the gaps the seed grid left, judged by the argument principle.
    let bottom = region.im_min + dedup;
    let whole = Rect {
        re: (region.re_min, region.re_max),
        im: (bottom, region.im_max),
    };
    let mut refine = Refine {
        model,
        region,
        scale2,
        dedup,
        found: &mut found,
        warnings: &mut out.warnings,
        skipped: Vec::new(),
    };
    refine.tile(whole, 0);
    if !refine.skipped.is_empty() {
        let sk = &refine.skipped;
        let lo = |f: fn(&Rect) -> f64| sk.iter().map(f).fold(f64::INFINITY, f64::min);
        let hi = |f: fn(&Rect) -> f64| sk.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
        refine.warnings.push(format!(
            "splitting lost to cancellation in Re [{:.3}, {:.3}], Im [{:.3}, {:.3}]; zeros there are not counted",
            lo(|r| r.re.0),
            hi(|r| r.re.1),
            lo(|r| r.im.0),
            hi(|r| r.im.1)
        ));
    }

    for r in real_zeros {
        out.warnings.push(format!("splitting vanishes on the real axis at t = {r}"));
    }

    found.sort_by(|a, b| a.0.im.total_cmp(&b.0.im).then(a.0.re.total_cmp(&b.0.re)));
    let level_tol = 1e-7 * ts;
    let mut k = 0usize;
    let mut level_im = f64::NAN;
    for (t, res) in found {
        if !level_im.is_nan() && (t.im - level_im).abs() > level_tol {
            k += 1;
        }
        if level_im.is_nan() || (t.im - level_im).abs() > level_tol {
            level_im = t.im;
        }
        let sign = if t.re < -level_tol { PointSign::Minus } else { PointSign::Plus };
        out.points.push(TransitionPoint {
            t0: t,
            index_k: k,
            sign,
            residual: res,
        });
    }
    out.points
        .sort_by(|a, b| a.index_k.cmp(&b.index_k).then(a.t0.re.total_cmp(&b.t0.re)));
    out.points.truncate(max_points);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_erf, make_gaussian, make_landau_zener};

    #[test]
    fn landau_zener_single_point() {
        let m = make_landau_zener(0.8, 2.0).unwrap();
        let r = find_transition_points(&m, &SearchRegion::for_model(&m), 10).unwrap();
        assert_eq!(r.points.len(), 1);
        assert!((r.points[0].t0 - C64::new(0.0, 0.4)).norm() < 1e-12);
        assert_eq!(r.points[0].sign, PointSign::Plus);
    }

    #[test]
    fn gaussian_unit_alpha_lowest_pair() {
        // alpha = 1: tau0 = +-sqrt(pi)/2 + i sqrt(pi)/2
        let m = make_gaussian(1.0, 1.0, 1.0).unwrap();
        let r = find_transition_points(&m, &SearchRegion::for_model(&m), 100).unwrap();
        let h = PI.sqrt() / 2.0;
        let p: Vec<_> = r.points.iter().filter(|p| p.index_k == 0).collect();
        assert_eq!(p.len(), 2, "{:?}", r.points);
        assert!((p[0].t0 - C64::new(-h, h)).norm() < 1e-10 && p[0].sign == PointSign::Minus);
        assert!((p[1].t0 - C64::new(h, h)).norm() < 1e-10 && p[1].sign == PointSign::Plus);
    }

    #[test]
    fn erf_model_has_no_points() {
        let m = make_erf(4.0, 1.0).unwrap();
        let region = SearchRegion::for_model(&m).with_im_max(2.0);
        let r = find_transition_points(&m, &region, 10).unwrap();
        assert!(r.points.is_empty());
    }

    #[test]
    fn winding_counts_gaussian_zeros() {
        // alpha = 1: k = 0 pair on the diagonal at sqrt(pi)/2, k = 1 at sqrt(3 pi)/2
        let m = make_gaussian(1.0, 1.0, 1.0).unwrap();
        let r = Rect { re: (-2.0, 2.0), im: (0.1, 1.2) };
        assert_eq!(winding(&m, &r, 1.0), Ok(2));
        let r = Rect { re: (-2.0, 2.0), im: (0.1, 1.7) };
        assert_eq!(winding(&m, &r, 1.0), Ok(4));
        let r = Rect { re: (0.1, 2.0), im: (0.1, 1.0) };
        assert_eq!(winding(&m, &r, 1.0), Ok(1));
    }

    #[test]
    fn points_sorted_and_truncated() {
        let m = make_gaussian(2.0, 1.0, 1.0).unwrap();
        let all = find_transition_points(&m, &SearchRegion::for_model(&m), 100).unwrap();
        assert!(all.points.len() >= 4);
        assert!(all.points.windows(2).all(|w| w[0].t0.im <= w[1].t0.im + 1e-7));
        let two = find_transition_points(&m, &SearchRegion::for_model(&m), 2).unwrap();
        assert_eq!(two.points.len(), 2);
    }

    #[test]
    fn real_only_model_is_refused() {
        use crate::families::{make_parametrized, ShapeFunction, ShapeKind};
        let skew = ShapeFunction::custom("s", ShapeKind::Pulse, 1.0, |t: C64| (-t * t).exp(), |t: C64| {
            -2.0 * t * (-t * t).exp()
        });
        let m = make_parametrized(skew, 2.0, 1.0).unwrap();
        assert!(matches!(
            find_transition_points(&m, &SearchRegion::for_model(&m), 4),
            Err(Error::RealOnly(_))
        ));
    }
}
