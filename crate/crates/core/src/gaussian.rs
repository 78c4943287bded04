//! Closed forms for the Gaussian model: constant splitting `W`, coupling
//! `A exp(-t^2/T^2)`, `alpha = A / W`.
//!
//! In dimensionless time `tau = t/T` the splitting is
//! `W sqrt(alpha^2 exp(-2 tau^2) + 1)`, so every quantity below depends on
//! `alpha` and the product `W T` only. The adiabatic-basis image of the erf
//! pulse is this model with `W = Omega0`, `A = sqrt(pi)/T`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::ddp::ddp_integral;
use crate::error::{Error, Result};
use crate::families::make_gaussian;
use crate::special::erf;

/// Fitted constant of the uniform `Im D` approximation.
pub const M_IM: f64 = 1.311468;
/// Constant of the `I1` approximation to `Re D`.
pub const NU_RE: f64 = 0.462350;
/// Constant of the `I2` approximation to `Re D`.
pub const MU_RE: f64 = 0.316193;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianParams {
    pub coupling_amplitude: f64,
    pub splitting: f64,
    pub t_width: f64,
    pub alpha: f64,
}

impl GaussianParams {
    pub fn new(coupling_amplitude: f64, splitting: f64, t_width: f64) -> Result<Self> {
        for (what, v) in [
            ("coupling amplitude", coupling_amplitude),
            ("splitting", splitting),
            ("pulse width", t_width),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain { what, value: v });
            }
        }
        Ok(Self {
            coupling_amplitude,
            splitting,
            t_width,
            alpha: coupling_amplitude / splitting,
        })
    }

    /// Image of the erf pulse: `W = Omega0`, `A = sqrt(pi)/T`, `alpha = sqrt(pi)/(T Omega0)`.
    pub fn superadiabatic(omega0: f64, t_width: f64) -> Result<Self> {
        if !(t_width > 0.0) {
            return Err(Error::Domain {
                what: "pulse width",
                value: t_width,
            });
        }
        Self::new(PI.sqrt() / t_width, omega0, t_width)
    }

    /// `W T`, the prefactor of every action.
    pub fn action_scale(&self) -> f64 {
        self.splitting * self.t_width
    }
}

/// `(tau_k^+, tau_k^-)` in units of `T`.
pub fn transition_points_closed(alpha: f64, k: usize) -> (C64, C64) {
    let l = alpha.ln();
    let r = (4.0 * l * l + ((2 * k + 1) as f64 * PI).powi(2)).sqrt();
    let xi = 0.5 * (r + 2.0 * l).sqrt();
    let eta = 0.5 * (r - 2.0 * l).sqrt();
    (C64::new(xi, eta), C64::new(-xi, eta))
}

/// Leading small-`alpha` forms of `(xi_k, eta_k)`.
pub fn transition_points_small_alpha(alpha: f64, k: usize) -> (f64, f64) {
    let l = (1.0 / alpha).ln().sqrt();
    ((2 * k + 1) as f64 * PI / (4.0 * l), l)
}

/// Term-by-term integral of the binomial series of the splitting along the
/// straight path to `tau_0^+`, truncated after `n_max` terms.
pub fn ddp_series_small_alpha(params: &GaussianParams, n_max: usize) -> Result<C64> {
    let alpha = params.alpha;
    if alpha >= 1.0 {
        return Err(Error::Domain {
            what: "alpha for the small-alpha series",
            value: alpha,
        });
    }
    Ok(params.action_scale() * series_sum(alpha, n_max).0)
}

/// Returns the truncated sum and the magnitudes of the individual terms.
fn series_sum(alpha: f64, n_max: usize) -> (C64, Vec<f64>) {
    let (tau, _) = transition_points_closed(alpha, 0);
    let mut sum = tau;
    let mut terms = Vec::with_capacity(n_max);
    // c_n = (-1)^(n-1) (2n-3)!! / (2n)!!, the binomial coefficient of sqrt(1 + x).
    let mut c = 0.5;
    let a2 = alpha * alpha;
    let mut a2n = 1.0;
    for n in 1..=n_max {
        if n > 1 {
            c *= -((2 * n - 3) as f64) / ((2 * n) as f64);
        }
        a2n *= a2;
        let root = ((2 * n) as f64).sqrt();
        let term = c * a2n * PI.sqrt() * erf(tau * root) / (2.0 * root);
        terms.push(term.norm());
        sum += term;
    }
    (sum, terms)
}

/// Magnitudes of the series terms `n = 1..=n_max`.
pub fn series_term_magnitudes(alpha: f64, n_max: usize) -> Vec<f64> {
    series_sum(alpha, n_max).1
}

/// Uniform approximation `Im D = (W T / 2) sqrt(sqrt(4 ln^2(m alpha) + pi^2) - 2 ln(m alpha))`.
pub fn im_d_uniform(params: &GaussianParams) -> f64 {
    let l = (M_IM * params.alpha).ln();
    0.5 * params.action_scale() * ((4.0 * l * l + PI * PI).sqrt() - 2.0 * l).sqrt()
}

/// Small-`alpha` limit `Im D ~ W T sqrt(ln(m / alpha))`.
pub fn im_d_small_alpha(params: &GaussianParams) -> f64 {
    params.action_scale() * (M_IM / params.alpha).ln().sqrt()
}

/// `Re D = W T (I1 + I2)` with the fitted approximations of both integrals.
pub fn re_d_uniform(params: &GaussianParams) -> Result<f64> {
    let a = params.alpha;
    let s = (a * a + 1.0).sqrt() - 1.0;
    let denom = (1.0 + NU_RE * s).powi(2) - 1.0;
    let arg1 = a * a / denom;
    if !(denom > 0.0 && arg1 >= 1.0 && arg1.is_finite()) {
        return Err(Error::Domain {
            what: "alpha in the I1 logarithm",
            value: a,
        });
    }
    let i1 = s * (0.5 * arg1.ln()).sqrt();
    let arg2 = a * a / (MU_RE * (2.0 - MU_RE));
    if !(arg2 > 0.0 && arg2.is_finite()) {
        return Err(Error::Domain {
            what: "alpha in the I2 logarithm",
            value: a,
        });
    }
    let l2 = arg2.ln();
    let i2 = 0.5 * ((l2 * l2 + PI * PI).sqrt() + l2).sqrt();
    Ok(params.action_scale() * (i1 + i2))
}

/// `D(tau_0^+)` by contour quadrature of the splitting.
pub fn d_quadrature(params: &GaussianParams) -> Result<C64> {
    let model = make_gaussian(params.alpha, 1.0, 1.0)?;
    let (tau, _) = transition_points_closed(params.alpha, 0);
    Ok(params.action_scale() * ddp_integral(&model, tau)?.value)
}

/// How `D(tau_0^+)` is obtained for the probability formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionSource {
    Quadrature,
    Uniform,
    /// Small-alpha series with the given number of terms.
    Series(usize),
}

pub fn ddp_action(params: &GaussianParams, source: ActionSource) -> Result<C64> {
    match source {
        ActionSource::Quadrature => d_quadrature(params),
        ActionSource::Uniform => Ok(C64::new(re_d_uniform(params)?, im_d_uniform(params))),
        ActionSource::Series(n) => ddp_series_small_alpha(params, n),
    }
}

/// Two-point formula `4 exp(-2 Im D) sin^2(Re D)`.
pub fn probability_two_point(re_d: f64, im_d: f64) -> f64 {
    4.0 * (-2.0 * im_d).exp() * re_d.sin().powi(2)
}

/// All-points formula `sin^2(Re D) / cosh^2(Im D)`.
pub fn probability_all_points(re_d: f64, im_d: f64) -> f64 {
    (re_d.sin() / im_d.cosh()).powi(2)
}
