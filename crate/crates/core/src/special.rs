//! Error function of a complex argument.
//!
//! The pulse families built on `erf(t/T)` have to be continued into the
//! complex time plane to locate transition points and to integrate the
//! splitting along complex contours. Three regimes are used:
//!
//! * Maclaurin series near the origin and in the strip `|Re z| <= 1.5`
//!   (where the alternating terms do not cancel catastrophically),
//! * Laplace's continued fraction for `erfc` when `Re z > 1.5`, `|z| <= 8`,
//! * the asymptotic expansion of `erfc` for `|z| > 8`.
//!
//! Odd symmetry maps the left half-plane onto the right one.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

const TWO_OVER_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;
const SERIES_RADIUS: f64 = 2.0;
const SERIES_STRIP: f64 = 1.5;
const ASYMPTOTIC_RADIUS: f64 = 8.0;
/// Largest exponent passed to `exp` before the result is saturated.
const MAX_LOG: f64 = 709.0;

/// Value of `erf(z)` together with a saturation flag.
///
/// `saturated` is set when `|erf(z)|` would overflow `f64`; the value then
/// carries the correct phase with its modulus clamped near `e^709`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErfValue {
    pub value: C64,
    pub saturated: bool,
}

/// `erf(z)` for complex `z`. Overflowing values are saturated, see [`erf_checked`].
pub fn erf(z: C64) -> C64 {
    erf_checked(z).value
}

/// `erf(z)` with an explicit overflow flag.
pub fn erf_checked(z: C64) -> ErfValue {
    if z.im == 0.0 {
        return ErfValue {
            value: C64::new(erf_real(z.re), 0.0),
            saturated: false,
        };
    }
    if z.re < 0.0 {
        let r = erf_checked(-z);
        return ErfValue {
            value: -r.value,
            saturated: r.saturated,
        };
    }
    let r = z.norm();
    if r <= SERIES_RADIUS || (z.re <= SERIES_STRIP && r <= ASYMPTOTIC_RADIUS) {
        ErfValue {
            value: erf_series(z),
            saturated: false,
        }
    } else if r <= ASYMPTOTIC_RADIUS {
        one_minus(erfc_scaled_continued_fraction(z), z)
    } else {
        one_minus(erfc_scaled_asymptotic(z), z)
    }
}

/// Real axis: series for `|x| <= 1.5`, continued fraction up to 6, where
/// `erfc(6) ~ 2e-17` rounds `erf` to one.
pub fn erf_real(x: f64) -> f64 {
    let a = x.abs();
    let v = if a <= SERIES_STRIP {
        let z2 = -a * a;
        let mut term = a;
        let mut sum = a;
        for n in 1..200usize {
            term *= z2 / n as f64;
            let contrib = term / (2 * n + 1) as f64;
            sum += contrib;
            if contrib.abs() <= 1e-17 * sum.abs() {
                break;
            }
        }
        TWO_OVER_SQRT_PI * sum
    } else if a < 6.0 {
        1.0 - (-a * a).exp() * erfc_scaled_continued_fraction(C64::new(a, 0.0)).re
    } else {
        1.0
    };
    v.copysign(x)
}

/// Derivative `2/sqrt(pi) * exp(-z^2)`.
pub fn erf_derivative(z: C64) -> C64 {
    TWO_OVER_SQRT_PI * (-z * z).exp()
}

/// Maclaurin series `2/sqrt(pi) * sum (-1)^n z^(2n+1) / (n! (2n+1))`.
pub fn erf_series(z: C64) -> C64 {
    let z2 = -z * z;
    let mut term = z;
    let mut sum = z;
    let min_terms = (z.norm_sqr().ceil() as usize) + 2;
    for n in 1..4000usize {
        term *= z2 / n as f64;
        let contrib = term / (2 * n + 1) as f64;
        sum += contrib;
        if n >= min_terms && contrib.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    TWO_OVER_SQRT_PI * sum
}

/// `erfc(z) * exp(z^2)` by Laplace's continued fraction, `Re z > 0`.
///
/// `erfc(z) = exp(-z^2)/sqrt(pi) / (z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))`,
/// evaluated with the modified Lentz algorithm.
pub fn erfc_scaled_continued_fraction(z: C64) -> C64 {
    const TINY: f64 = 1e-300;
    let tiny = C64::new(TINY, 0.0);
    let mut f = z;
    if f.norm() == 0.0 {
        f = tiny;
    }
    let mut c = f;
    let mut d = C64::new(0.0, 0.0);
    for n in 1..20_000usize {
        let a = n as f64 * 0.5;
        d = z + a * d;
        if d.norm() == 0.0 {
            d = tiny;
        }
        c = z + a / c;
        if c.norm() == 0.0 {
            c = tiny;
        }
        d = d.inv();
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    1.0 / (PI.sqrt() * f)
}

/// `erfc(z) * exp(z^2)` from the asymptotic series, truncated at its smallest term.
pub fn erfc_scaled_asymptotic(z: C64) -> C64 {
    let inv_2z2 = 1.0 / (2.0 * z * z);
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut last = f64::INFINITY;
    for n in 1..200usize {
        let next = term * (-((2 * n - 1) as f64)) * inv_2z2;
        let mag = next.norm();
        if mag >= last || mag < 1e-17 {
            if mag < 1e-17 {
                sum += next;
            }
            break;
        }
        last = mag;
        term = next;
        sum += term;
    }
    sum / (z * PI.sqrt())
}

/// `1 - exp(-z^2) * scaled`, saturating when the exponential overflows.
fn one_minus(scaled: C64, z: C64) -> ErfValue {
    let exponent = -z * z;
    if exponent.re > MAX_LOG {
        let ln_mag = exponent.re + scaled.norm().ln();
        let phase = exponent.im + scaled.arg();
        let modulus = ln_mag.min(MAX_LOG).exp();
        return ErfValue {
            value: -C64::from_polar(modulus, phase),
            saturated: true,
        };
    }
    ErfValue {
        value: 1.0 - exponent.exp() * scaled,
        saturated: false,
    }
}
