//! Adaptive Gauss–Kronrod (7/15) quadrature of complex-valued integrands.

use num_complex::Complex64 as C64;
use std::collections::BinaryHeap;
use std::cmp::Ordering;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub struct Integral {
    pub value: C64,
    pub error: f64,
    pub intervals: usize,
}

struct Piece {
    a: f64,
    b: f64,
    value: C64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64) -> (C64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

/// Integrates `f` over `[a, b]` to `max(abs_tol, rel_tol * |I|)`.
pub fn integrate<F>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<Integral>
where
    F: Fn(f64) -> C64,
{
    const INITIAL: usize = 8;
    const MAX_INTERVALS: usize = 4000;
    let mut heap = BinaryHeap::new();
    let mut total = C64::new(0.0, 0.0);
    let mut err = 0.0;
    for i in 0..INITIAL {
        let lo = a + (b - a) * i as f64 / INITIAL as f64;
        let hi = a + (b - a) * (i + 1) as f64 / INITIAL as f64;
        let (value, error) = kronrod(&f, lo, hi);
        total += value;
        err += error;
        heap.push(Piece { a: lo, b: hi, value, error });
    }
    while err > abs_tol.max(rel_tol * total.norm()) {
        if heap.len() >= MAX_INTERVALS || !err.is_finite() {
            return Err(Error::QuadratureTolerance { estimate: err });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = kronrod(&f, worst.a, mid);
        let (v2, e2) = kronrod(&f, mid, worst.b);
        total += v1 + v2 - worst.value;
        err += e1 + e2 - worst.error;
        heap.push(Piece { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Piece { a: mid, b: worst.b, value: v2, error: e2 });
    }
    // Re-sum to shed the drift of the running totals.
    let value = heap.iter().map(|p| p.value).sum();
    let error = heap.iter().map(|p| p.error).sum();
    Ok(Integral {
        value,
        error,
        intervals: heap.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_oscillatory_integrands() {
        let r = integrate(|x| C64::new(x * x, x.sin()), 0.0, 2.0, 1e-13, 0.0).unwrap();
        assert!((r.value.re - 8.0 / 3.0).abs() < 1e-13);
        assert!((r.value.im - (1.0 - 2f64.cos())).abs() < 1e-13);
        let r = integrate(|x| C64::from_polar(1.0, 40.0 * x), 0.0, 1.0, 1e-12, 0.0).unwrap();
        let exact = (C64::from_polar(1.0, 40.0) - 1.0) / C64::new(0.0, 40.0);
        assert!((r.value - exact).norm() < 1e-12);
    }

    #[test]
    fn endpoint_square_root() {
        let r = integrate(|x| C64::new((1.0 - x).sqrt(), 0.0), 0.0, 1.0, 1e-10, 0.0).unwrap();
        assert!((r.value.re - 2.0 / 3.0).abs() < 1e-10);
    }
}
