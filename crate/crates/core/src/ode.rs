//! Dormand–Prince 8(5,3) integrator for the two-component complex state.
//!
//! Tableau and the combined 5th/3rd-order error estimate follow Hairer,
//! Nørsett & Wanner (the `DOP853` code); no dense output is produced.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub type State = [C64; 2];

#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub rel: f64,
    pub abs: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
    /// Sum of the absolute local error estimates of accepted steps.
    pub error_sum: f64,
}

const MAX_STEPS: usize = 5_000_000;
const SAFETY: f64 = 0.9;
const MIN_SCALE: f64 = 0.333;
const MAX_SCALE: f64 = 6.0;
const EXPONENT: f64 = 1.0 / 8.0;

const C2: f64 = 0.526001519587677318785587544488e-01;
const C3: f64 = 0.789002279381515978178381316732e-01;
const C4: f64 = 0.118350341907227396726757197510e+00;
const C5: f64 = 0.281649658092772603273242802490e+00;
const C6: f64 = 0.333333333333333333333333333333e+00;
const C7: f64 = 0.25e+00;
const C8: f64 = 0.307692307692307692307692307692e+00;
const C9: f64 = 0.651282051282051282051282051282e+00;
const C10: f64 = 0.6e+00;
const C11: f64 = 0.857142857142857142857142857142e+00;
const B1: f64 = 5.42937341165687622380535766363e-2;
const B6: f64 = 4.45031289275240888144113950566e0;
const B7: f64 = 1.89151789931450038304281599044e0;
const B8: f64 = -5.8012039600105847814672114227e0;
const B9: f64 = 3.1116436695781989440891606237e-1;
const B10: f64 = -1.52160949662516078556178806805e-1;
const B11: f64 = 2.01365400804030348374776537501e-1;
const B12: f64 = 4.47106157277725905176885569043e-2;
const BHH1: f64 = 0.244094488188976377952755905512e+00;
const BHH2: f64 = 0.733846688281611857341361741547e+00;
const BHH3: f64 = 0.220588235294117647058823529412e-01;
const ER1: f64 = 0.1312004499419488073250102996e-01;
const ER6: f64 = -0.1225156446376204440720569753e+01;
const ER7: f64 = -0.4957589496572501915214079952e+00;
const ER8: f64 = 0.1664377182454986536961530415e+01;
const ER9: f64 = -0.3503288487499736816886487290e+00;
const ER10: f64 = 0.3341791187130174790297318841e+00;
const ER11: f64 = 0.8192320648511571246570742613e-01;
const ER12: f64 = -0.2235530786388629525884427845e-01;
const A21: f64 = 5.26001519587677318785587544488e-2;
const A31: f64 = 1.97250569845378994544595329183e-2;
const A32: f64 = 5.91751709536136983633785987549e-2;
const A41: f64 = 2.95875854768068491816892993775e-2;
const A43: f64 = 8.87627564304205475450678981324e-2;
const A51: f64 = 2.41365134159266685502369798665e-1;
const A53: f64 = -8.84549479328286085344864962717e-1;
const A54: f64 = 9.24834003261792003115737966543e-1;
const A61: f64 = 3.7037037037037037037037037037e-2;
const A64: f64 = 1.70828608729473871279604482173e-1;
const A65: f64 = 1.25467687566822425016691814123e-1;
const A71: f64 = 3.7109375e-2;
const A74: f64 = 1.70252211019544039314978060272e-1;
const A75: f64 = 6.02165389804559606850219397283e-2;
const A76: f64 = -1.7578125e-2;
const A81: f64 = 3.70920001185047927108779319836e-2;
const A84: f64 = 1.70383925712239993810214054705e-1;
const A85: f64 = 1.07262030446373284651809199168e-1;
const A86: f64 = -1.53194377486244017527936158236e-2;
const A87: f64 = 8.27378916381402288758473766002e-3;
const A91: f64 = 6.24110958716075717114429577812e-1;
const A94: f64 = -3.36089262944694129406857109825e0;
const A95: f64 = -8.68219346841726006818189891453e-1;
const A96: f64 = 2.75920996994467083049415600797e1;
const A97: f64 = 2.01540675504778934086186788979e1;
const A98: f64 = -4.34898841810699588477366255144e1;
const A101: f64 = 4.77662536438264365890433908527e-1;
const A104: f64 = -2.48811461997166764192642586468e0;
const A105: f64 = -5.90290826836842996371446475743e-1;
const A106: f64 = 2.12300514481811942347288949897e1;
const A107: f64 = 1.52792336328824235832596922938e1;
const A108: f64 = -3.32882109689848629194453265587e1;
const A109: f64 = -2.03312017085086261358222928593e-2;
const A111: f64 = -9.3714243008598732571704021658e-1;
const A114: f64 = 5.18637242884406370830023853209e0;
const A115: f64 = 1.09143734899672957818500254654e0;
const A116: f64 = -8.14978701074692612513997267357e0;
const A117: f64 = -1.85200656599969598641566180701e1;
const A118: f64 = 2.27394870993505042818970056734e1;
const A119: f64 = 2.49360555267965238987089396762e0;
const A1110: f64 = -3.0467644718982195003823669022e0;
const A121: f64 = 2.27331014751653820792359768449e0;
const A124: f64 = -1.05344954667372501984066689879e1;
const A125: f64 = -2.00087205822486249909675718444e0;
const A126: f64 = -1.79589318631187989172765950534e1;
const A127: f64 = 2.79488845294199600508499808837e1;
const A128: f64 = -2.85899827713502369474065508674e0;
const A129: f64 = -8.87285693353062954433549289258e0;
const A1210: f64 = 1.23605671757943030647266201528e1;
const A1211: f64 = 6.43392746015763530355970484046e-1;

#[inline]
fn comb(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for i in 0..2 {
        let mut acc = C64::new(0.0, 0.0);
        for (w, k) in terms {
            acc += *w * k[i];
        }
        out[i] += h * acc;
    }
    out
}

#[inline]
fn lin(terms: &[(f64, &State)]) -> State {
    let mut out = [C64::new(0.0, 0.0); 2];
    for i in 0..2 {
        for (w, k) in terms {
            out[i] += *w * k[i];
        }
    }
    out
}

/// Integrates `dy/dt = f(t, y)` from `t0` to `t1` (either direction).
pub fn integrate<F>(f: F, t0: f64, y0: State, t1: f64, tol: Tolerances) -> Result<(State, StepStats)>
where
    F: Fn(f64, &State) -> State,
{
    let mut stats = StepStats::default();
    if t1 == t0 {
        return Ok((y0, stats));
    }
    let dir = (t1 - t0).signum();
    let span = (t1 - t0).abs();
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    stats.evaluations += 1;

    let scale = |y: &State, yn: &State, i: usize, part: usize| {
        let (a, b) = if part == 0 { (y[i].re, yn[i].re) } else { (y[i].im, yn[i].im) };
        tol.abs + tol.rel * a.abs().max(b.abs())
    };

    // Initial step from the ratio of state and derivative norms.
    let mut d0 = 0.0;
    let mut d1 = 0.0;
    for i in 0..2 {
        for part in 0..2 {
            let sk = scale(&y, &y, i, part);
            let (yv, fv) = if part == 0 { (y[i].re, k1[i].re) } else { (y[i].im, k1[i].im) };
            d0 += (yv / sk).powi(2);
            d1 += (fv / sk).powi(2);
        }
    }
    let (d0, d1) = ((d0 / 4.0).sqrt(), (d1 / 4.0).sqrt());
    let mut h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h = h.min(span) * dir;

    let mut reject = false;
    loop {
        if stats.accepted + stats.rejected >= MAX_STEPS {
            return Err(Error::TooManySteps(MAX_STEPS));
        }
        let last = (t + h - t1) * dir >= 0.0;
        if last {
            h = t1 - t;
        }
        let k2 = f(t + C2 * h, &comb(&y, h, &[(A21, &k1)]));
        let k3 = f(t + C3 * h, &comb(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(t + C4 * h, &comb(&y, h, &[(A41, &k1), (A43, &k3)]));
        let k5 = f(t + C5 * h, &comb(&y, h, &[(A51, &k1), (A53, &k3), (A54, &k4)]));
        let k6 = f(t + C6 * h, &comb(&y, h, &[(A61, &k1), (A64, &k4), (A65, &k5)]));
        let k7 = f(
            t + C7 * h,
            &comb(&y, h, &[(A71, &k1), (A74, &k4), (A75, &k5), (A76, &k6)]),
        );
        let k8 = f(
            t + C8 * h,
            &comb(&y, h, &[(A81, &k1), (A84, &k4), (A85, &k5), (A86, &k6), (A87, &k7)]),
        );
        let k9 = f(
            t + C9 * h,
            &comb(
                &y,
                h,
                &[(A91, &k1), (A94, &k4), (A95, &k5), (A96, &k6), (A97, &k7), (A98, &k8)],
            ),
        );
        let k10 = f(
            t + C10 * h,
            &comb(
                &y,
                h,
                &[
                    (A101, &k1),
                    (A104, &k4),
                    (A105, &k5),
                    (A106, &k6),
                    (A107, &k7),
                    (A108, &k8),
                    (A109, &k9),
                ],
            ),
        );
        let k11 = f(
            t + C11 * h,
            &comb(
                &y,
                h,
                &[
                    (A111, &k1),
                    (A114, &k4),
                    (A115, &k5),
                    (A116, &k6),
                    (A117, &k7),
                    (A118, &k8),
                    (A119, &k9),
                    (A1110, &k10),
                ],
            ),
        );
        let k12 = f(
            t + h,
            &comb(
                &y,
                h,
                &[
                    (A121, &k1),
                    (A124, &k4),
                    (A125, &k5),
                    (A126, &k6),
                    (A127, &k7),
                    (A128, &k8),
                    (A129, &k9),
                    (A1210, &k10),
                    (A1211, &k11),
                ],
            ),
        );
        stats.evaluations += 11;
        let sum = lin(&[
            (B1, &k1),
            (B6, &k6),
            (B7, &k7),
            (B8, &k8),
            (B9, &k9),
            (B10, &k10),
            (B11, &k11),
            (B12, &k12),
        ]);
        let y_new = comb(&y, h, &[(1.0, &sum)]);
        let e3 = lin(&[(1.0, &sum), (-BHH1, &k1), (-BHH2, &k9), (-BHH3, &k12)]);
        let e5 = lin(&[
            (ER1, &k1),
            (ER6, &k6),
            (ER7, &k7),
            (ER8, &k8),
            (ER9, &k9),
            (ER10, &k10),
            (ER11, &k11),
            (ER12, &k12),
        ]);
        let mut err5 = 0.0;
        let mut err3 = 0.0;
        for i in 0..2 {
            for part in 0..2 {
                let sk = scale(&y, &y_new, i, part);
                let (a, b) = if part == 0 { (e5[i].re, e3[i].re) } else { (e5[i].im, e3[i].im) };
                err5 += (a / sk).powi(2);
                err3 += (b / sk).powi(2);
            }
        }
        let mut deno = err5 + 0.01 * err3;
        if deno <= 0.0 {
            deno = 1.0;
        }
        let err = h.abs() * err5 * (1.0 / (4.0 * deno)).sqrt();
        if !err.is_finite() {
            return Err(Error::NonFinite { t });
        }

        if err <= 1.0 {
            let mut fac = if err == 0.0 {
                MAX_SCALE
            } else {
                (SAFETY * err.powf(-EXPONENT)).clamp(MIN_SCALE, MAX_SCALE)
            };
            if reject {
                fac = fac.min(1.0);
            }
            reject = false;
            stats.accepted += 1;
            let ymag = y_new[0].norm().max(y_new[1].norm());
            stats.error_sum += err * (tol.abs + tol.rel * ymag);
            t = if last { t1 } else { t + h };
            y = y_new;
            if last {
                return Ok((y, stats));
            }
            k1 = f(t, &y);
            stats.evaluations += 1;
            h *= fac;
        } else {
            reject = true;
            stats.rejected += 1;
            h *= MIN_SCALE.max(SAFETY * err.powf(-EXPONENT));
            if h.abs() <= 4.0 * f64::EPSILON * t.abs().max(span) {
                return Err(Error::StepUnderflow { t, h });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol(rel: f64) -> Tolerances {
        Tolerances { rel, abs: rel * 1e-2 }
    }

    #[test]
    fn harmonic_phase_is_exact() {
        // y' = -i w y  =>  y(t) = exp(-i w t) y(0)
        let w = 3.0;
        let f = |_t: f64, y: &State| [C64::new(0.0, -w) * y[0], C64::new(0.0, w) * y[1]];
        let y0 = [C64::new(1.0, 0.0), C64::new(0.0, 1.0)];
        let (y, stats) = integrate(f, 0.0, y0, 10.0, tol(1e-12)).unwrap();
        let e0 = C64::from_polar(1.0, -w * 10.0);
        assert!((y[0] - e0).norm() < 1e-10, "{:?}", y);
        assert!((y[1] - C64::new(0.0, 1.0) * e0.conj()).norm() < 1e-10);
        assert!(stats.accepted > 10);
    }

    #[test]
    fn runs_backwards() {
        let f = |t: f64, y: &State| [y[0] * t, y[1] * (-1.0)];
        let y0 = [C64::new(1.0, 0.0), C64::new(1.0, 0.0)];
        let (y, _) = integrate(f, 1.0, y0, -1.0, tol(1e-12)).unwrap();
        // y0 = exp((t^2 - 1)/2) -> 1 at t=-1; y1 = exp(-(t - 1)) -> e^2
        assert!((y[0] - 1.0).norm() < 1e-10);
        assert!((y[1] - 2f64.exp()).norm() < 1e-9);
    }

    #[test]
    fn eighth_order_convergence_on_nonlinear_problem() {
        // Logistic-like complex problem with known solution y = 1/(1 + t) along the real axis.
        let f = |_t: f64, y: &State| [-y[0] * y[0], -y[1] * y[1]];
        let y0 = [C64::new(1.0, 0.0), C64::new(1.0, 0.0)];
        let (y, _) = integrate(f, 0.0, y0, 4.0, tol(1e-13)).unwrap();
        assert!((y[0] - 0.2).norm() < 1e-12);
    }
}
