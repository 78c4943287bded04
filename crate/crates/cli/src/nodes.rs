//! Minima of sampled curves and their pairing.

/// Interior local minima of `ys(xs)`, refined by a parabola through the
/// three bracketing samples.
pub fn local_minima(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    assert_eq!(xs.len(), ys.len());
    let mut out = Vec::new();
    for i in 1..xs.len().saturating_sub(1) {
        let (a, b, c) = (ys[i - 1], ys[i], ys[i + 1]);
        if !(b < a && b <= c) {
            continue;
        }
        let (x0, x1, x2) = (xs[i - 1], xs[i], xs[i + 1]);
        let den = (x0 - x1) * (x0 - x2) * (x1 - x2);
        let ca = (x2 * (b - a) + x1 * (a - c) + x0 * (c - b)) / den;
        let cb = (x2 * x2 * (a - b) + x1 * x1 * (c - a) + x0 * x0 * (b - c)) / den;
        let x = if ca > 0.0 { -cb / (2.0 * ca) } else { x1 };
        out.push(x.clamp(x0, x2));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeMatch {
    pub predicted: f64,
    pub observed: f64,
    /// `|predicted - observed| / |observed|`.
    pub relative: f64,
}

/// Pairs each predicted node with the nearest observed one.
pub fn match_nodes(predicted: &[f64], observed: &[f64]) -> Vec<NodeMatch> {
    predicted
        .iter()
        .filter_map(|&p| {
            observed
                .iter()
                .copied()
                .min_by(|a, b| (a - p).abs().total_cmp(&(b - p).abs()))
                .map(|o| NodeMatch {
                    predicted: p,
                    observed: o,
                    relative: (p - o).abs() / o.abs(),
                })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sine_squared_nodes() {
        let xs: Vec<f64> = (0..200).map(|i| 0.05 * i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| (1.3 * x).sin().powi(2)).collect();
        let m = local_minima(&xs, &ys);
        assert_eq!(m.len(), 4);
        for (k, x) in m.iter().enumerate() {
            let exact = (k + 1) as f64 * std::f64::consts::PI / 1.3;
            assert!((x - exact).abs() < 2e-3, "{x} vs {exact}");
        }
    }

    #[test]
    fn endpoints_are_not_minima() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys = [0.0, 1.0, 2.0, 3.0];
        assert!(local_minima(&xs, &ys).is_empty());
    }

    #[test]
    fn nearest_pairing() {
        let m = match_nodes(&[1.0, 3.0], &[1.1, 2.9, 7.0]);
        assert_eq!(m.len(), 2);
        assert_eq!(m[0].observed, 1.1);
        assert!((m[1].relative - 0.1 / 2.9).abs() < 1e-15);
        assert!(match_nodes(&[1.0], &[]).is_empty());
    }
}
