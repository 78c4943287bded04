//! Transition-point tables.

use std::io::Write;

use ddpopt_core::ddp::{
    ddp_integral, find_transition_points, gamma_factor, stokes_check, PointSign, StokesOptions,
};
use ddpopt_core::gaussian::transition_points_closed;
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::config::{Config, Family};
use crate::error::{CliError, CliResult};
use crate::output::{fmt_f64, write_header};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointSource {
    Closed,
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointRow {
    pub k: usize,
    pub sign: &'static str,
    pub re_t0: f64,
    pub im_t0: f64,
    pub source: PointSource,
    pub re_gamma: f64,
    pub im_gamma: f64,
    pub re_d: f64,
    pub im_d: f64,
    /// `exp(-2 Im D)`.
    pub p_single: f64,
    /// Stokes-line check, run for the lowest level only.
    pub stokes_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointsReport {
    pub model: String,
    pub rows: Vec<PointRow>,
    pub no_points: bool,
    pub warnings: Vec<String>,
}

pub const POINT_COLUMNS: [&str; 11] = [
    "k", "sign", "re_t0", "im_t0", "source", "re_gamma", "im_gamma", "re_d", "im_d", "p_single", "stokes_ok",
];

/// Locates the transition points of the configured model (swept parameter
/// taken from the config value) with their prefactors and actions.
pub fn find_points(cfg: &Config) -> CliResult<PointsReport> {
    cfg.model.validate(None)?;
    let model = cfg
        .model
        .build()?
        .ok_or_else(|| CliError::Config("the uncoupled pulse has no transition points".into()))?;
    if !model.complex_capable() {
        return Err(CliError::Config(format!(
            "model {} cannot be evaluated at complex time",
            model.label()
        )));
    }
    let max_level = cfg.numerics.max_level;
    let mut warnings = Vec::new();
    let located: Vec<(usize, PointSign, C64, PointSource)> = if cfg.model.family == Family::Gaussian {
        let alpha = cfg.model.omega0_t.unwrap_or_default() / cfg.model.delta_t.unwrap_or(1.0).abs();
        (0..=max_level)
            .flat_map(|k| {
                let (plus, minus) = transition_points_closed(alpha, k);
                [
                    (k, PointSign::Minus, minus, PointSource::Closed),
                    (k, PointSign::Plus, plus, PointSource::Closed),
                ]
            })
            .collect()
    } else {
        let region = cfg.model.search_region(&model, cfg.numerics.im_max);
        let search = find_transition_points(&model, &region, 64)?;
        warnings.extend(search.warnings);
        search
            .points
            .into_iter()
            .filter(|p| p.index_k <= max_level)
            .map(|p| (p.index_k, p.sign, p.t0, PointSource::Numeric))
            .collect()
    };

    let zeros: Vec<C64> = located.iter().map(|l| l.2).collect();
    let opts = StokesOptions::for_model(&model);
    let mut rows = Vec::with_capacity(located.len());
    for (k, sign, t0, source) in located {
        let d = ddp_integral(&model, t0)?.value;
        let g = gamma_factor(&model, t0)?.value;
        let stokes_ok = if k == 0 {
            let others: Vec<C64> = zeros.iter().copied().filter(|z| *z != t0).collect();
            Some(stokes_check(&model, t0, &others, &opts)?.ok)
        } else {
            None
        };
        rows.push(PointRow {
            k,
            sign: sign.symbol(),
            re_t0: t0.re,
            im_t0: t0.im,
            source,
            re_gamma: g.re,
            im_gamma: g.im,
            re_d: d.re,
            im_d: d.im,
            p_single: (-2.0 * d.im).exp(),
            stokes_ok,
        });
    }
    Ok(PointsReport {
        model: model.label().to_string(),
        no_points: rows.is_empty(),
        rows,
        warnings,
    })
}

pub fn write_points_csv<W: Write>(mut w: W, provenance: &[(String, String)], report: &PointsReport) -> CliResult<()> {
    write_header(&mut w, provenance)?;
    if report.no_points {
        writeln!(w, "# no transition points")?;
    }
    for msg in &report.warnings {
        writeln!(w, "# warning = {msg}")?;
    }
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(POINT_COLUMNS)?;
    for r in &report.rows {
        let source = match r.source {
            PointSource::Closed => "closed",
            PointSource::Numeric => "numeric",
        };
        csv.write_record([
            r.k.to_string(),
            r.sign.to_string(),
            fmt_f64(r.re_t0),
            fmt_f64(r.im_t0),
            source.to_string(),
            fmt_f64(r.re_gamma),
            fmt_f64(r.im_gamma),
            fmt_f64(r.re_d),
            fmt_f64(r.im_d),
            fmt_f64(r.p_single),
            r.stokes_ok.map(|b| b.to_string()).unwrap_or_default(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ModelSpec;

    fn cfg(model: ModelSpec) -> Config {
        Config {
            model,
            ..Config::default()
        }
    }

    #[test]
    fn gaussian_unit_alpha() {
        let mut m = ModelSpec::new(Family::Gaussian);
        m.omega0_t = Some(1.0);
        m.delta_t = Some(1.0);
        let mut c = cfg(m);
        c.numerics.max_level = 0;
        let r = find_points(&c).unwrap();
        assert_eq!(r.rows.len(), 2);
        let h = std::f64::consts::PI.sqrt() / 2.0;
        for row in &r.rows {
            assert!((row.re_t0.abs() - h).abs() < 1e-15 && (row.im_t0 - h).abs() < 1e-15);
            assert!((row.re_gamma.abs() - 1.0).abs() < 1e-8 && row.im_gamma.abs() < 1e-8);
        }
        assert_eq!(r.rows[0].sign, "-");
    }

    #[test]
    fn optimized_erf_reports_no_points() {
        let mut m = ModelSpec::new(Family::Erf);
        m.omega0_t = Some(4.0);
        let r = find_points(&cfg(m)).unwrap();
        assert!(r.no_points);
        let mut buf = Vec::new();
        write_points_csv(&mut buf, &[], &r).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# no transition points\n"));
        assert!(text.lines().any(|l| l.starts_with("k,sign,")));
    }
}
