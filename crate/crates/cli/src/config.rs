//! Experiment configuration: one TOML document per experiment, with command
//! line overrides applied on top. All times are in units of the pulse width
//! `T`, which is fixed to 1.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use ddpopt_core::ddp::SearchRegion;
use ddpopt_core::families::{
    make_erf, make_erf_deviated, make_gaussian, make_landau_zener, make_parametrized, ShapeFunction,
};
use ddpopt_core::gaussian::{ActionSource, GaussianParams};
use ddpopt_core::PulseModel;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::grid::{GridSpec, Spacing};
use crate::methods::MethodSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Gaussian,
    Erf,
    ErfMu,
    LandauZener,
    Parametrized,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Gaussian,
        Family::Erf,
        Family::ErfMu,
        Family::LandauZener,
        Family::Parametrized,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gaussian => "gaussian",
            Family::Erf => "erf",
            Family::ErfMu => "erf-mu",
            Family::LandauZener => "landau-zener",
            Family::Parametrized => "parametrized",
        }
    }

    pub fn params(self) -> &'static [Param] {
        match self {
            Family::Gaussian | Family::Parametrized => &[Param::Omega0T, Param::DeltaT],
            Family::Erf => &[Param::Omega0T],
            Family::ErfMu => &[Param::Omega0T, Param::MuT],
            Family::LandauZener => &[Param::Omega0T, Param::Rate],
        }
    }
}

impl FromStr for Family {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s.trim())
            .ok_or_else(|| CliError::Config(format!("unknown family `{s}`")))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Param {
    #[serde(rename = "omega0T")]
    Omega0T,
    #[serde(rename = "deltaT")]
    DeltaT,
    #[serde(rename = "muT")]
    MuT,
    /// Landau–Zener sweep rate `v T^2`.
    #[serde(rename = "rate")]
    Rate,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::Omega0T => "omega0T",
            Param::DeltaT => "deltaT",
            Param::MuT => "muT",
            Param::Rate => "rate",
        }
    }
}

impl FromStr for Param {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        [Param::Omega0T, Param::DeltaT, Param::MuT, Param::Rate]
            .into_iter()
            .find(|p| p.name() == s.trim())
            .ok_or_else(|| CliError::Config(format!("unknown parameter `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeName {
    #[default]
    Gaussian,
    Sech,
}

/// Family plus its dimensionless parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub family: Family,
    #[serde(rename = "omega0T", default, skip_serializing_if = "Option::is_none")]
    pub omega0_t: Option<f64>,
    #[serde(rename = "deltaT", default, skip_serializing_if = "Option::is_none")]
    pub delta_t: Option<f64>,
    #[serde(rename = "muT", default, skip_serializing_if = "Option::is_none")]
    pub mu_t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate: Option<f64>,
    /// Pulse shape of the parametrized family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<ShapeName>,
}

/// What the analytic Gaussian formulas can say about a model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Analytic {
    Gaussian(GaussianParams),
    /// No coupling: every probability vanishes.
    Uncoupled,
    NotApplicable,
}

impl ModelSpec {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            omega0_t: None,
            delta_t: None,
            mu_t: None,
            rate: None,
            shape: None,
        }
    }

    pub fn get(&self, p: Param) -> Option<f64> {
        match p {
            Param::Omega0T => self.omega0_t,
            Param::DeltaT => self.delta_t,
            Param::MuT => self.mu_t,
            Param::Rate => self.rate,
        }
    }

    pub fn set(&mut self, p: Param, v: f64) {
        let slot = match p {
            Param::Omega0T => &mut self.omega0_t,
            Param::DeltaT => &mut self.delta_t,
            Param::MuT => &mut self.mu_t,
            Param::Rate => &mut self.rate,
        };
        *slot = Some(v);
    }

    pub fn with(&self, p: Param, v: f64) -> Self {
        let mut s = self.clone();
        s.set(p, v);
        s
    }

    /// Switches family and drops the parameters the new family does not use.
    pub fn change_family(&mut self, family: Family) {
        self.family = family;
        for p in [Param::Omega0T, Param::DeltaT, Param::MuT, Param::Rate] {
            if !family.params().contains(&p) {
                match p {
                    Param::Omega0T => self.omega0_t = None,
                    Param::DeltaT => self.delta_t = None,
                    Param::MuT => self.mu_t = None,
                    Param::Rate => self.rate = None,
                }
            }
        }
        if family != Family::Parametrized {
            self.shape = None;
        }
    }

    /// Checks that the family's parameters are present and finite and that no
    /// foreign parameter is set. `swept` may be absent; it is filled per row.
    pub fn validate(&self, swept: Option<Param>) -> CliResult<()> {
        let own = self.family.params();
        for p in [Param::Omega0T, Param::DeltaT, Param::MuT, Param::Rate] {
            match (own.contains(&p), self.get(p)) {
                (false, Some(_)) => {
                    return Err(CliError::Config(format!(
                        "parameter {} does not belong to family {}",
                        p.name(),
                        self.family
                    )))
                }
                (true, None) if swept != Some(p) => {
                    return Err(CliError::Config(format!(
                        "family {} needs parameter {}",
                        self.family,
                        p.name()
                    )))
                }
                (true, Some(v)) if !v.is_finite() => {
                    return Err(CliError::Config(format!("parameter {} = {v} is not finite", p.name())))
                }
                _ => {}
            }
        }
        if self.shape.is_some() && self.family != Family::Parametrized {
            return Err(CliError::Config("shape only applies to the parametrized family".into()));
        }
        Ok(())
    }

    fn need(&self, p: Param) -> CliResult<f64> {
        self.get(p)
            .ok_or_else(|| CliError::Config(format!("family {} needs parameter {}", self.family, p.name())))
    }

    /// The pulse model, or `None` for a Gaussian pulse without coupling.
    pub fn build(&self) -> CliResult<Option<PulseModel>> {
        let w = self.need(Param::Omega0T)?;
        let m = match self.family {
            Family::Gaussian => {
                if w == 0.0 {
                    return Ok(None);
                }
                make_gaussian(w, self.need(Param::DeltaT)?, 1.0)?
            }
            Family::Erf => make_erf(w, 1.0)?,
            Family::ErfMu => make_erf_deviated(w, 1.0, self.need(Param::MuT)?)?,
            Family::LandauZener => make_landau_zener(w, self.need(Param::Rate)?)?,
            Family::Parametrized => {
                let shape = match self.shape.unwrap_or_default() {
                    ShapeName::Gaussian => ShapeFunction::gaussian_pulse(1.0),
                    ShapeName::Sech => ShapeFunction::sech_pulse(1.0),
                };
                make_parametrized(shape, w, self.need(Param::DeltaT)?)?
            }
        };
        Ok(Some(m))
    }

    /// Gaussian-model parameters: the model itself, or the adiabatic-basis
    /// image of the (undeviated) erf pulse.
    pub fn analytic(&self) -> CliResult<Analytic> {
        let w = self.need(Param::Omega0T)?;
        Ok(match self.family {
            Family::Gaussian if w == 0.0 => Analytic::Uncoupled,
            Family::Gaussian => Analytic::Gaussian(GaussianParams::new(w, self.need(Param::DeltaT)?.abs(), 1.0)?),
            Family::Erf => Analytic::Gaussian(GaussianParams::superadiabatic(w, 1.0)?),
            Family::ErfMu if self.need(Param::MuT)? == 0.0 => {
                Analytic::Gaussian(GaussianParams::superadiabatic(w, 1.0)?)
            }
            _ => Analytic::NotApplicable,
        })
    }

    /// Root-search rectangle. The erf families overflow beyond `Im t ~ 2T`.
    pub fn search_region(&self, model: &PulseModel, im_max: Option<f64>) -> SearchRegion {
        let r = SearchRegion::for_model(model);
        match (im_max, self.family) {
            (Some(h), _) => r.with_im_max(h),
            (None, Family::Erf | Family::ErfMu) => r.with_im_max(2.0 * model.time_scale()),
            _ => r,
        }
    }
}

impl Default for ModelSpec {
    fn default() -> Self {
        Self {
            family: Family::Gaussian,
            omega0_t: Some(1.0),
            delta_t: Some(3.0),
            mu_t: None,
            rate: None,
            shape: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default = "default_param")]
    pub parameter: Param,
    #[serde(default = "default_grid")]
    pub grid: GridSpec,
}

fn default_param() -> Param {
    Param::Omega0T
}

fn default_grid() -> GridSpec {
    GridSpec {
        start: 0.0,
        stop: 10.0,
        count: 200,
        spacing: Spacing::Linear,
    }
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            parameter: default_param(),
            grid: default_grid(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionKind {
    #[default]
    Quadrature,
    Uniform,
    Series,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Numerics {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Source of `D(tau_0^+)` for the Gaussian formulas.
    pub action: ActionKind,
    pub series_terms: usize,
    /// Highest level `k` included in the generic DDP sum.
    pub max_level: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub im_max: Option<f64>,
}

impl Default for Numerics {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            action: ActionKind::Quadrature,
            series_terms: 20,
            max_level: 1,
            im_max: None,
        }
    }
}

impl Numerics {
    pub fn action_source(&self, methods: &MethodSet) -> ActionSource {
        if methods.contains(crate::methods::Method::Series) {
            return ActionSource::Series(self.series_terms);
        }
        match self.action {
            ActionKind::Quadrature => ActionSource::Quadrature,
            ActionKind::Uniform => ActionSource::Uniform,
            ActionKind::Series => ActionSource::Series(self.series_terms),
        }
    }

    fn validate(&self) -> CliResult<()> {
        for (name, v) in [("rel_tol", self.rel_tol), ("abs_tol", self.abs_tol)] {
            if !(v > 0.0 && v <= 1e-3) {
                return Err(CliError::Config(format!("{name} = {v} is outside (0, 1e-3]")));
            }
        }
        if self.series_terms == 0 || self.series_terms > 1000 {
            return Err(CliError::Config(format!("series_terms = {} is outside [1, 1000]", self.series_terms)));
        }
        if self.max_level > 64 {
            return Err(CliError::Config(format!("max_level = {} exceeds 64", self.max_level)));
        }
        if let Some(h) = self.im_max {
            if !(h > 0.0 && h.is_finite()) {
                return Err(CliError::Config(format!("im_max = {h} must be positive")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CompareSpec {
    /// Largest relative offset between predicted and integrated minima.
    pub node_tolerance: f64,
    /// Largest `|P_sech - P_ode|` over the sweep, when set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_deviation: Option<f64>,
    pub norm_drift: f64,
    pub lz_tolerance: f64,
}

impl Default for CompareSpec {
    fn default() -> Self {
        Self {
            node_tolerance: 0.05,
            max_deviation: None,
            norm_drift: 1e-9,
            lz_tolerance: 1e-2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default = "MethodSet::default")]
    pub methods: MethodSet,
    #[serde(default)]
    pub model: ModelSpec,
    #[serde(default)]
    pub sweep: SweepSpec,
    #[serde(default)]
    pub numerics: Numerics,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub compare: CompareSpec,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            methods: MethodSet::default(),
            model: ModelSpec::default(),
            sweep: SweepSpec::default(),
            numerics: Numerics::default(),
            output: OutputSpec::default(),
            compare: CompareSpec::default(),
        }
    }
}

/// Command line values that replace config entries.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub family: Option<Family>,
    pub omega0_t: Option<f64>,
    pub delta_t: Option<f64>,
    pub mu_t: Option<f64>,
    pub grid: Option<GridSpec>,
    pub out: Option<PathBuf>,
    pub methods: Option<MethodSet>,
    pub json: bool,
}

impl Config {
    pub fn parse(text: &str) -> CliResult<Self> {
        let cfg: Config = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> CliResult<String> {
        toml::to_string(self).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn validate(&self) -> CliResult<()> {
        if !self.model.family.params().contains(&self.sweep.parameter) {
            return Err(CliError::Config(format!(
                "swept parameter {} does not belong to family {}",
                self.sweep.parameter.name(),
                self.model.family
            )));
        }
        self.sweep.grid.validate()?;
        self.model.validate(Some(self.sweep.parameter))?;
        self.numerics.validate()?;
        let c = &self.compare;
        for (name, v) in [
            ("node_tolerance", c.node_tolerance),
            ("norm_drift", c.norm_drift),
            ("lz_tolerance", c.lz_tolerance),
            ("max_deviation", c.max_deviation.unwrap_or(1.0)),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Config(format!("compare.{name} = {v} must be positive")));
            }
        }
        Ok(())
    }

    pub fn apply(mut self, o: &Overrides) -> CliResult<Self> {
        if let Some(f) = o.family {
            if f != self.model.family {
                self.model.change_family(f);
                if !f.params().contains(&self.sweep.parameter) {
                    self.sweep.parameter = Param::Omega0T;
                }
            }
        }
        if let Some(v) = o.omega0_t {
            self.model.omega0_t = Some(v);
        }
        if let Some(v) = o.delta_t {
            self.model.delta_t = Some(v);
        }
        if let Some(v) = o.mu_t {
            self.model.mu_t = Some(v);
        }
        if let Some(g) = o.grid {
            self.sweep.grid = g;
        }
        if let Some(m) = &o.methods {
            self.methods = m.clone();
        }
        if let Some(p) = &o.out {
            self.output.csv = Some(p.clone());
        }
        if o.json {
            let base = self.output.csv.clone().unwrap_or_else(|| PathBuf::from("ddpopt.csv"));
            self.output.json = Some(base.with_extension("json"));
        }
        self.validate()?;
        Ok(self)
    }

    /// `key = value` lines echoed into sweep output headers.
    pub fn provenance(&self) -> Vec<(String, String)> {
        self.provenance_for(Some(self.sweep.parameter))
    }

    /// Header lines with `swept` marked as such; `None` for single-model output.
    pub fn provenance_for(&self, swept: Option<Param>) -> Vec<(String, String)> {
        let mut v = vec![
            ("ddpopt".to_string(), env!("CARGO_PKG_VERSION").to_string()),
            ("family".to_string(), self.model.family.to_string()),
        ];
        for p in self.model.family.params() {
            let value = if Some(*p) == swept {
                "swept".to_string()
            } else {
                self.model.get(*p).map_or_else(|| "unset".to_string(), |x| format!("{x:?}"))
            };
            v.push((p.name().to_string(), value));
        }
        if self.model.family == Family::Parametrized {
            let shape = match self.model.shape.unwrap_or_default() {
                ShapeName::Gaussian => "gaussian",
                ShapeName::Sech => "sech",
            };
            v.push(("shape".to_string(), shape.to_string()));
        }
        let n = &self.numerics;
        v.push(("T".to_string(), "1".to_string()));
        if swept.is_some() {
            v.extend([
                ("sweep.parameter".to_string(), self.sweep.parameter.name().to_string()),
                ("sweep.grid".to_string(), self.sweep.grid.to_string()),
                ("methods".to_string(), self.methods.to_string()),
            ]);
        }
        v.extend([
            ("window".to_string(), "model default (+-6T; +-50/sqrt(rate) for landau-zener)".to_string()),
            ("rel_tol".to_string(), format!("{:?}", n.rel_tol)),
            ("abs_tol".to_string(), format!("{:?}", n.abs_tol)),
            ("action".to_string(), format!("{:?}", self.numerics.action_source(&self.methods))),
            ("max_level".to_string(), n.max_level.to_string()),
            (
                "im_max".to_string(),
                n.im_max.map_or_else(|| "family default".to_string(), |h| format!("{h:?}")),
            ),
        ]);
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG1: &str = r#"
methods = "ode,ddp-sech"

[model]
family = "gaussian"
deltaT = 3.0

[sweep]
parameter = "omega0T"
grid = "0:10:200"

[output]
csv = "fig1_delta3.csv"
"#;

    #[test]
    fn parses_sweep_document() {
        let c = Config::parse(FIG1).unwrap();
        assert_eq!(c.model.family, Family::Gaussian);
        assert_eq!(c.sweep.grid.count, 200);
        assert_eq!(c.numerics, Numerics::default());
        assert_eq!(c.output.csv.as_deref(), Some(Path::new("fig1_delta3.csv")));
    }

    #[test]
    fn round_trip() {
        let c = Config::parse(FIG1).unwrap();
        let again = Config::parse(&c.to_toml().unwrap()).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn rejects_foreign_parameters() {
        let bad = "[model]\nfamily = \"erf\"\nomega0T = 2.0\ndeltaT = 1.0\n";
        assert!(matches!(Config::parse(bad), Err(CliError::Config(_))));
        let bad = "[model]\nfamily = \"erf\"\n[sweep]\nparameter = \"muT\"\n";
        assert!(Config::parse(bad).is_err());
        assert!(Config::parse("[model]\nfamily = \"erf\"\ncolour = 1\n").is_err());
    }

    #[test]
    fn family_override_drops_foreign_parameters() {
        let c = Config::parse(FIG1).unwrap();
        let o = Overrides {
            family: Some(Family::ErfMu),
            mu_t: Some(1.0),
            ..Overrides::default()
        };
        let c = c.apply(&o).unwrap();
        assert_eq!(c.model.delta_t, None);
        assert_eq!(c.model.mu_t, Some(1.0));
    }

    #[test]
    fn erf_maps_to_superadiabatic_gaussian() {
        let mut m = ModelSpec::new(Family::Erf);
        m.omega0_t = Some(4.0);
        match m.analytic().unwrap() {
            Analytic::Gaussian(p) => assert!((p.alpha - std::f64::consts::PI.sqrt() / 4.0).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        let mut d = ModelSpec::new(Family::ErfMu);
        d.omega0_t = Some(4.0);
        d.mu_t = Some(1.0);
        assert_eq!(d.analytic().unwrap(), Analytic::NotApplicable);
    }
}
