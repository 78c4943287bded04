//! Comparison sets written as comma-separated method names.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Ode,
    DdpGeneric,
    DdpTwoPoint,
    DdpSech,
    /// Feed the two-point and sech formulas with the small-alpha series action.
    Series,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Ode,
        Method::DdpGeneric,
        Method::DdpTwoPoint,
        Method::DdpSech,
        Method::Series,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Ode => "ode",
            Method::DdpGeneric => "ddp-generic",
            Method::DdpTwoPoint => "ddp-two-point",
            Method::DdpSech => "ddp-sech",
            Method::Series => "series",
        }
    }
}

impl FromStr for Method {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| CliError::Config(format!("unknown method `{s}`")))
    }
}

/// Non-empty set of methods kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct MethodSet(Vec<Method>);

impl MethodSet {
    pub fn new(methods: impl IntoIterator<Item = Method>) -> Result<Self, CliError> {
        let mut v: Vec<Method> = methods.into_iter().collect();
        v.sort();
        v.dedup();
        if v.is_empty() {
            return Err(CliError::Config("method set is empty".into()));
        }
        Ok(Self(v))
    }

    pub fn contains(&self, m: Method) -> bool {
        self.0.contains(&m)
    }

    pub fn iter(&self) -> impl Iterator<Item = Method> + '_ {
        self.0.iter().copied()
    }
}

impl Default for MethodSet {
    fn default() -> Self {
        Self(vec![Method::Ode, Method::DdpSech])
    }
}

impl FromStr for MethodSet {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let methods = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()?;
        MethodSet::new(methods)
    }
}

impl fmt::Display for MethodSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(|m| m.name()).collect();
        write!(f, "{}", names.join(","))
    }
}

impl TryFrom<String> for MethodSet {
    type Error = CliError;

    fn try_from(s: String) -> Result<Self, CliError> {
        s.parse()
    }
}

impl From<MethodSet> for String {
    fn from(m: MethodSet) -> String {
        m.to_string()
    }
}
