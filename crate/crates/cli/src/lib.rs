//! Sweeps, transition-point tables and tolerance checks built on `ddpopt-core`.

pub mod compare;
pub mod config;
pub mod error;
pub mod grid;
pub mod methods;
pub mod nodes;
pub mod output;
pub mod points;
pub mod sweep;

pub use config::{Config, Family, ModelSpec, Overrides, Param};
pub use error::{CliError, CliResult};
pub use grid::GridSpec;
pub use methods::{Method, MethodSet};
pub use sweep::{run_sweep, SweepRecord};
