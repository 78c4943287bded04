use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ddpopt::compare::{print_report, run_compare};
use ddpopt::output::{sink, write_json, write_sweep_csv};
use ddpopt::points::{find_points, write_points_csv};
use ddpopt::{run_sweep, CliError, CliResult, Config, Family, GridSpec, MethodSet, Overrides};

#[derive(Parser)]
#[command(name = "ddpopt", version, about = "Exact and DDP transition probabilities for two-state pulses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep one model parameter and tabulate the probabilities.
    Sweep(Common),
    /// List transition points, prefactors and actions.
    Points(Common),
    /// Run the tolerance checks; exits with 1 on a violation.
    Compare(Common),
}

#[derive(Args)]
struct Common {
    /// TOML experiment file; flags below override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    #[arg(long = "omega0T")]
    omega0_t: Option<f64>,
    #[arg(long = "deltaT", allow_hyphen_values = true)]
    delta_t: Option<f64>,
    #[arg(long = "muT", allow_hyphen_values = true)]
    mu_t: Option<f64>,
    /// start:stop:count[:log]
    #[arg(long, value_parser = parse_grid)]
    grid: Option<GridSpec>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated: ode, ddp-generic, ddp-two-point, ddp-sech, series.
    #[arg(long, value_parser = parse_methods)]
    methods: Option<MethodSet>,
    /// Also write a JSON mirror next to the CSV file.
    #[arg(long)]
    json: bool,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn parse_methods(s: &str) -> Result<MethodSet, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

impl Common {
    fn config(&self) -> CliResult<Config> {
        let base = match &self.config {
            Some(p) => Config::load(p)?,
            None => Config::default(),
        };
        base.apply(&Overrides {
            family: self.family,
            omega0_t: self.omega0_t,
            delta_t: self.delta_t,
            mu_t: self.mu_t,
            grid: self.grid,
            out: self.out.clone(),
            methods: self.methods.clone(),
            json: self.json,
        })
    }
}

fn sweep(cfg: &Config) -> CliResult<()> {
    let rows = run_sweep(cfg)?;
    let prov = cfg.provenance();
    write_sweep_csv(sink(cfg.output.csv.as_deref())?, &prov, &rows)?;
    if let Some(p) = &cfg.output.json {
        write_json(sink(Some(p))?, &prov, &rows)?;
    }
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    if failed > 0 {
        eprintln!("{failed} of {} rows failed; see the error column", rows.len());
        return Err(CliError::Output(format!("{failed} rows failed")));
    }
    Ok(())
}

fn points(cfg: &Config) -> CliResult<()> {
    let report = find_points(cfg)?;
    let mut prov = cfg.provenance_for(None);
    prov.push(("model".to_string(), report.model.clone()));
    if report.no_points {
        eprintln!("no transition points");
    }
    write_points_csv(sink(cfg.output.csv.as_deref())?, &prov, &report)?;
    if let Some(p) = &cfg.output.json {
        write_json(sink(Some(p))?, &prov, &report.rows)?;
    }
    Ok(())
}

fn compare(cfg: &Config) -> CliResult<()> {
    let report = run_compare(cfg)?;
    print_report(&report);
    if let Some(p) = &cfg.output.json {
        write_json(sink(Some(p))?, &cfg.provenance(), &report.checks)?;
    }
    match report.failures() {
        0 => Ok(()),
        n => Err(CliError::Tolerance(n)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Sweep(c) => c.config().and_then(|cfg| sweep(&cfg)),
        Command::Points(c) => c.config().and_then(|cfg| points(&cfg)),
        Command::Compare(c) => c.config().and_then(|cfg| compare(&cfg)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ddpopt: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
