//! CSV and JSON writers. Floats use 17 significant digits so identical
//! inputs give byte-identical files.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::CliResult;
use crate::sweep::SweepRecord;

pub const SWEEP_COLUMNS: [&str; 10] = [
    "sweep_value",
    "p_adiabatic_ode",
    "p_diabatic_ode",
    "p_ddp_sech",
    "p_ddp_two_point",
    "p_ddp_generic",
    "ln_one_minus_p",
    "norm_drift",
    "n_points",
    "error",
];

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub fn write_header<W: Write>(w: &mut W, provenance: &[(String, String)]) -> CliResult<()> {
    for (k, v) in provenance {
        writeln!(w, "# {k} = {v}")?;
    }
    Ok(())
}

/// Writes `# key = value` comment lines, then the table.
pub fn write_sweep_csv<W: Write>(mut w: W, provenance: &[(String, String)], rows: &[SweepRecord]) -> CliResult<()> {
    write_header(&mut w, provenance)?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(SWEEP_COLUMNS)?;
    for r in rows {
        csv.write_record([
            fmt_f64(r.sweep_value),
            opt(r.p_adiabatic_ode),
            opt(r.p_diabatic_ode),
            opt(r.p_ddp_sech),
            opt(r.p_ddp_two_point),
            opt(r.p_ddp_generic),
            opt(r.ln_one_minus_p),
            opt(r.norm_drift),
            r.n_points.map(|n| n.to_string()).unwrap_or_default(),
            r.error.clone().unwrap_or_default(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonDoc<'a, T: Serialize> {
    provenance: serde_json::Map<String, serde_json::Value>,
    rows: &'a [T],
}

pub fn write_json<W: Write, T: Serialize>(mut w: W, provenance: &[(String, String)], rows: &[T]) -> CliResult<()> {
    let provenance = provenance
        .iter()
        .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
        .collect();
    serde_json::to_writer_pretty(&mut w, &JsonDoc { provenance, rows })?;
    writeln!(w)?;
    Ok(())
}

/// Opens `path`, or stdout when `path` is `None`.
pub fn sink(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}
