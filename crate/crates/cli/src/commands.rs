use std::fs;
use std::io::{self, Write};
use std::path::Path;

use frc_core::io::{code_to_json, parse_code, render_code, render_report, to_json_line, Format, Report};
use frc_core::{check_feasibility, construct, orbits, verify, Error, Parameters};
use serde::Serialize;

use crate::args::{Cli, Command, ParamArgs};
use crate::sweep::{render_rows, run_sweep, summarize, SweepSpec, THREADS_ENV};
use crate::{EXIT_IO, EXIT_OK, EXIT_REJECTED, EXIT_USAGE};

pub fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<u8> {
    match cli.command {
        Command::Feasible { params, output } => feasible(params, output.format.into(), out, err),
        Command::Construct { params, out: path, output } => {
            construct_code(params, path.as_deref(), output.format.into(), out, err)
        }
        Command::Verify { path, output } => verify_file(&path, output.format.into(), out, err),
        Command::Orbits { d, theta, limit, output } => {
            list_orbits(d, theta, limit, output.format.into(), out, err)
        }
        Command::Sweep { theta_min, theta_max, d_min, d_max, n_cap, mode, output } => {
            let spec = SweepSpec {
                theta_range: theta_min..=theta_max,
                d_range: d_min..=d_max.unwrap_or(u64::MAX),
                n_cap,
                mode,
            };
            sweep(&spec, output.format.into(), out, err)
        }
    }
}

fn to_params(args: ParamArgs) -> Result<Parameters, Error> {
    Parameters::new(args.n, args.d, args.theta, args.rho)?.with_k(args.k)
}

pub fn feasible(
    args: ParamArgs,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<u8> {
    let params = match to_params(args) {
        Ok(p) => p,
        Err(e) => {
            writeln!(err, "frc: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let report = check_feasibility(&params);
    out.write_all(render_report(Report::Feasibility(&report), format).as_bytes())?;
    Ok(if report.feasible { EXIT_OK } else { EXIT_REJECTED })
}

/// Constructs, re-verifies, then writes. Nothing is written unless the code
/// verifies.
pub fn construct_code(
    args: ParamArgs,
    path: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<u8> {
    let params = match to_params(args) {
        Ok(p) => p,
        Err(e) => {
            writeln!(err, "frc: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let code = match construct(&params) {
        Ok(code) => code,
        Err(Error::InfeasibleParameters(report)) => {
            writeln!(err, "frc: no FR code exists for these parameters")?;
            out.write_all(render_report(Report::Feasibility(&report), format).as_bytes())?;
            return Ok(EXIT_REJECTED);
        }
        Err(e) => {
            writeln!(err, "frc: construction failed: {e}")?;
            return Ok(EXIT_REJECTED);
        }
    };
    let report = verify(&code);
    if !report.valid {
        writeln!(err, "frc: constructed code failed verification")?;
        out.write_all(render_report(Report::Verification(&report), format).as_bytes())?;
        return Ok(EXIT_REJECTED);
    }
    match path {
        Some(path) => {
            if let Err(e) = fs::write(path, render_code(&code)) {
                writeln!(err, "frc: cannot write {}: {e}", path.display())?;
                return Ok(EXIT_IO);
            }
            out.write_all(render_report(Report::Verification(&report), format).as_bytes())?;
        }
        None => match format {
            Format::Text => out.write_all(render_code(&code).as_bytes())?,
            Format::Json => out.write_all(code_to_json(&code).as_bytes())?,
        },
    }
    Ok(EXIT_OK)
}

pub fn verify_file(
    path: &Path,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<u8> {
    let bytes = match fs::read(path) {
        Ok(bytes) => bytes,
        Err(e) => {
            writeln!(err, "frc: cannot read {}: {e}", path.display())?;
            return Ok(EXIT_IO);
        }
    };
    let Ok(text) = String::from_utf8(bytes) else {
        writeln!(err, "frc: {}: not a text file", path.display())?;
        return Ok(EXIT_USAGE);
    };
    let doc = match parse_code(&text) {
        Ok(doc) => doc,
        Err(e) => {
            writeln!(err, "frc: {}: {e}", path.display())?;
            return Ok(EXIT_USAGE);
        }
    };
    let report = verify(&doc.into_code());
    out.write_all(render_report(Report::Verification(&report), format).as_bytes())?;
    Ok(if report.valid { EXIT_OK } else { EXIT_REJECTED })
}

#[derive(Serialize)]
struct OrbitLine {
    canonical: Vec<u64>,
    size: usize,
    per_element: u64,
}

/// Streams orbits as they are found, then a `total` line in text mode.
pub fn list_orbits(
    d: u64,
    theta: u64,
    limit: Option<u64>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<u8> {
    let iter = match orbits(d, theta) {
        Ok(iter) => iter,
        Err(e) => {
            writeln!(err, "frc: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let limit = limit.map_or(usize::MAX, |l| usize::try_from(l).unwrap_or(usize::MAX));
    let (mut count, mut subsets) = (0usize, 0usize);
    for orbit in iter.take(limit) {
        let per_element = d * orbit.size as u64 / theta;
        match format {
            Format::Text => writeln!(
                out,
                "canonical={{{}}} size={} per_element={per_element}",
                orbit.canonical.elements().map(|e| e.to_string()).collect::<Vec<_>>().join(","),
                orbit.size
            )?,
            Format::Json => out.write_all(
                to_json_line(&OrbitLine {
                    canonical: orbit.canonical.elements().collect(),
                    size: orbit.size,
                    per_element,
                })
                .as_bytes(),
            )?,
        }
        count += 1;
        subsets += orbit.size;
    }
    if format == Format::Text {
        writeln!(out, "total orbits={count} subsets={subsets}")?;
    }
    Ok(EXIT_OK)
}

fn thread_count() -> Result<Option<usize>, String> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("{THREADS_ENV} must be a positive integer, got `{v}`")),
        },
    }
}

pub fn sweep(
    spec: &SweepSpec,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<u8> {
    if spec.is_empty() {
        writeln!(err, "frc: sweep range is empty")?;
        return Ok(EXIT_USAGE);
    }
    let threads = match thread_count() {
        Ok(t) => t,
        Err(e) => {
            writeln!(err, "frc: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(io::Error::other)?;
    let rows = pool.install(|| run_sweep(spec));
    out.write_all(render_rows(&rows, format).as_bytes())?;
    Ok(if summarize(&rows).failures == 0 { EXIT_OK } else { EXIT_REJECTED })
}
