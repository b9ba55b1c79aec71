use std::fmt::Write as _;
use std::ops::RangeInclusive;

use frc_core::io::{to_json_line, Format};
use frc_core::{check_feasibility, construct, verify, Parameters};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::SweepMode;

pub const THREADS_ENV: &str = "FRC_THREADS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub theta_range: RangeInclusive<u64>,
    /// Intersected with `1..=theta` at each grid point.
    pub d_range: RangeInclusive<u64>,
    pub n_cap: u64,
    pub mode: SweepMode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub theta: u64,
    pub d: u64,
    pub n: u64,
    /// `n * d / theta` when integral.
    pub rho: Option<u64>,
    pub feasible: bool,
    pub balance_ok: bool,
    pub capacity_ok: bool,
    pub omega: u64,
    /// Present only when a code was constructed and checked.
    pub verified: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub points: usize,
    pub feasible: usize,
    pub infeasible: usize,
    pub verified: usize,
    pub failures: usize,
}

impl SweepSpec {
    pub fn is_empty(&self) -> bool {
        self.theta_range.is_empty()
            || self.d_range.is_empty()
            || *self.d_range.start() > *self.theta_range.end()
            || self.n_cap == 0
    }

    /// Grid points in row order: theta, then d, then n.
    pub fn points(&self) -> Vec<(u64, u64, u64)> {
        let mut points = Vec::new();
        for theta in self.theta_range.clone() {
            let d_lo = (*self.d_range.start()).max(1);
            let d_hi = (*self.d_range.end()).min(theta);
            for d in d_lo..=d_hi {
                points.extend((1..=self.n_cap).map(|n| (theta, d, n)));
            }
        }
        points
    }
}

fn evaluate(theta: u64, d: u64, n: u64, mode: SweepMode) -> SweepRow {
    let product = n as u128 * d as u128;
    let rho = product.is_multiple_of(theta as u128).then(|| (product / theta as u128) as u64);
    // theta does not divide n*d at an unbalanced point, so any probe value of
    // rho fails the balance check; floor(n*d/theta) keeps the other columns
    let probe_rho = rho.unwrap_or(((product / theta as u128) as u64).max(1));
    let params = Parameters::new(n, d, theta, probe_rho).expect("grid values are positive");
    let report = check_feasibility(&params);
    let verified = match mode {
        SweepMode::ConstructAndVerify if report.feasible => {
            Some(construct(&params).map(|code| verify(&code).valid).unwrap_or(false))
        }
        _ => None,
    };
    SweepRow {
        theta,
        d,
        n,
        rho,
        feasible: report.feasible,
        balance_ok: report.balance_ok,
        capacity_ok: report.capacity_ok,
        omega: report.omega_pair.omega,
        verified,
    }
}

/// Evaluates every grid point, in parallel, returning rows in grid order.
pub fn run_sweep(spec: &SweepSpec) -> Vec<SweepRow> {
    spec.points()
        .into_par_iter()
        .map(|(theta, d, n)| evaluate(theta, d, n, spec.mode))
        .collect()
}

pub fn summarize(rows: &[SweepRow]) -> SweepSummary {
    let feasible = rows.iter().filter(|r| r.feasible).count();
    SweepSummary {
        points: rows.len(),
        feasible,
        infeasible: rows.len() - feasible,
        verified: rows.iter().filter(|r| r.verified == Some(true)).count(),
        failures: rows.iter().filter(|r| r.verified == Some(false)).count(),
    }
}

fn flag(value: Option<impl ToString>) -> String {
    value.map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub fn render_rows(rows: &[SweepRow], format: Format) -> String {
    let summary = summarize(rows);
    let mut out = String::new();
    match format {
        Format::Text => {
            for r in rows {
                writeln!(
                    out,
                    "theta={} d={} n={} rho={} feasible={} balance_ok={} capacity_ok={} omega={} verified={}",
                    r.theta,
                    r.d,
                    r.n,
                    flag(r.rho),
                    r.feasible,
                    r.balance_ok,
                    r.capacity_ok,
                    r.omega,
                    flag(r.verified)
                )
                .unwrap();
            }
            writeln!(
                out,
                "summary points={} feasible={} infeasible={} verified={} failures={}",
                summary.points, summary.feasible, summary.infeasible, summary.verified, summary.failures
            )
            .unwrap();
        }
        Format::Json => {
            for r in rows {
                out.push_str(&to_json_line(r));
            }
            #[derive(Serialize)]
            struct Tail<'a> {
                summary: &'a SweepSummary,
            }
            out.push_str(&to_json_line(&Tail { summary: &summary }));
        }
    }
    out
}
