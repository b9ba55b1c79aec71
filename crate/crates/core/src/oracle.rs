//! Exhaustive backtracking search for FR codes, used as an oracle that is
//! independent of the orbit construction.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::code::FrCode;
use crate::construct::construct;
use crate::error::Error;
use crate::params::{check_feasibility, Parameters};
use crate::subset::Subset;
use crate::verify::verify;

/// Limits on the search, counted in expanded nodes so results are
/// reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 50_000_000 }
    }
}

/// Largest number of candidate subsets the search will enumerate.
pub const MAX_CANDIDATES: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),
    #[error("too many candidate subsets for theta={theta}, d={d}")]
    TooLarge { theta: u64, d: u64 },
}

struct Search<'a> {
    candidates: &'a [u64],
    /// `avail[i * theta + e]`: candidates at index >= i containing `e`.
    avail: Vec<u32>,
    theta: usize,
    d: u64,
    need: Vec<u64>,
    need_sum: u128,
    chosen: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
}

impl Search<'_> {
    fn avail(&self, i: usize, e: usize) -> u64 {
        self.avail[i * self.theta + e] as u64
    }

    fn demand_fits(&self, start: usize, slots: u64) -> bool {
        (0..self.theta).all(|e| self.need[e] <= slots && self.need[e] <= self.avail(start, e))
    }

    fn descend(&mut self, start: usize, slots: u64) -> Result<bool, SearchError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(SearchError::BudgetExceeded(self.max_nodes));
        }
        if slots == 0 {
            return Ok(self.need_sum == 0);
        }
        // every remaining set supplies exactly d occurrences
        if self.need_sum != slots as u128 * self.d as u128 {
            return Ok(false);
        }
        if ((self.candidates.len() - start) as u64) < slots {
            return Ok(false);
        }
        let last = self.candidates.len() - slots as usize;
        for i in start..=last {
            // availability only shrinks as i grows
            if !self.demand_fits(i, slots) {
                break;
            }
            let mask = self.candidates[i];
            if (0..self.theta).any(|e| mask >> e & 1 == 1 && self.need[e] == 0) {
                continue;
            }
            self.apply(mask, false);
            self.chosen.push(i);
            if self.descend(i + 1, slots - 1)? {
                return Ok(true);
            }
            self.chosen.pop();
            self.apply(mask, true);
        }
        Ok(false)
    }

    fn apply(&mut self, mask: u64, undo: bool) {
        for e in 0..self.theta {
            if mask >> e & 1 == 1 {
                if undo {
                    self.need[e] += 1;
                } else {
                    self.need[e] -= 1;
                }
            }
        }
        if undo {
            self.need_sum += self.d as u128;
        } else {
            self.need_sum -= self.d as u128;
        }
    }
}

/// Searches for `n` distinct `d`-subsets of `{1, ..., theta}` covering every
/// element exactly `rho` times.
///
/// Subsets are tried in lexicographic order and each branch only extends
/// with subsets after the last one chosen. A branch is cut when some
/// element still needs more occurrences than the remaining slots or the
/// remaining candidates can give it, or when the total remaining need
/// differs from `d` times the remaining slots.
///
/// `Ok(None)` means no code exists; running out of budget is an error.
pub fn exhaustive_search(
    params: &Parameters,
    budget: SearchBudget,
) -> Result<Option<FrCode>, SearchError> {
    let (n, d, theta, rho) = (params.n(), params.d(), params.theta(), params.rho());
    if d > theta {
        return Ok(None);
    }
    if theta > 64 {
        return Err(SearchError::TooLarge { theta, d });
    }
    let theta_usize = theta as usize;
    let candidates: Vec<u64> = (0..theta_usize)
        .combinations(d as usize)
        .take(MAX_CANDIDATES + 1)
        .map(|c| c.iter().fold(0u64, |m, &e| m | 1 << e))
        .collect();
    if candidates.len() > MAX_CANDIDATES {
        return Err(SearchError::TooLarge { theta, d });
    }
    if n > candidates.len() as u64 {
        return Ok(None);
    }

    let mut avail = vec![0u32; (candidates.len() + 1) * theta_usize];
    for i in (0..candidates.len()).rev() {
        for e in 0..theta_usize {
            avail[i * theta_usize + e] =
                avail[(i + 1) * theta_usize + e] + (candidates[i] >> e & 1) as u32;
        }
    }

    let mut search = Search {
        candidates: &candidates,
        avail,
        theta: theta_usize,
        d,
        need: vec![rho; theta_usize],
        need_sum: theta as u128 * rho as u128,
        chosen: Vec::new(),
        nodes: 0,
        max_nodes: budget.max_nodes,
    };
    if !search.descend(0, n)? {
        return Ok(None);
    }

    let sets = search
        .chosen
        .iter()
        .map(|&i| {
            let mask = candidates[i];
            Subset::new(theta as u32, (0..theta).filter(|e| mask >> e & 1 == 1).map(|e| e + 1))
                .expect("candidate elements lie in range")
        })
        .collect();
    Ok(Some(FrCode::new(*params, sets).expect("theta fits")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DiscrepancyKind {
    /// Feasible, but the constructor returned an error.
    ConstructFailed(String),
    /// Feasible, constructor returned a code the verifier rejects.
    ConstructInvalid,
    /// Infeasible, but the constructor produced something.
    ConstructAccepted,
    /// The search found a code for infeasible parameters or none for
    /// feasible ones.
    OracleDisagrees { feasible: bool, oracle_found: bool },
    /// The search returned a code the verifier rejects.
    OracleInvalid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub params: Parameters,
    pub kind: DiscrepancyKind,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CrosscheckOutcome {
    pub points: usize,
    pub feasible_points: usize,
    pub discrepancies: Vec<Discrepancy>,
    /// Points where the search ran out of budget.
    pub skipped: Vec<Parameters>,
}

/// Every `(theta, d, n, rho)` with `theta <= theta_max`, `d <= theta`,
/// `n <= n_cap` and `rho = n * d / theta` integral, in lexicographic order.
pub fn crosscheck_points(theta_max: u64, n_cap: u64) -> Vec<Parameters> {
    let mut points = Vec::new();
    for theta in 1..=theta_max {
        for d in 1..=theta {
            for n in 1..=n_cap {
                if (n * d) % theta == 0 {
                    points.push(Parameters::new(n, d, theta, n * d / theta).expect("positive"));
                }
            }
        }
    }
    points
}

/// Checks one point three ways: the feasibility conditions, the
/// constructor plus verifier, and the exhaustive search.
pub fn crosscheck_point(
    params: &Parameters,
    budget: SearchBudget,
) -> (Vec<Discrepancy>, Option<Parameters>) {
    let mut found = Vec::new();
    let mut report = |kind| found.push(Discrepancy { params: *params, kind });
    let feasible = check_feasibility(params).feasible;
    match (feasible, construct(params)) {
        (true, Ok(code)) if !verify(&code).valid => report(DiscrepancyKind::ConstructInvalid),
        (true, Ok(_)) => {}
        (true, Err(e)) => report(DiscrepancyKind::ConstructFailed(e.to_string())),
        (false, Err(Error::InfeasibleParameters(_))) => {}
        (false, Err(e)) => report(DiscrepancyKind::ConstructFailed(e.to_string())),
        (false, Ok(_)) => report(DiscrepancyKind::ConstructAccepted),
    }
    let mut skipped = None;
    match exhaustive_search(params, budget) {
        Ok(result) => {
            if let Some(code) = &result {
                if !verify(code).valid {
                    report(DiscrepancyKind::OracleInvalid);
                }
            }
            if result.is_some() != feasible {
                report(DiscrepancyKind::OracleDisagrees { feasible, oracle_found: result.is_some() });
            }
        }
        Err(_) => skipped = Some(*params),
    }
    (found, skipped)
}

/// Runs [`crosscheck_point`] over [`crosscheck_points`] in parallel.
/// Results keep the grid order.
pub fn theorem_crosscheck(theta_max: u64, n_cap: u64, budget: SearchBudget) -> CrosscheckOutcome {
    let points = crosscheck_points(theta_max, n_cap);
    let results: Vec<_> = points.par_iter().map(|p| crosscheck_point(p, budget)).collect();
    let mut outcome = CrosscheckOutcome {
        points: points.len(),
        feasible_points: points.iter().filter(|p| check_feasibility(p).feasible).count(),
        ..Default::default()
    };
    for (found, skipped) in results {
        outcome.discrepancies.extend(found);
        outcome.skipped.extend(skipped);
    }
    outcome
}
