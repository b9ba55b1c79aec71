use num_integer::Integer;
use serde::Serialize;

use crate::binomial::binomial_at_least;
use crate::error::{Error, Result};

/// A problem instance: `n` subsets of size `d` over `{1, ..., theta}`, each
/// element repeated `rho` times.
///
/// `k`, the reconstruction degree of the storage system, is carried along
/// for reporting but plays no part in feasibility or construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Parameters {
    n: u64,
    d: u64,
    theta: u64,
    rho: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u64>,
}

impl Parameters {
    pub fn new(n: u64, d: u64, theta: u64, rho: u64) -> Result<Self> {
        for (name, value) in [("n", n), ("d", d), ("theta", theta), ("rho", rho)] {
            if value == 0 {
                return Err(Error::NonPositive { name });
            }
        }
        Ok(Parameters { n, d, theta, rho, k: None })
    }

    pub fn with_k(mut self, k: Option<u64>) -> Result<Self> {
        if k == Some(0) {
            return Err(Error::NonPositive { name: "k" });
        }
        self.k = k;
        Ok(self)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn theta(&self) -> u64 {
        self.theta
    }

    pub fn rho(&self) -> u64 {
        self.rho
    }

    pub fn k(&self) -> Option<u64> {
        self.k
    }
}

/// `omega` is the least positive integer with `d * omega = 0 (mod theta)`
/// and `a = d * omega / theta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct OmegaPair {
    pub omega: u64,
    pub a: u64,
}

pub fn smallest_multiplier(d: u64, theta: u64) -> OmegaPair {
    assert!(d >= 1 && theta >= 1, "smallest_multiplier needs positive d and theta");
    let g = d.gcd(&theta);
    OmegaPair { omega: theta / g, a: d / g }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    pub feasible: bool,
    /// `theta * rho == n * d`
    pub balance_ok: bool,
    /// `n <= C(theta, d)`
    pub capacity_ok: bool,
    pub omega_pair: OmegaPair,
    /// `gcd(d, theta)`, the number of tail families.
    pub g: u64,
}

/// Checks both existence conditions. Products are formed in `u128`.
pub fn check_feasibility(params: &Parameters) -> FeasibilityReport {
    let balance_ok =
        params.theta as u128 * params.rho as u128 == params.n as u128 * params.d as u128;
    let capacity_ok = binomial_at_least(params.theta, params.d, params.n);
    let omega_pair = smallest_multiplier(params.d, params.theta);
    FeasibilityReport {
        feasible: balance_ok && capacity_ok,
        balance_ok,
        capacity_ok,
        omega_pair,
        g: params.theta / omega_pair.omega,
    }
}
