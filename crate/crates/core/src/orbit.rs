use itertools::{Combinations, Itertools};

use crate::error::{Error, Result};
use crate::subset::{shift, Subset};

/// The class `[A] = {A, A+1, ..., A+(size-1)}` of a subset under cyclic
/// shifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicOrbit {
    /// `members[i] == A + i`, starting from the subset the orbit was built from.
    pub members: Vec<Subset>,
    pub size: usize,
    /// Lexicographically smallest member.
    pub canonical: Subset,
}

impl CyclicOrbit {
    /// Number of members containing `element`; always `d * size / theta`.
    pub fn occurrences(&self, element: u64) -> usize {
        self.members.iter().filter(|m| m.contains(element)).count()
    }
}

/// Builds `[A]`. The size is the least `s >= 1` with `A + s == A`.
pub fn orbit(a: &Subset) -> CyclicOrbit {
    let theta = a.theta() as i64;
    let mut members = vec![a.clone()];
    for j in 1..theta {
        let next = shift(a, j);
        if next == *a {
            break;
        }
        members.push(next);
    }
    let canonical = members.iter().min().cloned().expect("orbit is never empty");
    CyclicOrbit { size: members.len(), members, canonical }
}

/// Lazily yields the orbits of all `d`-subsets of `{1, ..., theta}`, each
/// exactly once, in ascending order of canonical representative.
pub struct Orbits {
    theta: u32,
    combinations: Combinations<std::ops::Range<u32>>,
    scratch: Vec<u32>,
}

impl Orbits {
    fn is_canonical(&mut self, residues: &[u32]) -> bool {
        let candidate = Subset::from_sorted_residues(self.theta, residues.to_vec());
        for j in 1..self.theta as i64 {
            candidate.shift_into(j, &mut self.scratch);
            if self.scratch.as_slice() < residues {
                return false;
            }
        }
        true
    }
}

impl Iterator for Orbits {
    type Item = CyclicOrbit;

    fn next(&mut self) -> Option<CyclicOrbit> {
        loop {
            let residues = self.combinations.next()?;
            if self.is_canonical(&residues) {
                return Some(orbit(&Subset::from_sorted_residues(self.theta, residues)));
            }
        }
    }
}

pub(crate) fn check_dimensions(d: u64, theta: u64) -> Result<u32> {
    if d == 0 {
        return Err(Error::NonPositive { name: "d" });
    }
    if theta == 0 {
        return Err(Error::NonPositive { name: "theta" });
    }
    if d > theta {
        return Err(Error::DegreeExceedsTheta { d, theta });
    }
    u32::try_from(theta).map_err(|_| Error::ThetaTooLarge(theta))
}

pub fn orbits(d: u64, theta: u64) -> Result<Orbits> {
    let theta32 = check_dimensions(d, theta)?;
    Ok(Orbits {
        theta: theta32,
        combinations: (0..theta32).combinations(d as usize),
        scratch: Vec::with_capacity(d as usize),
    })
}

pub fn enumerate_orbits(d: u64, theta: u64, limit: Option<usize>) -> Result<Vec<CyclicOrbit>> {
    let iter = orbits(d, theta)?;
    Ok(match limit {
        Some(limit) => iter.take(limit).collect(),
        None => iter.collect(),
    })
}
