use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::orbit::{check_dimensions, orbit};
use crate::params::smallest_multiplier;
use crate::subset::{shift, Subset};

/// The orbit of `S = {1, ..., d}` split into `g = gcd(d, theta)` families.
///
/// Family `j` is `{S + m*d + j : m = 0..omega}`. Each family covers every
/// element exactly `a` times, so any number of whole families is itself
/// balanced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailFamily {
    pub base: Subset,
    pub families: Vec<Vec<Subset>>,
    pub omega: u64,
    pub a: u64,
    pub g: u64,
}

/// Builds the tail families and checks that they partition `[S]` with
/// per-family element counts equal to `a`. For `d == theta` the only
/// `d`-subset is the whole ground set, giving one family `{Omega}`.
pub fn tail_family(d: u64, theta: u64) -> Result<TailFamily> {
    let theta32 = check_dimensions(d, theta)?;
    let base = Subset::initial(theta32, d as u32);
    if d == theta {
        return Ok(TailFamily {
            families: vec![vec![base.clone()]],
            base,
            omega: 1,
            a: 1,
            g: 1,
        });
    }

    let pair = smallest_multiplier(d, theta);
    let g = theta / pair.omega;
    let families: Vec<Vec<Subset>> = (0..g)
        .map(|j| {
            (0..pair.omega)
                .map(|m| shift(&base, ((m * d) % theta + j) as i64))
                .collect()
        })
        .collect();

    let tail = TailFamily { base, families, omega: pair.omega, a: pair.a, g };
    tail.check_partition()?;
    Ok(tail)
}

impl TailFamily {
    fn check_partition(&self) -> Result<()> {
        let theta = self.base.theta() as usize;
        let mut seen = HashSet::new();
        for (j, family) in self.families.iter().enumerate() {
            if family.len() as u64 != self.omega {
                return Err(Error::Invariant(format!(
                    "tail family {j} has {} sets, expected {}",
                    family.len(),
                    self.omega
                )));
            }
            let mut counts = vec![0u64; theta];
            for set in family {
                if !seen.insert(set) {
                    return Err(Error::Invariant(format!("tail family {j} repeats {set}")));
                }
                for e in set.elements() {
                    counts[e as usize - 1] += 1;
                }
            }
            if let Some(pos) = counts.iter().position(|&c| c != self.a) {
                return Err(Error::Invariant(format!(
                    "element {} occurs {} times in tail family {j}, expected {}",
                    pos + 1,
                    counts[pos],
                    self.a
                )));
            }
        }
        let whole = orbit(&self.base);
        if seen.len() != whole.size || !whole.members.iter().all(|m| seen.contains(m)) {
            return Err(Error::Invariant("tail families do not cover the orbit of S".into()));
        }
        Ok(())
    }

    /// The first `count` families, concatenated.
    pub fn take(&self, count: usize) -> impl Iterator<Item = &Subset> + '_ {
        self.families[..count].iter().flatten()
    }
}
