use std::fmt;

use crate::error::{Error, Result};

/// A set of distinct elements of `{1, ..., theta}`.
///
/// Elements are held as sorted residues `0..theta`; residue `r` is the
/// element `r + 1` everywhere outside this module. Ordering is lexicographic
/// on the sorted element lists.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset {
    theta: u32,
    residues: Vec<u32>,
}

impl Subset {
    /// Builds a subset from 1-based elements in any order.
    pub fn new(theta: u32, elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        if theta == 0 {
            return Err(Error::NonPositive { name: "theta" });
        }
        let mut residues = Vec::new();
        for element in elements {
            if element == 0 || element > theta as u64 {
                return Err(Error::ElementOutOfRange { element, theta });
            }
            residues.push(element as u32 - 1);
        }
        residues.sort_unstable();
        if let Some(w) = residues.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement { element: w[0] as u64 + 1 });
        }
        Ok(Subset { theta, residues })
    }

    /// `{1, ..., d}`.
    pub fn initial(theta: u32, d: u32) -> Self {
        assert!(d <= theta);
        Subset { theta, residues: (0..d).collect() }
    }

    /// Residues must be sorted, distinct and below `theta`.
    pub(crate) fn from_sorted_residues(theta: u32, residues: Vec<u32>) -> Self {
        debug_assert!(residues.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(residues.iter().all(|&r| r < theta));
        Subset { theta, residues }
    }

    pub fn theta(&self) -> u32 {
        self.theta
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// Sorted 1-based elements.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = u64> + '_ {
        self.residues.iter().map(|&r| r as u64 + 1)
    }

    pub fn contains(&self, element: u64) -> bool {
        element >= 1
            && element <= self.theta as u64
            && self.residues.binary_search(&(element as u32 - 1)).is_ok()
    }

    /// Shifts in place, reusing `out`'s allocation.
    pub(crate) fn shift_into(&self, j: i64, out: &mut Vec<u32>) {
        let theta = self.theta as i64;
        let offset = j.rem_euclid(theta) as u32;
        out.clear();
        // Residues >= theta - offset wrap to the front; both halves stay sorted.
        let split = self.residues.partition_point(|&r| r < self.theta - offset);
        out.extend(self.residues[split..].iter().map(|&r| r + offset - self.theta));
        out.extend(self.residues[..split].iter().map(|&r| r + offset));
    }
}

/// `A + j`: adds `j` to every element and reduces modulo `theta` into
/// `{1, ..., theta}`. `j` may be negative or exceed `theta`.
pub fn shift(subset: &Subset, j: i64) -> Subset {
    let mut residues = Vec::with_capacity(subset.len());
    subset.shift_into(j, &mut residues);
    Subset { theta: subset.theta, residues }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}
