use crate::error::{Error, Result};
use crate::params::Parameters;
use crate::subset::Subset;

/// A candidate FR code: parameters plus an ordered list of subsets.
///
/// Only structural consistency (every subset lives over `params.theta`) is
/// enforced here. Counts, sizes, distinctness and coverage are what
/// [`verify`](crate::verify()) checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrCode {
    params: Parameters,
    sets: Vec<Subset>,
}

impl FrCode {
    pub fn new(params: Parameters, sets: Vec<Subset>) -> Result<Self> {
        let expected =
            u32::try_from(params.theta()).map_err(|_| Error::ThetaTooLarge(params.theta()))?;
        if let Some(bad) = sets.iter().find(|s| s.theta() != expected) {
            return Err(Error::ThetaMismatch { expected, found: bad.theta() });
        }
        Ok(FrCode { params, sets })
    }

    pub fn params(&self) -> &Parameters {
        &self.params
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn into_sets(self) -> Vec<Subset> {
        self.sets
    }
}
