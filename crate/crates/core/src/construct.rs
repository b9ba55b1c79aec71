use std::collections::HashSet;

use crate::code::FrCode;
use crate::error::{Error, Result};
use crate::orbit::orbits;
use crate::params::{check_feasibility, Parameters};
use crate::subset::Subset;
use crate::tail::tail_family;

/// Builds an FR code for feasible parameters.
///
/// Whole orbits of `d`-subsets other than `[S]` are taken in ascending
/// canonical order while more than `theta` sets are still needed. The
/// remainder `n_j <= theta` is a multiple of `omega` and is filled by the
/// first `n_j / omega` tail families. Every orbit and every tail family
/// covers all elements equally often, so the result is balanced.
///
/// The output depends only on `params`.
pub fn construct(params: &Parameters) -> Result<FrCode> {
    let report = check_feasibility(params);
    if !report.feasible {
        return Err(Error::InfeasibleParameters(report));
    }
    let (n, d, theta) = (params.n(), params.d(), params.theta());
    let theta32 = u32::try_from(theta).map_err(|_| Error::ThetaTooLarge(theta))?;
    if d == theta {
        // C(theta, theta) = 1 forces n = 1.
        return FrCode::new(*params, vec![Subset::initial(theta32, theta32)]);
    }

    let omega = report.omega_pair.omega;
    if n % omega != 0 {
        return Err(Error::Invariant(format!("omega={omega} does not divide n={n}")));
    }

    let base = Subset::initial(theta32, d as u32);
    let mut sets = Vec::with_capacity(usize::try_from(n).unwrap_or(0));
    let mut remaining = n;
    let mut candidates = orbits(d, theta)?.filter(|o| o.canonical != base);
    while remaining > theta {
        let next = candidates.next().ok_or_else(|| {
            Error::Invariant(format!("ran out of orbits with {remaining} sets still needed"))
        })?;
        if !(next.size as u64).is_multiple_of(omega) {
            return Err(Error::Invariant(format!(
                "orbit of {} has size {} not divisible by omega={omega}",
                next.canonical, next.size
            )));
        }
        remaining -= next.size as u64;
        sets.extend(next.members);
    }

    if remaining % omega != 0 {
        return Err(Error::Invariant(format!(
            "remainder {remaining} is not a multiple of omega={omega}"
        )));
    }
    let tail = tail_family(d, theta)?;
    let take = (remaining / omega) as usize;
    if take > tail.families.len() {
        return Err(Error::Invariant(format!(
            "remainder {remaining} needs {take} tail families, only {} exist",
            tail.families.len()
        )));
    }
    sets.extend(tail.take(take).cloned());

    debug_assert_eq!(sets.len() as u64, n);
    debug_assert_eq!(sets.iter().collect::<HashSet<_>>().len(), sets.len());
    FrCode::new(*params, sets)
}
