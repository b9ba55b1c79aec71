/// Returns `true` iff `C(theta, d) >= bound`.
///
/// The coefficient is built up as `C(theta - k + i, i)` for `i = 1..=k`,
/// `k = min(d, theta - d)`. Each partial value is itself a binomial
/// coefficient and the sequence never decreases, so evaluation stops as soon
/// as a partial value reaches `bound`. Partial values are kept below `bound`
/// and multiplied in `u128`, which cannot overflow.
pub fn binomial_at_least(theta: u64, d: u64, bound: u64) -> bool {
    if bound == 0 {
        return true;
    }
    if d > theta {
        return false;
    }
    let k = d.min(theta - d);
    let base = (theta - k) as u128;
    let bound = bound as u128;
    let mut value: u128 = 1;
    for i in 1..=k as u128 {
        if value >= bound {
            return true;
        }
        // value = C(base + i - 1, i - 1) < bound <= u64::MAX, factor <= u64::MAX
        value = value * (base + i) / i;
    }
    value >= bound
}
