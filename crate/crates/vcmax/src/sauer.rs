use num::bigint::BigUint;
use num::{One, ToPrimitive};

use crate::error::Result;
use crate::family::{check_enumeration_cap, SetFamily};

/// `binom(n, <= d)`: the sum of binomial coefficients `C(n, i)` for
/// `i = 0..=d` when `d < n`, and `2^n` otherwise. Exact at every size.
pub fn sauer_bound(n: u64, d: u64) -> BigUint {
    if d >= n {
        return BigUint::one() << usize::try_from(n).expect("ground size fits usize");
    }
    let mut acc = BigUint::one();
    let mut binom = BigUint::one();
    for i in 1..=d {
        binom = binom * (n - i + 1) / i;
        acc += &binom;
    }
    acc
}

/// `sauer_bound` narrowed to `usize`, for the desk-scale counting paths.
pub fn sauer_bound_usize(n: usize, d: usize) -> Option<usize> {
    sauer_bound(n as u64, d as u64).to_usize()
}

/// Per-cardinality trace maxima next to the bounds they must respect:
/// `counts[k]` is the largest `|C|^A|` over `|A| = k`, and `bounds[k]` is
/// `binom(k, <= d)` at `d = VC(C)`.
#[derive(Clone, Debug)]
pub struct SauerProfile {
    pub d: usize,
    pub counts: Vec<usize>,
    pub bounds: Vec<BigUint>,
}

/// Exhausts all parameter sets, so the ground is capped.
pub fn sauer_profile(family: &SetFamily, cap: usize) -> Result<SauerProfile> {
    let n = family.ground().len();
    check_enumeration_cap("sauer profile enumeration", n, cap)?;
    let d = family.vc_dimension()?;
    let mut counts = vec![0usize; n + 1];
    for mask in 0..1u64 << n {
        let positions: Vec<usize> = (0..n).filter(|&i| (mask >> i) & 1 == 1).collect();
        let k = positions.len();
        counts[k] = counts[k].max(family.trace_count_at(&positions));
    }
    let bounds = (0..=n).map(|k| sauer_bound(k as u64, d as u64)).collect();
    Ok(SauerProfile { d, counts, bounds })
}
