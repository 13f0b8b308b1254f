//! Closed-form lower bounds on merge-conversion access cost, and optimality
//! verdicts for executed conversions.
//!
//! Merging `lambda` initial `[nI, kI]` stripes into one `[nF, lambda * kI]`
//! stripe costs, at minimum,
//!
//! ```text
//! rF + lambda * min(kI, rF)   when rI >= rF
//! rF + lambda * kI            when rI <  rF
//! ```
//!
//! block accesses (reads of intact blocks plus writes of new blocks). The
//! `rF` term is unavoidable: each new parity must be written. The per-stripe
//! term is the fewest blocks any linear procedure can read from one initial
//! stripe; once `rF` exceeds `rI` (or `kI`), nothing beats reading all of the
//! stripe's data, and the full re-encode cost `lambda * kI + rF = nF` is
//! already the floor.

use crate::constructions::MergeParams;
use crate::conversion::AccessCostReport;

/// Fewest blocks any conversion procedure must read from each initial stripe.
pub fn read_lower_bound_per_stripe(params: &MergeParams) -> usize {
    // When rI >= rF the cheapest stripes contribute min(kI, rF) reads; once
    // rI < rF only full data reads remain. Both branches funnel through one
    // min() so the rF >= kI overlap cannot be miscounted.
    let cap = if params.r_i >= params.r_f {
        params.r_f
    } else {
        params.k_i
    };
    params.k_i.min(cap)
}

/// Minimum total access cost (reads + writes) of the merge conversion.
pub fn access_lower_bound(params: &MergeParams) -> usize {
    params.r_f + params.lambda * read_lower_bound_per_stripe(params)
}

/// Maximum number of blocks that can carry over unchanged: every data block.
pub fn max_unchanged(params: &MergeParams) -> usize {
    params.lambda * params.k_i
}

/// Whether an executed conversion attained the minimum access cost.
pub fn is_access_optimal(report: &AccessCostReport, params: &MergeParams) -> bool {
    report.total_access == access_lower_bound(params)
}
