//! Exact proportions of elements of order dividing `m` in `S_n` and `A_n`.
//!
//! `P(n, m)` obeys `n P(n, m) = sum_{d | m, d <= n} P(n - d, m)` with
//! `P(r, m) = 1` for `r <= 0`. The signed twin inserts `(-1)^(d-1)` into each
//! term and sums `sign(g)` instead of 1, so `P + signed` is the proportion in `A_n`.

mod cycle_type;
mod oracle;
mod split;
mod table;

pub use cycle_type::{all_cycle_types, cycle_types_with_parts, for_each_partition, CycleType};
pub use oracle::{brute_force_prop, brute_force_signed, OracleMode, PermutationCensus};
pub use split::{prop_split, s_hat, s_sum, SplitProportions};
pub use table::{ProportionRow, ProportionTable};

use crate::{Error, ExactRational, Result};

pub(crate) fn require_min(what: &'static str, value: u64, min: u64) -> Result<()> {
    if value == 0 && min >= 1 {
        return Err(Error::NonPositive { what });
    }
    if value < min {
        return Err(Error::Precondition(format!(
            "{what} = {value} is below {min}"
        )));
    }
    Ok(())
}

/// `P(n, m)`; 1 when `n <= 0`.
pub fn prop_order_dividing(table: &mut ProportionTable, n: i64, m: u64) -> Result<ExactRational> {
    require_min("m", m, 1)?;
    Ok(table.get(n, m, false))
}

/// `(1/n!) * sum of sign(g)` over `g` in `S_n` of order dividing `m`; 1 when `n <= 0`.
pub fn prop_signed(table: &mut ProportionTable, n: i64, m: u64) -> Result<ExactRational> {
    require_min("m", m, 1)?;
    Ok(table.get(n, m, true))
}

/// Proportion of `A_n` of order dividing `m`. Requires `n >= 2`.
pub fn prop_alternating(table: &mut ProportionTable, n: u64, m: u64) -> Result<ExactRational> {
    require_min("m", m, 1)?;
    require_min("n", n, 2)?;
    Ok(table.get(n as i64, m, false) + table.get(n as i64, m, true))
}
