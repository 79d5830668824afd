use num_bigint::BigInt;
use num_traits::Zero;

use crate::divisors::divisor_list;
use crate::{ExactRational, Result};

use super::{require_min, ProportionTable};

/// `P(n, m)` split by how the points 1, 2, 3 are spread over the cycles of `g`:
/// all in one cycle, in exactly two cycles, in three distinct cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitProportions {
    pub n: u64,
    pub m: u64,
    pub one_cycle: ExactRational,
    pub two_cycles: ExactRational,
    pub three_cycles: ExactRational,
}

impl SplitProportions {
    pub fn total(&self) -> ExactRational {
        &self.one_cycle + &self.two_cycles + &self.three_cycles
    }

    pub fn as_tuple(&self) -> (ExactRational, ExactRational, ExactRational) {
        (
            self.one_cycle.clone(),
            self.two_cycles.clone(),
            self.three_cycles.clone(),
        )
    }
}

/// `weights[s]` for the ordered pairs `(d1, d2)` of divisors with `d2 >= 2`,
/// `d1 + d2 = s <= n`, each weighted by `d2 - 1`.
fn pair_weights(divs: &[u64], n: u64) -> Vec<u64> {
    let mut w = vec![0u64; n as usize + 1];
    for &d2 in divs.iter().filter(|&&d| d >= 2) {
        for &d1 in divs.iter().take_while(|&&d1| d1 + d2 <= n) {
            w[(d1 + d2) as usize] += d2 - 1;
        }
    }
    w
}

/// `counts[s]` = number of ordered divisor triples with sum `s <= n`.
fn triple_counts(divs: &[u64], n: u64) -> Vec<u64> {
    let len = n as usize + 1;
    let mut single = vec![0u64; len];
    for &d in divs.iter().take_while(|&&d| d <= n) {
        single[d as usize] = 1;
    }
    let convolve = |a: &[u64], b: &[u64]| {
        let mut out = vec![0u64; len];
        for (i, &x) in a.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &y) in b.iter().enumerate().take(len - i).filter(|(_, &y)| y != 0) {
                out[i + j] += x * y;
            }
        }
        out
    };
    let pairs = convolve(&single, &single);
    convolve(&pairs, &single)
}

/// The three summands of `P(n, m)`. Requires `n >= 3`.
pub fn prop_split(table: &mut ProportionTable, n: u64, m: u64) -> Result<SplitProportions> {
    require_min("n", n, 3)?;
    require_min("m", m, 1)?;
    let row = table.row(n, m, false);
    let divs: Vec<u64> = divisor_list(m)
        .into_iter()
        .take_while(|&d| d <= n)
        .collect();
    let a = |k: u64| row.numer(k);

    let mut one = BigInt::zero();
    for &d in divs.iter().filter(|&&d| d >= 3) {
        one += a(n - d) * BigInt::from((d - 1) * (d - 2));
    }

    let mut two = BigInt::zero();
    for (s, &w) in pair_weights(&divs, n)
        .iter()
        .enumerate()
        .filter(|(_, &w)| w != 0)
    {
        two += a(n - s as u64) * BigInt::from(w);
    }
    two *= 3;

    let mut three = BigInt::zero();
    for (s, &c) in triple_counts(&divs, n)
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
    {
        three += a(n - s as u64) * BigInt::from(c);
    }

    let denom = row.denom() * BigInt::from(n) * BigInt::from(n - 1) * BigInt::from(n - 2);
    Ok(SplitProportions {
        n,
        m,
        one_cycle: ExactRational::new(one, denom.clone()),
        two_cycles: ExactRational::new(two, denom.clone()),
        three_cycles: ExactRational::new(three, denom),
    })
}

/// Ordered triples from sorted `divs` whose sum is at most `cap`.
fn count_triples(divs: &[u64], cap: u64) -> u128 {
    let k = divs.len() as u128;
    match divs.last() {
        None => return 0,
        Some(&max) if 3 * max <= cap => return k * k * k,
        _ => {}
    }
    let mut total = 0u128;
    for &a in divs {
        if a >= cap {
            break;
        }
        let rest = cap - a;
        // pairs (b, c) with b + c <= rest
        let mut hi = divs.len();
        for &b in divs {
            if b >= rest {
                break;
            }
            while hi > 0 && divs[hi - 1] > rest - b {
                hi -= 1;
            }
            total += hi as u128;
        }
    }
    total
}

/// Weighted ordered pairs: sum of `d2 - 1` over `d2 >= 2`, `d1 + d2 <= cap`.
fn weighted_pairs(divs: &[u64], cap: u64) -> u128 {
    divs.iter()
        .filter(|&&d2| d2 >= 2 && d2 < cap)
        .map(|&d2| {
            let fit = divs.partition_point(|&d1| d1 <= cap - d2);
            (d2 as u128 - 1) * fit as u128
        })
        .sum()
}

fn one_cycle_sum(divs: &[u64]) -> u128 {
    divs.iter()
        .filter(|&&d| d >= 3)
        .map(|&d| (d as u128 - 1) * (d as u128 - 2))
        .sum()
}

fn s_generic(n: u64, m: u64, cap: u64) -> u128 {
    let divs: Vec<u64> = divisor_list(m)
        .into_iter()
        .take_while(|&d| d <= n)
        .collect();
    one_cycle_sum(&divs) + 3 * weighted_pairs(&divs, cap) + count_triples(&divs, cap)
}

/// `S(n, m)`: divisors up to `n`, pair and triple sums capped at `n`.
pub fn s_sum(n: u64, m: u64) -> Result<u128> {
    require_min("n", n, 3)?;
    require_min("m", m, 1)?;
    Ok(s_generic(n, m, n))
}

/// `Ŝ(n, m)`: divisors up to `n`, pair and triple sums capped at `m`.
pub fn s_hat(n: u64, m: u64) -> Result<u128> {
    require_min("n", n, 3)?;
    require_min("m", m, 1)?;
    Ok(s_generic(n, m, m))
}
