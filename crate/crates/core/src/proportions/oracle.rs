use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::divisors::divisor_list;
use crate::numeric::factorial;
use crate::{Error, ExactRational, Result};

use super::cycle_type::{for_each_partition, CycleType};

/// How an oracle walks `S_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleMode {
    /// Every one of the `n!` permutations. `n <= 10`.
    Permutations,
    /// Every cycle type with its class size. `n <= 60`.
    Partitions,
}

impl OracleMode {
    pub fn max_n(self) -> u64 {
        match self {
            OracleMode::Permutations => 10,
            OracleMode::Partitions => 60,
        }
    }

    fn check(self, n: u64) -> Result<()> {
        if n > self.max_n() {
            return Err(Error::SizeLimit {
                what: "n",
                value: n,
                limit: self.max_n(),
            });
        }
        Ok(())
    }
}

/// Counts of each cycle type over all of `S_n`, by explicit enumeration.
///
/// Types are packed as 4-bit multiplicities of lengths `1..=n`.
#[derive(Clone, Debug)]
pub struct PermutationCensus {
    n: u64,
    counts: HashMap<u64, u64>,
}

impl PermutationCensus {
    pub fn new(n: u64) -> Result<Self> {
        OracleMode::Permutations.check(n)?;
        let mut counts = HashMap::new();
        let len = n as usize;
        let mut perm: Vec<usize> = (0..len).collect();
        let mut seen = vec![false; len];
        let mut record = |perm: &[usize]| {
            seen.iter_mut().for_each(|s| *s = false);
            let mut key = 0u64;
            for start in 0..perm.len() {
                if seen[start] {
                    continue;
                }
                let mut len = 0;
                let mut i = start;
                while !seen[i] {
                    seen[i] = true;
                    i = perm[i];
                    len += 1;
                }
                key += 1 << (4 * (len - 1));
            }
            *counts.entry(key).or_insert(0) += 1;
        };
        // Heap's algorithm, iterative
        let mut c = vec![0usize; len];
        record(&perm);
        let mut i = 1;
        while i < len {
            if c[i] < i {
                let j = if i % 2 == 0 { 0 } else { c[i] };
                perm.swap(j, i);
                record(&perm);
                c[i] += 1;
                i = 1;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        if len == 0 {
            counts.clear();
            counts.insert(0, 1);
        }
        Ok(PermutationCensus { n, counts })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Every cycle type met, with its number of permutations, sorted.
    pub fn types(&self) -> Vec<(CycleType, u64)> {
        let mut out: Vec<_> = self
            .counts
            .iter()
            .filter(|(&key, _)| key != 0)
            .map(|(&key, &count)| (self.unpack(key), count))
            .collect();
        out.sort();
        out
    }

    fn unpack(&self, key: u64) -> CycleType {
        let mut parts = Vec::new();
        for len in (1..=self.n).rev() {
            let k = (key >> (4 * (len - 1))) & 0xf;
            parts.extend(std::iter::repeat(len).take(k as usize));
        }
        CycleType::from_sorted_unchecked(parts)
    }

    /// Number of permutations satisfying `pred`, and the signed count.
    pub fn count_where<F: Fn(&CycleType) -> bool>(&self, pred: F) -> (u64, i64) {
        let mut plain = 0u64;
        let mut signed = 0i64;
        for (t, count) in self.types() {
            if pred(&t) {
                plain += count;
                signed += t.sign() as i64 * count as i64;
            }
        }
        (plain, signed)
    }

    pub fn prop(&self, m: u64) -> ExactRational {
        let (plain, _) = self.count_where(|t| t.order_divides(m));
        ExactRational::new(plain.into(), self.total().into())
    }

    pub fn signed(&self, m: u64) -> ExactRational {
        let (_, signed) = self.count_where(|t| t.order_divides(m));
        ExactRational::new(signed.into(), self.total().into())
    }
}

fn partition_sum(n: u64, m: u64, signed: bool) -> ExactRational {
    let allowed: Vec<u64> = divisor_list(m)
        .into_iter()
        .take_while(|&d| d <= n)
        .collect();
    let n_fact = factorial(n);
    let mut total = BigInt::zero();
    for_each_partition(n, &allowed, |mults| {
        let mut centralizer = BigUint::one();
        let mut cycles = 0u64;
        for &(d, k) in mults {
            centralizer *= BigUint::from(d).pow(k as u32);
            centralizer *= factorial(k).magnitude();
            cycles += k;
        }
        let class = &n_fact / BigInt::from(centralizer);
        if signed && (n - cycles) % 2 == 1 {
            total -= class;
        } else {
            total += class;
        }
    });
    ExactRational::new(total, n_fact)
}

fn oracle(n: u64, m: u64, mode: OracleMode, signed: bool) -> Result<ExactRational> {
    if n == 0 {
        return Err(Error::NonPositive { what: "n" });
    }
    if m == 0 {
        return Err(Error::NonPositive { what: "m" });
    }
    mode.check(n)?;
    Ok(match mode {
        OracleMode::Permutations => {
            let census = PermutationCensus::new(n)?;
            if signed {
                census.signed(m)
            } else {
                census.prop(m)
            }
        }
        OracleMode::Partitions => partition_sum(n, m, signed),
    })
}

/// `P(n, m)` by direct enumeration, independent of the recursion.
pub fn brute_force_prop(n: u64, m: u64, mode: OracleMode) -> Result<ExactRational> {
    oracle(n, m, mode, false)
}

/// Signed twin of [`brute_force_prop`]: `(1/n!) * sum of sign(g)` over `g` of order dividing `m`.
pub fn brute_force_signed(n: u64, m: u64, mode: OracleMode) -> Result<ExactRational> {
    oracle(n, m, mode, true)
}
