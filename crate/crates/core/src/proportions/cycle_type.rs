use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::numeric::factorial;
use crate::{Error, ExactRational, Result};

/// Multiset of cycle lengths of a permutation of `n` points, fixed points
/// included as parts equal to 1. Parts are kept in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    parts: Vec<u64>,
}

impl CycleType {
    pub fn new(mut parts: Vec<u64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Precondition(
                "a cycle type needs at least one part".into(),
            ));
        }
        if parts.contains(&0) {
            return Err(Error::NonPositive {
                what: "cycle length",
            });
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    /// Cycle type on `n` points with the given non-trivial cycles, padded with fixed points.
    pub fn with_fixed_points(n: u64, cycles: &[u64]) -> Result<Self> {
        let support: u64 = cycles.iter().sum();
        if support > n {
            return Err(Error::Precondition(format!(
                "cycles {cycles:?} do not fit on {n} points"
            )));
        }
        let mut parts = cycles.to_vec();
        parts.extend(std::iter::repeat(1).take((n - support) as usize));
        Self::new(parts)
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<u64>) -> Self {
        debug_assert!(!parts.is_empty() && parts.windows(2).all(|w| w[0] >= w[1]));
        CycleType { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Number of points moved or fixed, i.e. the sum of the parts.
    pub fn n(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn num_cycles(&self) -> usize {
        self.parts.len()
    }

    /// Sign of any permutation of this type: `(-1)^(n - #cycles)`.
    pub fn sign(&self) -> i8 {
        if (self.n() - self.num_cycles() as u64) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }

    /// Order of the permutation: lcm of the parts.
    pub fn order(&self) -> BigUint {
        self.parts
            .iter()
            .fold(BigUint::one(), |acc, &p| acc.lcm(&BigUint::from(p)))
    }

    pub fn order_divides(&self, m: u64) -> bool {
        self.parts.iter().all(|&p| m % p == 0)
    }

    /// Order of `g^r` for `g` of this type: lcm over parts `d` of `d / gcd(d, r)`.
    pub fn power_order(&self, r: u64) -> BigUint {
        self.parts.iter().fold(BigUint::one(), |acc, &d| {
            acc.lcm(&BigUint::from(d / d.gcd(&r)))
        })
    }

    /// Whether `g^r` has order exactly `s`, without forming the full lcm.
    pub fn power_order_is(&self, r: u64, s: u64) -> bool {
        let mut acc = 1u64;
        for &d in &self.parts {
            let e = d / d.gcd(&r);
            if s % e != 0 {
                return false;
            }
            acc = acc.lcm(&e);
        }
        acc == s
    }

    pub fn multiplicities(&self) -> BTreeMap<u64, u64> {
        let mut out = BTreeMap::new();
        for &p in &self.parts {
            *out.entry(p).or_insert(0) += 1;
        }
        out
    }

    /// Order of the centralizer in `S_n`: `prod d^k_d * k_d!`.
    pub fn centralizer_order(&self) -> BigUint {
        self.multiplicities()
            .into_iter()
            .map(|(d, k)| {
                BigUint::from(d).pow(k as u32) * factorial(k).to_biguint().expect("positive")
            })
            .product()
    }

    /// Proportion of `S_n` having this cycle type: `1 / centralizer_order`.
    pub fn class_proportion(&self) -> ExactRational {
        ExactRational::new(1.into(), self.centralizer_order().into())
    }

    pub fn contains_part(&self, d: u64) -> bool {
        self.parts.contains(&d)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, k) in self.multiplicities() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{d}^{k}")?;
        }
        Ok(())
    }
}

/// Calls `visit` with every partition of `n` whose parts all lie in `allowed`
/// (any order, duplicates ignored). Each partition is passed as
/// `(part, multiplicity)` pairs with non-zero multiplicity, largest part first.
pub fn for_each_partition<F>(n: u64, allowed: &[u64], mut visit: F)
where
    F: FnMut(&[(u64, u64)]),
{
    let mut parts: Vec<u64> = allowed
        .iter()
        .copied()
        .filter(|&p| p >= 1 && p <= n)
        .collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts.dedup();
    let mut stack = Vec::new();
    fn go<F: FnMut(&[(u64, u64)])>(
        rest: u64,
        parts: &[u64],
        stack: &mut Vec<(u64, u64)>,
        visit: &mut F,
    ) {
        if rest == 0 {
            visit(stack);
            return;
        }
        let Some((&p, tail)) = parts.split_first() else {
            return;
        };
        if tail.is_empty() {
            if rest % p == 0 {
                stack.push((p, rest / p));
                visit(stack);
                stack.pop();
            }
            return;
        }
        for k in (0..=rest / p).rev() {
            if k > 0 {
                stack.push((p, k));
            }
            go(rest - k * p, tail, stack, visit);
            if k > 0 {
                stack.pop();
            }
        }
    }
    go(n, &parts, &mut stack, &mut visit);
}

/// All cycle types of `S_n` whose parts lie in `allowed`.
pub fn cycle_types_with_parts(n: u64, allowed: &[u64]) -> Vec<CycleType> {
    let mut out = Vec::new();
    for_each_partition(n, allowed, |mults| {
        let mut parts = Vec::new();
        for &(p, k) in mults {
            parts.extend(std::iter::repeat(p).take(k as usize));
        }
        out.push(CycleType::from_sorted_unchecked(parts));
    });
    out
}

/// All cycle types of `S_n`.
pub fn all_cycle_types(n: u64) -> Vec<CycleType> {
    let allowed: Vec<u64> = (1..=n).collect();
    cycle_types_with_parts(n, &allowed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;
    use num_traits::Zero;

    fn ct(parts: &[u64]) -> CycleType {
        CycleType::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn basic_statistics() {
        let t = ct(&[2, 3, 8]);
        assert_eq!(t.parts(), &[8, 3, 2]);
        assert_eq!(t.n(), 13);
        assert_eq!(t.order(), BigUint::from(24u32));
        assert!(t.is_even());
        assert_eq!(ct(&[2, 1]).sign(), -1);
        assert_eq!(t.to_string(), "2^1 3^1 8^1");
        assert!(CycleType::new(vec![]).is_err());
        assert!(CycleType::new(vec![3, 0]).is_err());
    }

    #[test]
    fn power_orders() {
        assert_eq!(ct(&[6, 2]).power_order(2), BigUint::from(3u32));
        assert_eq!(ct(&[7]).power_order(7), BigUint::one());
        assert_eq!(ct(&[2, 3, 8]).power_order(8), BigUint::from(3u32));
        assert!(ct(&[2, 3, 8]).power_order_is(8, 3));
        assert!(!ct(&[2, 3, 8]).power_order_is(8, 6));
        assert!(!ct(&[5, 3, 8]).power_order_is(8, 3));
    }

    #[test]
    fn centralizer_and_proportion() {
        let t = CycleType::with_fixed_points(13, &[3, 7]).unwrap();
        assert_eq!(t.parts(), &[7, 3, 1, 1, 1]);
        assert_eq!(t.centralizer_order(), BigUint::from(126u32));
        assert_eq!(t.class_proportion(), ratio(1, 126));
        assert!(CycleType::with_fixed_points(4, &[3, 2]).is_err());
    }

    #[test]
    fn class_proportions_sum_to_one() {
        for n in 1..=12u64 {
            let total: ExactRational = all_cycle_types(n)
                .iter()
                .map(|t| t.class_proportion())
                .sum();
            assert!(total.is_one(), "n = {n}");
        }
    }

    #[test]
    fn partition_counts() {
        // p(n) for n = 0..=10
        let expected = [1usize, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, &p) in expected.iter().enumerate() {
            let mut count = 0;
            for_each_partition(n as u64, &(1..=10).collect::<Vec<_>>(), |_| count += 1);
            assert_eq!(count, p, "n = {n}");
        }
        // parts in {2, 3}: 10 = 2+2+2+2+2 = 2+2+3+3 -> 2 partitions
        assert_eq!(cycle_types_with_parts(10, &[3, 2]).len(), 2);
        assert!(cycle_types_with_parts(5, &[2, 4]).is_empty());
        let signed: ExactRational = all_cycle_types(6)
            .iter()
            .map(|t| t.class_proportion() * ExactRational::from_integer(t.sign().into()))
            .sum();
        assert!(signed.is_zero());
    }
}
