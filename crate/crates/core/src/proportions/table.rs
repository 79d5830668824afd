use std::collections::{BTreeMap, HashMap};
use std::io::{Read, Write};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::divisors::divisor_list;
use crate::numeric::factorial;
use crate::{Error, ExactRational, Result};

/// One memoized row: `P(k, m)` (or its signed twin) for `0 <= k <= scale`,
/// stored as integers over the common denominator `scale!`.
///
/// `n * P(n, m) = sum_{d | m, d <= n} P(n - d, m)`, so with `A(k) = P(k, m) * scale!`
/// the recursion becomes `A(n) = (sum A(n - d)) / n` with an exact integer
/// division, and no gcd is ever taken while filling.
#[derive(Clone, Debug)]
pub struct ProportionRow {
    m: u64,
    signed: bool,
    divisors: Vec<u64>,
    denom: BigInt,
    values: Vec<BigInt>,
}

impl ProportionRow {
    fn new(m: u64, signed: bool) -> Self {
        ProportionRow {
            m,
            signed,
            divisors: divisor_list(m),
            denom: BigInt::one(),
            values: vec![BigInt::one()],
        }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn signed(&self) -> bool {
        self.signed
    }

    /// Largest `n` held by the row.
    pub fn scale(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    /// The common denominator `scale!`.
    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    /// `P(n, m) * scale!`. Panics if `n > scale`.
    pub fn numer(&self, n: u64) -> &BigInt {
        &self.values[n as usize]
    }

    /// `P(n, m)`, reduced; 1 for `n <= 0`. Panics if `n > scale`.
    pub fn get(&self, n: i64) -> ExactRational {
        if n <= 0 {
            return ExactRational::one();
        }
        ExactRational::new(self.values[n as usize].clone(), self.denom.clone())
    }

    fn extend_to(&mut self, target: u64) {
        let old = self.scale();
        if target <= old {
            return;
        }
        let factor: BigInt = (old + 1..=target).map(BigInt::from).product();
        for v in &mut self.values {
            *v *= &factor;
        }
        self.denom *= &factor;
        self.values.reserve((target - old) as usize);
        for n in old + 1..=target {
            let mut sum = BigInt::zero();
            for &d in self.divisors.iter().take_while(|&&d| d <= n) {
                let term = &self.values[(n - d) as usize];
                if self.signed && d % 2 == 0 {
                    sum -= term;
                } else {
                    sum += term;
                }
            }
            let (q, r) = sum.div_rem(&BigInt::from(n));
            debug_assert!(r.is_zero(), "inexact division at n = {n}, m = {}", self.m);
            self.values.push(q);
        }
    }
}

/// Memo store for `P(n, m)` and its signed twin, keyed by `(n, m, signed)`.
///
/// Rows are filled for ascending `n` with one writer (`&mut self`); afterwards
/// any number of readers can use [`ProportionTable::lookup`] concurrently.
#[derive(Clone, Debug, Default)]
pub struct ProportionTable {
    rows: HashMap<(u64, bool), ProportionRow>,
}

impl ProportionTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Ensures the row for `(m, signed)` holds every `n' <= n` and returns it.
    pub fn row(&mut self, n: u64, m: u64, signed: bool) -> &ProportionRow {
        assert!(m >= 1, "m must be positive");
        let row = self
            .rows
            .entry((m, signed))
            .or_insert_with(|| ProportionRow::new(m, signed));
        if n > row.scale() {
            // grow geometrically so repeated small extensions stay linear
            let target = n.max(row.scale() + row.scale() / 2);
            row.extend_to(target);
        }
        row
    }

    /// Like [`row`](Self::row) but fills exactly to `n` without over-allocating.
    pub fn row_exact(&mut self, n: u64, m: u64, signed: bool) -> &ProportionRow {
        assert!(m >= 1, "m must be positive");
        let row = self
            .rows
            .entry((m, signed))
            .or_insert_with(|| ProportionRow::new(m, signed));
        row.extend_to(n);
        row
    }

    /// `P(n, m)` (or the signed twin), filling the memo as needed.
    pub fn get(&mut self, n: i64, m: u64, signed: bool) -> ExactRational {
        if n <= 0 {
            return ExactRational::one();
        }
        self.row(n as u64, m, signed).get(n)
    }

    /// Read-only access to an already computed entry.
    pub fn lookup(&self, n: i64, m: u64, signed: bool) -> Option<ExactRational> {
        if n <= 0 {
            return Some(ExactRational::one());
        }
        let row = self.rows.get(&(m, signed))?;
        (n as u64 <= row.scale()).then(|| row.get(n))
    }

    pub fn rows(&self) -> impl Iterator<Item = &ProportionRow> {
        self.rows.values()
    }

    pub fn len(&self) -> usize {
        self.rows.values().map(|r| r.values.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Takes over rows from `other` that are longer than the ones held here.
    pub fn merge(&mut self, other: ProportionTable) {
        for (key, row) in other.rows {
            match self.rows.get(&key) {
                Some(mine) if mine.scale() >= row.scale() => {}
                _ => {
                    self.rows.insert(key, row);
                }
            }
        }
    }

    /// Writes every entry as `n,m,signed,numerator,denominator` (reduced),
    /// ordered by `(m, signed, n)`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut keys: Vec<_> = self.rows.keys().copied().collect();
        keys.sort_unstable();
        if keys.is_empty() {
            w.write_record(["n", "m", "signed", "numerator", "denominator"])?;
        }
        for key in keys {
            let row = &self.rows[&key];
            for n in 0..=row.scale() {
                let v = row.get(n as i64);
                w.serialize(CacheRecord {
                    n: n as i64,
                    m: row.m,
                    signed: row.signed,
                    numerator: v.numer().to_string(),
                    denominator: v.denom().to_string(),
                })?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a table written by [`write_csv`](Self::write_csv).
    ///
    /// For each `(m, signed)` the longest run of consecutive `n` starting at 0
    /// (or 1) is loaded. Values must lie in range and be multiples of `1/n!`.
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut grouped: BTreeMap<(u64, bool), BTreeMap<i64, ExactRational>> = BTreeMap::new();
        let mut reader = csv::Reader::from_reader(input);
        for record in reader.deserialize::<CacheRecord>() {
            let rec = record?;
            if rec.m == 0 {
                return Err(Error::Cache("m = 0".into()));
            }
            let parse = |s: &str| {
                s.parse::<BigInt>()
                    .map_err(|e| Error::Cache(format!("bad integer `{s}`: {e}")))
            };
            let num = parse(&rec.numerator)?;
            let den = parse(&rec.denominator)?;
            if !den.is_positive() {
                return Err(Error::Cache(format!(
                    "non-positive denominator at n = {}",
                    rec.n
                )));
            }
            let v = ExactRational::new(num, den);
            let lower = if rec.signed {
                -ExactRational::one()
            } else {
                ExactRational::zero()
            };
            if v < lower || v > ExactRational::one() {
                return Err(Error::Cache(format!(
                    "value out of range at n = {}, m = {}",
                    rec.n, rec.m
                )));
            }
            if rec.n <= 0 && !v.is_one() {
                return Err(Error::Cache(format!("P({}, {}) must be 1", rec.n, rec.m)));
            }
            grouped
                .entry((rec.m, rec.signed))
                .or_default()
                .insert(rec.n, v);
        }

        let mut table = ProportionTable::new();
        for ((m, signed), entries) in grouped {
            let mut last = 0i64;
            while entries.contains_key(&(last + 1)) {
                last += 1;
            }
            let scale = last as u64;
            let denom = factorial(scale);
            let mut values = vec![denom.clone()];
            for n in 1..=last {
                let scaled = &entries[&n] * ExactRational::from_integer(denom.clone());
                if !scaled.is_integer() {
                    return Err(Error::Cache(format!(
                        "P({n}, {m}) is not a multiple of 1/{n}!"
                    )));
                }
                values.push(scaled.to_integer());
            }
            table.rows.insert(
                (m, signed),
                ProportionRow {
                    m,
                    signed,
                    divisors: divisor_list(m),
                    denom,
                    values,
                },
            );
        }
        Ok(table)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheRecord {
    n: i64,
    m: u64,
    signed: bool,
    numerator: String,
    denominator: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;

    #[test]
    fn base_convention() {
        let mut t = ProportionTable::new();
        for n in [-3i64, -1, 0] {
            assert_eq!(t.get(n, 5, false), ExactRational::one());
            assert_eq!(t.get(n, 5, true), ExactRational::one());
            assert_eq!(t.lookup(n, 99, true), Some(ExactRational::one()));
        }
    }

    #[test]
    fn growth_preserves_values() {
        let mut t = ProportionTable::new();
        let early: Vec<_> = (1..=6).map(|n| t.get(n, 12, false)).collect();
        t.row(40, 12, false);
        t.row(41, 12, false);
        let late: Vec<_> = (1..=6).map(|n| t.lookup(n, 12, false).unwrap()).collect();
        assert_eq!(early, late);
        assert_eq!(t.get(4, 3, false), ratio(3, 8));
    }

    #[test]
    fn csv_round_trip_preserves_entries() {
        let mut t = ProportionTable::new();
        t.row_exact(12, 6, false);
        t.row_exact(9, 4, true);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("n,m,signed,numerator,denominator\n0,4,true,1,1\n"));
        let back = ProportionTable::read_csv(buf.as_slice()).unwrap();
        for n in 0..=12 {
            assert_eq!(back.lookup(n, 6, false), t.lookup(n, 6, false));
        }
        for n in 0..=9 {
            assert_eq!(back.lookup(n, 4, true), t.lookup(n, 4, true));
        }
        // loaded rows keep extending correctly
        let mut back = back;
        let mut fresh = ProportionTable::new();
        assert_eq!(back.get(30, 6, false), fresh.get(30, 6, false));
    }

    #[test]
    fn csv_rejects_bad_values() {
        let bad = "n,m,signed,numerator,denominator\n1,2,false,3,2\n";
        assert!(ProportionTable::read_csv(bad.as_bytes()).is_err());
        let bad = "n,m,signed,numerator,denominator\n3,2,false,1,7\n2,2,false,1,1\n1,2,false,1,1\n";
        assert!(ProportionTable::read_csv(bad.as_bytes()).is_err());
        let bad = "n,m,signed,numerator,denominator\n0,2,false,1,2\n";
        assert!(ProportionTable::read_csv(bad.as_bytes()).is_err());
    }

    #[test]
    fn csv_keeps_only_the_contiguous_prefix() {
        let text =
            "n,m,signed,numerator,denominator\n1,3,false,1,1\n2,3,false,1,2\n5,3,false,1,1\n";
        let t = ProportionTable::read_csv(text.as_bytes()).unwrap();
        assert_eq!(t.lookup(2, 3, false), Some(ratio(1, 2)));
        assert_eq!(t.lookup(5, 3, false), None);
    }

    #[test]
    fn merge_keeps_longer_rows() {
        let mut a = ProportionTable::new();
        a.row_exact(5, 7, false);
        let mut b = ProportionTable::new();
        b.row_exact(20, 7, false);
        b.row_exact(3, 8, true);
        a.merge(b);
        assert!(a.lookup(20, 7, false).is_some());
        assert!(a.lookup(3, 8, true).is_some());
    }
}
