//! Divisor enumeration, divisor-count bounds and the `gamma(m)` step function.
//!
//! Every bound of the form `d(n) <= c * n^(1/3)` is checked in cubed form,
//! `d(n)^3 <= c^3 * n`, where `c^3` is an exact rational. The square-root
//! bound is checked as `d(n)^2 <= 3 n`. No floating point is involved.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::precondition;
use crate::numeric::{integer, ratio, Enclosure, DEFAULT_DIGITS};
use crate::report::{BoundKind, BoundReport};
use crate::{Error, ExactRational, Result};

/// Largest member of [`exceptional_set`]: `2^6 * 3^4 * 5^2 * 7 * 13`.
pub const EXCEPTIONAL_SET_MAX: u64 = 11_793_600;

/// All divisors of a positive integer, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorProfile {
    pub n: u64,
    pub divisors: Vec<u64>,
    pub count: usize,
}

impl DivisorProfile {
    pub fn divides(&self, d: u64) -> bool {
        self.divisors.binary_search(&d).is_ok()
    }

    /// Divisors that are at most `bound`.
    pub fn up_to(&self, bound: u64) -> &[u64] {
        let end = self.divisors.partition_point(|&d| d <= bound);
        &self.divisors[..end]
    }
}

/// Enumerates the divisors of `n` by trial division up to `sqrt(n)`.
pub fn divisors_of(n: u64) -> Result<DivisorProfile> {
    if n == 0 {
        return Err(Error::NonPositive { what: "n" });
    }
    let divisors = divisor_list(n);
    Ok(DivisorProfile {
        n,
        count: divisors.len(),
        divisors,
    })
}

pub(crate) fn divisor_list(n: u64) -> Vec<u64> {
    debug_assert!(n > 0);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisor_count(n: u64) -> u64 {
    factorize(n)
        .iter()
        .map(|&(_, e)| u64::from(e) + 1)
        .product()
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && factorize(p) == [(p, 1)]
}

/// Value of the step function `gamma(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaValue {
    pub m: u64,
    pub gamma: ExactRational,
}

/// `gamma(m)` as a reduced fraction `(num, den)`: 2 for `m > 360`,
/// 5/2 for `60 < m <= 360`, and 3345/1000 = 669/200 for `m <= 60`.
pub fn gamma_parts(m: u64) -> (u64, u64) {
    if m > 360 {
        (2, 1)
    } else if m > 60 {
        (5, 2)
    } else {
        (669, 200)
    }
}

pub fn gamma(m: u64) -> GammaValue {
    let (num, den) = gamma_parts(m);
    GammaValue {
        m,
        gamma: ratio(num, den),
    }
}

/// `alpha0(p) = floor(1 / (p^(1/3) - 1))`: the exponent maximising
/// `f_p(alpha) = (alpha + 1) / p^(alpha/3)`.
///
/// Computed exactly as the largest `k >= 0` with `p k^3 <= (k + 1)^3`.
pub fn alpha0(p: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = u128::from(p);
    let mut k: u128 = 0;
    while p * (k + 1).pow(3) <= (k + 2).pow(3) {
        k += 1;
    }
    Ok(k as u32)
}

/// `f_p(alpha)^3 = (alpha + 1)^3 / p^alpha`, exact.
pub fn f_p_cubed(p: u64, alpha: u32) -> Result<ExactRational> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let num = BigInt::from(alpha + 1).pow(3);
    let den = BigInt::from(p).pow(alpha);
    Ok(ExactRational::new(num, den))
}

/// Certified enclosure of `f_p(alpha) = (alpha + 1) / p^(alpha/3)`.
pub fn f_p(p: u64, alpha: u32) -> Result<Enclosure> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let root = Enclosure::cbrt(&integer(BigInt::from(p).pow(alpha)), DEFAULT_DIGITS);
    Ok(&root.recip() * &integer(alpha + 1))
}

/// Certified enclosure of `c(n) = d(n) / n^(1/3)`.
pub fn divisor_ratio(n: u64) -> Result<Enclosure> {
    if n == 0 {
        return Err(Error::NonPositive { what: "n" });
    }
    let root = Enclosure::cbrt(&integer(n), DEFAULT_DIGITS);
    Ok(&root.recip() * &integer(divisor_count(n)))
}

/// `c0^3 = 768/35`.
pub fn c0_cubed() -> ExactRational {
    ratio(768, 35)
}

/// The divisor-count bounds available for [`check_divisor_bound`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivisorBoundVariant {
    /// `d(n) <= sqrt(3) n^(1/2)`.
    Half,
    /// `d(n) <= (1536/35)^(1/3) n^(1/3)`.
    Third,
    /// `n` odd: `d(n) <= 4 (3/35)^(1/3) n^(1/3)`.
    Odd,
    /// `9` does not divide `n`: `d(n) <= 16 / 105^(1/3) n^(1/3)`.
    No9,
    /// Both: `d(n) <= 8 / 105^(1/3) n^(1/3)`.
    OddNo9,
    /// `d(n) <= (768/35)^(1/3) n^(1/3)` unless `n` lies in [`exceptional_set`].
    C0,
}

impl DivisorBoundVariant {
    pub const ALL: [DivisorBoundVariant; 6] = [
        DivisorBoundVariant::Half,
        DivisorBoundVariant::Third,
        DivisorBoundVariant::Odd,
        DivisorBoundVariant::No9,
        DivisorBoundVariant::OddNo9,
        DivisorBoundVariant::C0,
    ];

    /// `(num, den, k)` such that the bound reads `d(n)^k <= (num/den) * n`.
    pub fn powered_constant(self) -> (u64, u64, u32) {
        match self {
            DivisorBoundVariant::Half => (3, 1, 2),
            DivisorBoundVariant::Third => (1536, 35, 3),
            DivisorBoundVariant::Odd => (192, 35, 3),
            DivisorBoundVariant::No9 => (4096, 105, 3),
            DivisorBoundVariant::OddNo9 => (512, 105, 3),
            DivisorBoundVariant::C0 => (768, 35, 3),
        }
    }

    pub fn applies_to(self, n: u64) -> bool {
        match self {
            DivisorBoundVariant::Odd => n % 2 == 1,
            DivisorBoundVariant::No9 => n % 9 != 0,
            DivisorBoundVariant::OddNo9 => n % 2 == 1 && n % 9 != 0,
            _ => true,
        }
    }

    /// Exact powered comparison `d^k * den <= num * n`.
    fn holds(self, n: u64, d: u64) -> bool {
        let (num, den, k) = self.powered_constant();
        u128::from(d).pow(k) * u128::from(den) <= u128::from(num) * u128::from(n)
    }

    pub fn name(self) -> &'static str {
        match self {
            DivisorBoundVariant::Half => "half",
            DivisorBoundVariant::Third => "third",
            DivisorBoundVariant::Odd => "odd",
            DivisorBoundVariant::No9 => "no9",
            DivisorBoundVariant::OddNo9 => "odd-no9",
            DivisorBoundVariant::C0 => "c0",
        }
    }
}

impl fmt::Display for DivisorBoundVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DivisorBoundVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DivisorBoundVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| precondition(format!("unknown divisor bound variant `{s}`")))
    }
}

/// Checks one divisor-count bound for `n`. Both sides are reported in powered
/// form: `lhs = d(n)^k`, `rhs = c^k * n`.
pub fn check_divisor_bound(n: u64, variant: DivisorBoundVariant) -> Result<BoundReport> {
    if n == 0 {
        return Err(Error::NonPositive { what: "n" });
    }
    if !variant.applies_to(n) {
        return Err(precondition(format!(
            "variant {variant} does not apply to n = {n}"
        )));
    }
    let d = divisor_count(n);
    let (num, den, k) = variant.powered_constant();
    let lhs = integer(BigInt::from(d).pow(k));
    let rhs = ratio(u128::from(num) * u128::from(n), den);
    let holds = variant.holds(n, d);
    let mut report = BoundReport::compare(BoundKind::DivisorCount, lhs, rhs)
        .with_n(n)
        .with_d(d)
        .with_note(format!("{variant}, powered form k={k}"));
    if !holds && variant == DivisorBoundVariant::C0 && in_exceptional_set(n) {
        report.passed = true;
        report.witness = None;
        report.note = Some(format!(
            "{variant}, powered form k={k}; exceeds c0 but lies in the exceptional set"
        ));
    }
    Ok(report)
}

/// Every `n = 2^a 3^b 5^c 7^d m` with `1 <= a <= 6`, `b <= 4`, `c <= 2`,
/// `d <= 1` and `m` in {1, 11, 13}, ascending. These are the only candidates
/// for `d(n) > c0 n^(1/3)`; membership does not imply the inequality fails.
pub fn exceptional_set() -> Vec<u64> {
    let mut out = Vec::with_capacity(6 * 5 * 3 * 2 * 3);
    for a in 1..=6u32 {
        for b in 0..=4u32 {
            for c in 0..=2u32 {
                for d in 0..=1u32 {
                    for m in [1u64, 11, 13] {
                        out.push(2u64.pow(a) * 3u64.pow(b) * 5u64.pow(c) * 7u64.pow(d) * m);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    assert!(*out.last().unwrap() <= EXCEPTIONAL_SET_MAX);
    out
}

pub fn in_exceptional_set(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut rest = n;
    let mut strip = |p: u64| {
        let mut e = 0u32;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        e
    };
    let (a, b, c, d) = (strip(2), strip(3), strip(5), strip(7));
    (1..=6).contains(&a) && b <= 4 && c <= 2 && d <= 1 && matches!(rest, 1 | 11 | 13)
}

/// Checks `sum_{d | n, a <= d <= b} (d-1)(d-2) <= (b-1)(b-2) + n b - n a`.
pub fn sum_quadratic_divisor_bound(n: u64, a: u64, b: u64) -> Result<BoundReport> {
    if a == 0 {
        return Err(Error::NonPositive { what: "a" });
    }
    if !(a <= b && b <= n) {
        return Err(precondition(format!(
            "need a <= b <= n, got a = {a}, b = {b}, n = {n}"
        )));
    }
    let lhs: i128 = divisor_list(n)
        .into_iter()
        .filter(|&d| a <= d && d <= b)
        .map(quad)
        .sum();
    let rhs = sum_quadratic_rhs(n, a, b);
    Ok(
        BoundReport::compare(BoundKind::SumQuadratic, integer(lhs), integer(rhs))
            .with_n(n)
            .with_note(format!("a={a}, b={b}")),
    )
}

fn quad(d: u64) -> i128 {
    let d = i128::from(d);
    (d - 1) * (d - 2)
}

fn sum_quadratic_rhs(n: u64, a: u64, b: u64) -> i128 {
    quad(b) + i128::from(n) * (i128::from(b) - i128::from(a))
}

/// `d(n)` for every `n <= limit`, built once by a linear sieve.
pub struct DivisorCountSieve {
    counts: Vec<u16>,
}

impl DivisorCountSieve {
    pub fn new(limit: usize) -> Self {
        let mut counts = vec![0u16; limit + 1];
        // exponent of the smallest prime factor
        let mut spf_exp = vec![0u8; limit + 1];
        let mut primes: Vec<usize> = Vec::new();
        if limit >= 1 {
            counts[1] = 1;
        }
        for i in 2..=limit {
            if counts[i] == 0 {
                primes.push(i);
                counts[i] = 2;
                spf_exp[i] = 1;
            }
            for &p in &primes {
                let ip = i * p;
                if ip > limit {
                    break;
                }
                if i % p == 0 {
                    let e = u16::from(spf_exp[i]);
                    spf_exp[ip] = spf_exp[i] + 1;
                    counts[ip] = counts[i] / (e + 1) * (e + 2);
                    break;
                }
                spf_exp[ip] = 1;
                counts[ip] = counts[i] * 2;
            }
        }
        DivisorCountSieve { counts }
    }

    pub fn limit(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    /// `d(n)`; panics if `n` is zero or beyond the sieve limit.
    pub fn count(&self, n: usize) -> u64 {
        assert!(n >= 1, "d(0) is undefined");
        u64::from(self.counts[n])
    }
}

/// Outcome of sweeping every divisor-count bound over `1..=limit`.
#[derive(Clone, Debug, Default)]
pub struct DivisorSweep {
    pub limit: u64,
    /// `(variant, n)` for every violated bound. Exceedances of `c0` inside the
    /// exceptional set are not violations.
    pub violations: Vec<(DivisorBoundVariant, u64)>,
    /// Number of `n` with `d(n) > c0 n^(1/3)`.
    pub c0_exceedances: u64,
    /// Largest `n` with `d(n) > c0 n^(1/3)`.
    pub largest_c0_exceedance: Option<u64>,
}

impl DivisorSweep {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Sweeps all six divisor-count bounds over `1..=limit` using a sieve.
pub fn sweep_divisor_bounds(limit: u64) -> DivisorSweep {
    let sieve = DivisorCountSieve::new(limit as usize);
    let exceptional = exceptional_set();
    const CHUNK: u64 = 1 << 16;
    let chunks: Vec<u64> = (0..limit.div_ceil(CHUNK)).collect();
    let parts: Vec<DivisorSweep> = chunks
        .par_iter()
        .map(|&c| {
            let mut part = DivisorSweep::default();
            let lo = c * CHUNK + 1;
            let hi = ((c + 1) * CHUNK).min(limit);
            for n in lo..=hi {
                let d = sieve.count(n as usize);
                for v in DivisorBoundVariant::ALL {
                    if !v.applies_to(n) || v.holds(n, d) {
                        continue;
                    }
                    if v == DivisorBoundVariant::C0 {
                        part.c0_exceedances += 1;
                        part.largest_c0_exceedance = Some(n);
                        if exceptional.binary_search(&n).is_ok() {
                            continue;
                        }
                    }
                    part.violations.push((v, n));
                }
            }
            part
        })
        .collect();
    let mut out = DivisorSweep {
        limit,
        ..Default::default()
    };
    for part in parts {
        out.violations.extend(part.violations);
        out.c0_exceedances += part.c0_exceedances;
        out.largest_c0_exceedance = part.largest_c0_exceedance.or(out.largest_c0_exceedance);
    }
    out
}

/// Outcome of the exhaustive check of the divisor quadratic-sum bound.
#[derive(Clone, Debug)]
pub struct SumQuadraticSweep {
    pub n_max: u64,
    pub triples_checked: u64,
    pub failures: Vec<BoundReport>,
}

/// Checks the quadratic-sum bound for every `1 <= a <= b <= n <= n_max`.
pub fn sweep_sum_quadratic(n_max: u64) -> SumQuadraticSweep {
    let results: Vec<(u64, Vec<BoundReport>)> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            // prefix[x] = sum over divisors d <= x of (d-1)(d-2)
            let mut prefix = vec![0i128; n as usize + 1];
            for x in 1..=n {
                let add = if n % x == 0 { quad(x) } else { 0 };
                prefix[x as usize] = prefix[x as usize - 1] + add;
            }
            let mut failures = Vec::new();
            let mut checked = 0u64;
            for b in 1..=n {
                for a in 1..=b {
                    checked += 1;
                    let lhs = prefix[b as usize] - prefix[a as usize - 1];
                    let rhs = sum_quadratic_rhs(n, a, b);
                    if lhs > rhs {
                        failures.push(
                            BoundReport::compare(
                                BoundKind::SumQuadratic,
                                integer(lhs),
                                integer(rhs),
                            )
                            .with_n(n)
                            .with_note(format!("a={a}, b={b}")),
                        );
                    }
                }
            }
            (checked, failures)
        })
        .collect();
    let mut out = SumQuadraticSweep {
        n_max,
        triples_checked: 0,
        failures: Vec::new(),
    };
    for (checked, failures) in results {
        out.triples_checked += checked;
        out.failures.extend(failures);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_divisor_lists() {
        assert_eq!(divisors_of(1).unwrap().divisors, vec![1]);
        let p = divisors_of(12).unwrap();
        assert_eq!(p.divisors, vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(p.count, 6);
        assert_eq!(p.up_to(5), &[1, 2, 3, 4]);
        assert!(matches!(divisors_of(0), Err(Error::NonPositive { .. })));
    }

    #[test]
    fn divisor_count_of_360_matches_trial_division() {
        let brute = (1..=360u64).filter(|d| 360 % d == 0).count();
        assert_eq!(brute, 24);
        assert_eq!(divisors_of(360).unwrap().count, brute);
        assert_eq!(divisor_count(360), 24);
    }

    #[test]
    fn gamma_breakpoints() {
        assert_eq!(gamma(361).gamma, integer(2));
        assert_eq!(gamma(360).gamma, ratio(5, 2));
        assert_eq!(gamma(61).gamma, ratio(5, 2));
        assert_eq!(gamma(60).gamma, ratio(3345, 1000));
        assert_eq!(gamma(1).gamma, ratio(3345, 1000));
    }

    #[test]
    fn alpha0_values() {
        assert_eq!(alpha0(2).unwrap(), 3);
        assert_eq!(alpha0(3).unwrap(), 2);
        assert_eq!(alpha0(5).unwrap(), 1);
        assert_eq!(alpha0(7).unwrap(), 1);
        for p in [11, 13, 17, 101] {
            assert_eq!(alpha0(p).unwrap(), 0);
        }
        assert!(matches!(alpha0(9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn alpha0_maximises_f_p() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let best = alpha0(p).unwrap();
            let at_best = f_p_cubed(p, best).unwrap();
            for alpha in 0..12 {
                assert!(
                    f_p_cubed(p, alpha).unwrap() <= at_best,
                    "p={p} alpha={alpha}"
                );
            }
        }
    }

    #[test]
    fn f_p_trivial_exponent() {
        let e = f_p(17, 0).unwrap();
        assert!(e.contains(&integer(1)));
        assert_eq!(e.width(), integer(0));
        assert!(f_p(15, 1).is_err());
    }

    #[test]
    fn f_product_encloses_c0() {
        let product = [(2, 7), (3, 2), (5, 1), (7, 1)]
            .iter()
            .map(|&(p, a)| f_p(p, a).unwrap())
            .reduce(|x, y| &x * &y)
            .unwrap();
        let cube = |x: &ExactRational| x * x * x;
        assert!(cube(product.lo()) <= c0_cubed());
        assert!(c0_cubed() <= cube(product.hi()));
        let exact: ExactRational = [(2, 7), (3, 2), (5, 1), (7, 1)]
            .iter()
            .map(|&(p, a)| f_p_cubed(p, a).unwrap())
            .product();
        assert_eq!(exact, c0_cubed());
    }

    // Ordering facts used to pin down the exceptional set, checked on cubes.
    #[test]
    fn exceptional_set_ordering_facts() {
        let f = |p, a| f_p_cubed(p, a).unwrap();
        let f27 = f(2, 7);
        for a in 1..=6 {
            assert!(f27 <= f(2, a));
        }
        assert_eq!(f27, f(2, 1));
        assert!(f27 >= f(2, 8));
        assert!(f(2, 3) * f(17, 1) < f27);
        assert!(f(2, 3) * f(11, 2) < f27);
        assert!(f(2, 3) * f(11, 1) * f(13, 1) < f27);
        assert!(f(2, 3) * f(7, 2) < f(2, 7) * f(7, 1));
        assert!(f(2, 3) * f(5, 3) < f(2, 7) * f(5, 1));
        assert!(f(2, 3) * f(3, 5) < f(2, 7) * f(3, 2));
        let odd_part = f(3, 4) * f(5, 2) * f(7, 1);
        assert_eq!(odd_part, ratio(40, 21));
        assert!(odd_part < c0_cubed());
    }

    #[test]
    fn divisor_constants_as_products_of_f() {
        let f = |p, a| f_p_cubed(p, a).unwrap();
        assert_eq!(f(3, 2) * f(5, 1) * f(7, 1), ratio(192, 35));
        assert_eq!(f(2, 3) * f(3, 1) * f(5, 1) * f(7, 1), ratio(4096, 105));
        assert_eq!(f(3, 1) * f(5, 1) * f(7, 1), ratio(512, 105));
    }

    #[test]
    fn divisor_bound_examples() {
        let r = check_divisor_bound(15, DivisorBoundVariant::Odd).unwrap();
        assert!(r.passed);
        assert_eq!(r.lhs, integer(64));
        assert_eq!(r.rhs, ratio(192 * 15, 35));
        for v in DivisorBoundVariant::ALL {
            assert!(check_divisor_bound(1, v).unwrap().passed, "{v}");
        }
        assert!(check_divisor_bound(4, DivisorBoundVariant::Odd).is_err());
        assert!(check_divisor_bound(18, DivisorBoundVariant::No9).is_err());
        assert!(check_divisor_bound(0, DivisorBoundVariant::Half).is_err());
    }

    #[test]
    fn c0_exceedance_inside_exceptional_set_is_reported() {
        let n = 64 * 81 * 25 * 7 * 13;
        assert_eq!(n, EXCEPTIONAL_SET_MAX);
        let r = check_divisor_bound(n, DivisorBoundVariant::C0).unwrap();
        // d = 420 and 420^3 < c0^3 n: the largest member is not itself an exceedance
        assert!(r.passed);
        assert!(!r.note.as_deref().unwrap().contains("exceptional set"));
        // 2^3 3^2 5 7 = 2520: d = 48, 48^3 * 35 > 768 * 2520
        let r = check_divisor_bound(2520, DivisorBoundVariant::C0).unwrap();
        assert!(r.passed && r.note.unwrap().contains("exceptional"));
    }

    #[test]
    fn exceptional_set_enumeration() {
        let set = exceptional_set();
        // 6 * 5 * 3 * 2 * 3 candidates, all distinct
        let brute: Vec<u64> = (1..=EXCEPTIONAL_SET_MAX)
            .filter(|&n| in_exceptional_set(n))
            .collect();
        assert_eq!(set.len(), 540);
        assert_eq!(set, brute);
        assert_eq!(set[0], 2);
        assert_eq!(*set.last().unwrap(), EXCEPTIONAL_SET_MAX);
        assert!(set.windows(2).all(|w| w[0] < w[1]));
        assert!(!in_exceptional_set(1));
        assert!(!in_exceptional_set(17 * 2));
    }

    #[test]
    fn sum_quadratic_examples() {
        let r = sum_quadratic_divisor_bound(12, 3, 6).unwrap();
        assert_eq!(r.lhs, integer(28));
        assert_eq!(r.rhs, integer(56));
        assert!(r.passed);
        for n in [3u64, 10, 97] {
            let r = sum_quadratic_divisor_bound(n, n, n).unwrap();
            assert_eq!(r.lhs, integer(quad(n)));
            assert_eq!(r.lhs, r.rhs);
            assert!(r.passed);
        }
        let r = sum_quadratic_divisor_bound(60, 4, 30).unwrap();
        let brute: i128 = [4, 5, 6, 10, 12, 15, 20, 30].iter().map(|&d| quad(d)).sum();
        assert_eq!(r.lhs, integer(brute));
        assert!(r.passed);
        assert!(sum_quadratic_divisor_bound(10, 5, 4).is_err());
        assert!(sum_quadratic_divisor_bound(10, 0, 4).is_err());
        assert!(sum_quadratic_divisor_bound(10, 2, 11).is_err());
    }

    #[test]
    fn sieve_matches_trial_division() {
        let sieve = DivisorCountSieve::new(5000);
        for n in 1..=5000u64 {
            assert_eq!(sieve.count(n as usize), divisor_count(n), "n={n}");
        }
    }

    #[test]
    fn small_sweeps_pass() {
        let sweep = sweep_divisor_bounds(50_000);
        assert!(
            sweep.passed(),
            "{:?}",
            &sweep.violations[..sweep.violations.len().min(5)]
        );
        assert!(sweep.c0_exceedances > 0);
        let sums = sweep_sum_quadratic(120);
        assert!(sums.failures.is_empty());
        assert_eq!(
            sums.triples_checked,
            (1..=120u64).map(|n| n * (n + 1) / 2).sum::<u64>()
        );
    }

    #[test]
    fn variant_names_round_trip() {
        for v in DivisorBoundVariant::ALL {
            assert_eq!(v.name().parse::<DivisorBoundVariant>().unwrap(), v);
        }
        assert!("quarter".parse::<DivisorBoundVariant>().is_err());
    }
}
