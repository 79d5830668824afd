//! The upper bound `P(n, m) <= 1/n + gamma(m) m / n^2` and the finite
//! computation that closes its proof.
//!
//! `sqrt(gamma m)` thresholds are compared squared: `d > sqrt(gamma m)` is
//! `d^2 den > num m` with `gamma = num/den`.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::divisors::{c0_cubed, divisor_list, exceptional_set, gamma, gamma_parts};
use crate::numeric::{frac_le, integer, ratio, Enclosure, DEFAULT_DIGITS};
use crate::proportions::{s_hat, s_sum, ProportionTable};
use crate::report::{BoundKind, BoundReport};
use crate::{Error, ExactRational, Result};

/// Largest `m` covered by the direct computation; above it the analytic branch applies.
pub const COMPUTATIONAL_M_LIMIT: u64 = 19_020;

/// `1/n + gamma(m) m / n^2`. Requires `m >= n - 1`.
pub fn theorem1_bound(n: u64, m: u64) -> Result<ExactRational> {
    if n == 0 {
        return Err(Error::NonPositive { what: "n" });
    }
    if m == 0 {
        return Err(Error::NonPositive { what: "m" });
    }
    if m + 1 < n {
        return Err(Error::Precondition(format!(
            "m = {m} is below n - 1 = {}",
            n - 1
        )));
    }
    let (num, den) = gamma_parts(m);
    Ok(ratio(1, n) + ratio(num * m, den * n * n))
}

/// Exact check of `P(n, m)` against [`theorem1_bound`].
pub fn check_theorem1(table: &mut ProportionTable, n: u64, m: u64) -> Result<BoundReport> {
    let rhs = theorem1_bound(n, m)?;
    let lhs = table.get(n as i64, m, false);
    Ok(BoundReport::compare(BoundKind::Theorem1, lhs, rhs)
        .with_n(n)
        .with_m(m))
}

/// Checks every `n_lo <= n <= n_hi` and `n - 1 <= m <= multiplier * n`.
/// Returns the failures only, sorted by `(n, m)`.
pub fn verify_theorem1(n_lo: u64, n_hi: u64, multiplier: u64) -> Result<Vec<BoundReport>> {
    Ok(sweep_theorem1(n_lo, n_hi, multiplier)?.failures)
}

/// Outcome of [`sweep_theorem1`].
#[derive(Clone, Debug)]
pub struct Theorem1Sweep {
    pub checked: u64,
    pub failures: Vec<BoundReport>,
}

/// Like [`verify_theorem1`], also counting the comparisons made.
pub fn sweep_theorem1(n_lo: u64, n_hi: u64, multiplier: u64) -> Result<Theorem1Sweep> {
    if n_lo < 5 || n_lo > n_hi {
        return Err(Error::Precondition(format!(
            "need 5 <= n_lo <= n_hi, got {n_lo}..{n_hi}"
        )));
    }
    if multiplier == 0 {
        return Err(Error::NonPositive { what: "multiplier" });
    }
    let m_lo = n_lo - 1;
    let m_hi = multiplier * n_hi;
    let per_m: Vec<(u64, Vec<BoundReport>)> = (m_lo..=m_hi)
        .into_par_iter()
        .map(|m| {
            // n with n - 1 <= m <= multiplier * n
            let lo = n_lo.max(m.div_ceil(multiplier));
            let hi = n_hi.min(m + 1);
            if lo > hi {
                return (0, Vec::new());
            }
            let mut table = ProportionTable::new();
            let row = table.row_exact(hi, m, false);
            let (num, den) = gamma_parts(m);
            let mut failures = Vec::new();
            for n in lo..=hi {
                let rhs_num = BigInt::from(n * den + num * m);
                let rhs_den = BigInt::from(n * n * den);
                if !frac_le(row.numer(n), row.denom(), &rhs_num, &rhs_den) {
                    failures.push(
                        BoundReport::compare(
                            BoundKind::Theorem1,
                            row.get(n as i64),
                            ExactRational::new(rhs_num, rhs_den),
                        )
                        .with_n(n)
                        .with_m(m),
                    );
                }
            }
            (hi - lo + 1, failures)
        })
        .collect();
    let checked = per_m.iter().map(|(c, _)| c).sum();
    let mut failures: Vec<BoundReport> = per_m.into_iter().flat_map(|(_, f)| f).collect();
    failures.sort_by_key(|r| (r.n, r.m));
    Ok(Theorem1Sweep { checked, failures })
}

/// `(k - 1)(k - 2)(1 + gamma m / k)`.
fn cubic_rhs(k: u64, m: u64) -> ExactRational {
    let (num, den) = gamma_parts(m);
    integer((k - 1) * (k - 2)) * (integer(1) + ratio(num * m, den * k))
}

/// `k^2 > gamma(m) m`, i.e. `k > sqrt(gamma m)`.
fn exceeds_sqrt_gamma_m(k: u64, m: u64) -> bool {
    let (num, den) = gamma_parts(m);
    u128::from(k) * u128::from(k) * u128::from(den) > u128::from(num) * u128::from(m)
}

fn squared_equals_gamma_m(k: u64, m: u64) -> bool {
    let (num, den) = gamma_parts(m);
    u128::from(k) * u128::from(k) * u128::from(den) == u128::from(num) * u128::from(m)
}

/// One report per divisor `d` of `m` with `d > sqrt(gamma m)`, ascending in `d`:
/// `Shat(d, m) <= (d - 1)(d - 2)(1 + gamma m / d)`.
pub fn shat_condition_details(m: u64) -> Result<Vec<BoundReport>> {
    if m < 2 {
        return Err(Error::Precondition(format!("m = {m} is below 2")));
    }
    let mut out = Vec::new();
    for d in divisor_list(m) {
        if !exceeds_sqrt_gamma_m(d, m) {
            if squared_equals_gamma_m(d, m) {
                out.push(
                    BoundReport::compare(BoundKind::ShatCondition, integer(0), integer(0))
                        .with_m(m)
                        .with_d(d)
                        .with_note("d^2 = gamma m exactly; excluded by the strict inequality"),
                );
            }
            continue;
        }
        let lhs = if d >= 3 { s_hat(d, m)? } else { 0 };
        out.push(
            BoundReport::compare(BoundKind::ShatCondition, integer(lhs), cubic_rhs(d, m))
                .with_m(m)
                .with_d(d),
        );
    }
    Ok(out)
}

/// Collapses per-divisor reports into one: the first failure if any,
/// otherwise the tightest comparison (largest `lhs / rhs`).
fn summarize(kind: BoundKind, m: u64, details: Vec<BoundReport>) -> BoundReport {
    let boundary: Vec<u64> = details
        .iter()
        .filter(|r| r.note.is_some() && r.lhs == integer(0) && r.rhs == integer(0))
        .filter_map(|r| r.d)
        .collect();
    let checked: Vec<&BoundReport> = details
        .iter()
        .filter(|r| !(r.note.is_some() && r.rhs == integer(0)))
        .collect();
    let failing: Vec<u64> = checked
        .iter()
        .filter(|r| !r.passed)
        .filter_map(|r| r.d.or(r.n))
        .collect();
    let mut report = if let Some(first) = checked.iter().find(|r| !r.passed) {
        (*first).clone()
    } else if let Some(tight) = checked
        .iter()
        .filter(|r| r.rhs > integer(0))
        .max_by(|a, b| (&a.lhs / &a.rhs).cmp(&(&b.lhs / &b.rhs)))
    {
        (*tight).clone()
    } else {
        BoundReport::compare(kind, integer(0), integer(0))
            .with_m(m)
            .with_note("vacuous: nothing above sqrt(gamma m)")
    };
    report.kind = kind;
    let mut notes = vec![format!("{} comparisons", checked.len())];
    if !failing.is_empty() {
        let list: Vec<String> = failing.iter().map(u64::to_string).collect();
        notes.push(format!("failing at {}", list.join(" ")));
    }
    if !boundary.is_empty() {
        let list: Vec<String> = boundary.iter().map(u64::to_string).collect();
        notes.push(format!("d^2 = gamma m at d = {}", list.join(" ")));
    }
    if let Some(old) = report.note.take() {
        if !old.starts_with("d^2") {
            notes.insert(0, old);
        }
    }
    report.note = Some(notes.join("; "));
    report
}

/// Checks `Shat(d, m) <= (d - 1)(d - 2)(1 + gamma m / d)` for every divisor
/// `d > sqrt(gamma m)` of `m`. Passes iff every such divisor passes.
pub fn verify_shat_condition(m: u64) -> Result<BoundReport> {
    let details = shat_condition_details(m)?;
    Ok(summarize(BoundKind::ShatCondition, m, details))
}

/// One report per `n` with `sqrt(gamma m) <= n <= m + 1`:
/// `S(n, m) <= (n - 1)(n - 2)(1 + gamma m / n)`.
pub fn exceptional_m_details(m: u64) -> Result<Vec<BoundReport>> {
    if m != 72 && m != 120 {
        return Err(Error::Precondition(format!(
            "the direct check is defined for m in {{72, 120}}, got {m}"
        )));
    }
    direct_s_details(m)
}

/// The same direct `S(n, m)` check as [`exceptional_m_details`], for any `m >= 2`.
pub fn direct_s_details(m: u64) -> Result<Vec<BoundReport>> {
    if m < 2 {
        return Err(Error::Precondition(format!("m = {m} is below 2")));
    }
    let (num, den) = gamma_parts(m);
    let mut out = Vec::new();
    for n in 3..=m + 1 {
        if n * n * den < num * m {
            continue;
        }
        let lhs = s_sum(n, m)?;
        out.push(
            BoundReport::compare(BoundKind::ExceptionalM, integer(lhs), cubic_rhs(n, m))
                .with_n(n)
                .with_m(m),
        );
    }
    Ok(out)
}

/// Direct check of `S(n, m)` for `m` in {72, 120} over the whole range of `n`.
pub fn verify_exceptional_m(m: u64) -> Result<BoundReport> {
    let details = exceptional_m_details(m)?;
    Ok(summarize(BoundKind::ExceptionalM, m, details))
}

/// Runs [`verify_shat_condition`] for `2 <= m <= m_max` and for every member
/// of the exceptional set above `m_max`. Returns the failing summaries by `m`.
pub fn verify_theorem1_computational_step(m_max: u64) -> Result<Vec<BoundReport>> {
    verify_theorem1_computational_step_with(m_max, |_, _| {})
}

/// As [`verify_theorem1_computational_step`], calling `progress(done, total)`
/// from worker threads as values of `m` complete.
pub fn verify_theorem1_computational_step_with<F>(
    m_max: u64,
    progress: F,
) -> Result<Vec<BoundReport>>
where
    F: Fn(u64, u64) + Sync,
{
    if m_max < 2 {
        return Err(Error::Precondition(format!("m_max = {m_max} is below 2")));
    }
    let mut ms: Vec<u64> = (2..=m_max).collect();
    ms.extend(exceptional_set().into_iter().filter(|&x| x > m_max));
    let total = ms.len() as u64;
    let done = std::sync::atomic::AtomicU64::new(0);
    let results: Vec<Result<BoundReport>> = ms
        .par_iter()
        .map(|&m| {
            let r = verify_shat_condition(m);
            let k = done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
            progress(k, total);
            r
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        let r = r?;
        if !r.passed {
            failures.push(r);
        }
    }
    failures.sort_by_key(|r| r.m);
    Ok(failures)
}

/// Certified enclosure of
/// `f(m, c) = 3 c^2 s / (m^(1/3) (s - 1)) + c^3 s / ((s - 1)(s - 2))`, `s = sqrt(gamma(m) m)`,
/// where `c = c_cubed^(1/3)`. Requires `gamma(m) m > 4`.
pub fn large_m_function(m: u64, c_cubed: &ExactRational, digits: u32) -> Result<Enclosure> {
    let g = gamma(m).gamma;
    let gm = &g * integer(m);
    if gm <= integer(4) {
        return Err(Error::Precondition(format!(
            "gamma(m) m must exceed 4, m = {m}"
        )));
    }
    let s = Enclosure::sqrt(&gm, digits);
    let c = Enclosure::cbrt(c_cubed, digits);
    let cube_root_m = Enclosure::cbrt(&integer(m), digits);
    let s1 = &s - &integer(1);
    let s2 = &s - &integer(2);
    let c2 = &c * &c;
    let first = &(&(&c2 * &s) * &integer(3)) / &(&cube_root_m * &s1);
    let second = &(&s * c_cubed) / &(&s1 * &s2);
    Ok(&first + &second)
}

/// `f(19020, c0) <= 1`, certified by the upper end of the enclosure.
pub fn check_large_m_function() -> BoundReport {
    let f = large_m_function(COMPUTATIONAL_M_LIMIT, &c0_cubed(), DEFAULT_DIGITS)
        .expect("19020 is in range");
    BoundReport::compare(BoundKind::LargeMFunction, f.hi().clone(), integer(1))
        .with_m(COMPUTATIONAL_M_LIMIT)
        .with_note(format!("enclosure {f}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_values() {
        assert_eq!(theorem1_bound(10, 10).unwrap(), ratio(4345, 10000));
        assert_eq!(
            theorem1_bound(100, 99).unwrap(),
            ratio(1, 100) + ratio(5 * 99, 2 * 10000)
        );
        assert_eq!(
            theorem1_bound(400, 400).unwrap(),
            ratio(1, 400) + ratio(1, 200)
        );
        assert!(theorem1_bound(10, 8).is_err());
        assert!(theorem1_bound(10, 9).is_ok());
    }

    #[test]
    fn small_upper_bound_checks() {
        let mut t = ProportionTable::new();
        let r = check_theorem1(&mut t, 4, 3).unwrap();
        assert!(r.passed);
        assert_eq!(r.lhs, ratio(3, 8));
        let r = check_theorem1(&mut t, 5, 4).unwrap();
        assert_eq!(r.lhs, ratio(7, 15));
        assert!(r.passed);
        assert!(verify_theorem1(5, 5, 1).unwrap().is_empty());
        let sweep = sweep_theorem1(5, 60, 3).unwrap();
        assert!(sweep.failures.is_empty());
        assert!(sweep.checked > 0);
        assert!(verify_theorem1(4, 10, 2).is_err());
    }

    #[test]
    fn shat_small_m() {
        let r = verify_shat_condition(2).unwrap();
        assert!(r.passed);
        assert!(shat_condition_details(2).unwrap().is_empty());
        assert!(verify_shat_condition(1).is_err());
        let r = verify_shat_condition(24).unwrap();
        assert_eq!(r.d, Some(12));
        assert_eq!(r.lhs, integer(1104));
    }

    #[test]
    fn exceptional_m_range() {
        for m in [72u64, 120] {
            let details = exceptional_m_details(m).unwrap();
            assert_eq!(details.last().unwrap().n, Some(m + 1));
            let first = details.first().unwrap().n.unwrap();
            let (num, den) = gamma_parts(m);
            assert!(first * first * den >= num * m);
            assert!((first - 1) * (first - 1) * den < num * m);
        }
        assert!(verify_exceptional_m(60).is_err());
        for m in [24u64, 60] {
            assert!(
                direct_s_details(m).unwrap().iter().all(|r| r.passed),
                "m = {m}"
            );
        }
    }

    #[test]
    fn large_m_function_is_below_one() {
        let r = check_large_m_function();
        assert!(r.passed, "{r}");
        let f = large_m_function(19020, &c0_cubed(), 30).unwrap();
        assert!(f.certainly_ge(&ratio(99, 100)));
    }
}
