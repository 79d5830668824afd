//! Monte-Carlo estimates over uniform random elements of `S_n` and `A_n`.
//!
//! Trials are split into fixed chunks; chunk `i` draws from a ChaCha8 stream
//! `i` of the given seed, so results do not depend on the thread count.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::numeric::{format_decimal, format_fraction, integer, ratio};
use crate::proportions::{prop_alternating, CycleType, ProportionTable};
use crate::recognition::{cond_prob, prob_a, prob_b, CaseSpec, Group};
use crate::{Error, ExactRational, Result};

const CHUNK: u64 = 1 << 14;

/// Cycle type of a uniform random permutation of `n` points. Requires `n >= 1`.
pub fn random_cycle_type<R: Rng + ?Sized>(n: u64, rng: &mut R) -> CycleType {
    assert!(n >= 1, "n must be positive");
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(rng);
    cycle_type_of(&perm)
}

fn cycle_type_of(perm: &[u32]) -> CycleType {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i] as usize;
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    CycleType::new(parts).expect("n >= 1")
}

/// Uniform element of the group, by parity rejection for `A_n`.
pub fn random_group_element<R: Rng + ?Sized>(n: u64, group: Group, rng: &mut R) -> CycleType {
    loop {
        let t = random_cycle_type(n, rng);
        if group == Group::Symmetric || t.is_even() {
            return t;
        }
    }
}

/// Order of `g^r` for `g` of type `t`.
pub fn power_order(t: &CycleType, r: u64) -> BigUint {
    t.power_order(r)
}

/// Seeded stream for chunk `index`.
pub fn chunk_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Empirical frequency of an event.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleStats {
    pub trials: u64,
    pub successes: u64,
    pub estimate: ExactRational,
    /// `sqrt(p (1 - p) / trials)` at the estimate.
    pub std_error: f64,
    pub target_exact: Option<ExactRational>,
}

impl SampleStats {
    pub fn new(trials: u64, successes: u64, target_exact: Option<ExactRational>) -> Self {
        assert!(trials > 0 && successes <= trials);
        let p = successes as f64 / trials as f64;
        SampleStats {
            trials,
            successes,
            estimate: ratio(successes, trials),
            std_error: (p * (1.0 - p) / trials as f64).sqrt(),
            target_exact,
        }
    }

    /// `|estimate - target|` in units of the target's binomial standard deviation.
    pub fn sigmas_from_target(&self) -> Option<f64> {
        let target = self.target_exact.as_ref()?.to_f64()?;
        let sd = (target * (1.0 - target) / self.trials as f64).sqrt();
        let diff = (self.successes as f64 / self.trials as f64 - target).abs();
        Some(if sd == 0.0 {
            if diff == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            diff / sd
        })
    }

    pub fn within_sigmas(&self, k: f64) -> bool {
        self.sigmas_from_target().is_some_and(|s| s <= k)
    }
}

impl fmt::Display for SampleStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{} = {} (se {:.3e})",
            self.successes,
            self.trials,
            format_decimal(&self.estimate, 6),
            self.std_error
        )?;
        if let Some(t) = &self.target_exact {
            write!(
                f,
                ", exact {} ({})",
                format_fraction(t),
                format_decimal(t, 6)
            )?;
            if let Some(s) = self.sigmas_from_target() {
                write!(f, ", {s:.2} sigma")?;
            }
        }
        Ok(())
    }
}

/// What a sample is tested for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Event {
    /// Order divides `m`.
    OrderDivides(u64),
    /// Exactly the target type of the case.
    CaseA(CaseSpec),
    /// `g^(s r) = 1` and `|g^r| = s`.
    CaseB(CaseSpec),
    /// Exactly the given cycle type.
    Type(CycleType),
    Even,
}

impl Event {
    pub fn holds(&self, t: &CycleType) -> bool {
        match self {
            Event::OrderDivides(m) => t.order_divides(*m),
            Event::CaseA(spec) => t == &spec.cycle_type,
            Event::CaseB(spec) => in_b(spec, t),
            Event::Type(target) => t == target,
            Event::Even => t.is_even(),
        }
    }

    /// Exact probability of the event in `group` on `n` points, where available.
    pub fn exact(&self, n: u64, group: Group) -> Result<Option<ExactRational>> {
        let mut table = ProportionTable::new();
        Ok(match self {
            Event::OrderDivides(m) => Some(match group {
                Group::Symmetric => table.get(n as i64, *m, false),
                Group::Alternating => prop_alternating(&mut table, n, *m)?,
            }),
            Event::CaseA(spec) if spec.computation_group() == group && spec.n == n => {
                Some(prob_a(spec))
            }
            Event::CaseB(spec) if spec.computation_group() == group && spec.n == n => {
                Some(prob_b(&mut table, spec)?)
            }
            Event::Type(t) if t.n() == n => Some(match group {
                Group::Symmetric => t.class_proportion(),
                Group::Alternating if t.is_even() => t.class_proportion() * integer(2),
                Group::Alternating => ExactRational::zero(),
            }),
            Event::Even if n >= 2 => Some(match group {
                Group::Symmetric => ratio(1, 2),
                Group::Alternating => integer(1),
            }),
            Event::Even => Some(integer(1)),
            _ => None,
        })
    }
}

fn in_b(spec: &CaseSpec, t: &CycleType) -> bool {
    let s = spec.power_order;
    t.order_divides(s * spec.r) && t.power_order_is(spec.r, s)
}

fn chunks(trials: u64) -> Vec<(u64, u64)> {
    (0..trials.div_ceil(CHUNK))
        .map(|i| (i, CHUNK.min(trials - i * CHUNK)))
        .collect()
}

/// Empirical frequency of `event` over `trials` uniform draws from `group` on `n` points.
pub fn estimate_event(
    event: &Event,
    group: Group,
    n: u64,
    trials: u64,
    seed: u64,
) -> Result<SampleStats> {
    if n == 0 {
        return Err(Error::NonPositive { what: "n" });
    }
    if trials == 0 {
        return Err(Error::NonPositive { what: "trials" });
    }
    let successes: u64 = chunks(trials)
        .into_par_iter()
        .map(|(index, count)| {
            let mut rng = chunk_rng(seed, index);
            (0..count)
                .filter(|_| event.holds(&random_group_element(n, group, &mut rng)))
                .count() as u64
        })
        .sum();
    Ok(SampleStats::new(trials, successes, event.exact(n, group)?))
}

/// Frequencies of every cycle type met in `trials` draws from `S_n`, sorted by type.
pub fn cycle_type_frequencies(n: u64, trials: u64, seed: u64) -> Vec<(CycleType, SampleStats)> {
    let mut counts: std::collections::BTreeMap<CycleType, u64> = Default::default();
    let per_chunk: Vec<Vec<CycleType>> = chunks(trials)
        .into_par_iter()
        .map(|(index, count)| {
            let mut rng = chunk_rng(seed, index);
            (0..count).map(|_| random_cycle_type(n, &mut rng)).collect()
        })
        .collect();
    for t in per_chunk.into_iter().flatten() {
        *counts.entry(t).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(t, c)| {
            let exact = t.class_proportion();
            (t, SampleStats::new(trials, c, Some(exact)))
        })
        .collect()
}

/// Outcome of [`search_cost_sim`].
#[derive(Clone, Debug, PartialEq)]
pub struct SearchCost {
    pub trials: u64,
    pub total_draws: u64,
    pub mean_draws: f64,
    /// Standard error of `mean_draws`.
    pub std_error: f64,
    /// `1 / P(A)`.
    pub expected_draws: ExactRational,
    /// Among draws satisfying B, the fraction also in A, against the exact `P(A | B)`.
    pub acceptance: SampleStats,
}

impl SearchCost {
    /// `|mean - expected|` in units of the geometric standard error `sqrt((1 - p) / p^2 / trials)`.
    pub fn sigmas_from_expected(&self) -> f64 {
        let mean = self.expected_draws.to_f64().unwrap_or(f64::NAN);
        let p = 1.0 / mean;
        let sd = ((1.0 - p) / (p * p) / self.trials as f64).sqrt();
        if sd == 0.0 {
            return if self.mean_draws == mean {
                0.0
            } else {
                f64::INFINITY
            };
        }
        (self.mean_draws - mean).abs() / sd
    }
}

impl fmt::Display for SearchCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mean draws {:.4} (se {:.3e}) vs exact {} ({}), {:.2} sigma; acceptance {}",
            self.mean_draws,
            self.std_error,
            format_fraction(&self.expected_draws),
            format_decimal(&self.expected_draws, 6),
            self.sigmas_from_expected(),
            self.acceptance
        )
    }
}

/// Repeats the search loop `trials` times: draw random elements of the case's
/// group, keep those passing the power test for B, stop at the first one of
/// type A. Reports the mean number of draws against `1 / P(A)`.
pub fn search_cost_sim(spec: &CaseSpec, trials: u64, seed: u64) -> Result<SearchCost> {
    if trials == 0 {
        return Err(Error::NonPositive { what: "trials" });
    }
    let group = spec.computation_group();
    let n = spec.n;
    // (draws, sum of squared draws, B hits, A hits)
    let totals = chunks(trials)
        .into_par_iter()
        .map(|(index, count)| {
            let mut rng = chunk_rng(seed, index);
            let mut acc = (0u64, 0u128, 0u64, 0u64);
            for _ in 0..count {
                let mut draws = 0u64;
                loop {
                    draws += 1;
                    let t = random_group_element(n, group, &mut rng);
                    if !in_b(spec, &t) {
                        continue;
                    }
                    acc.2 += 1;
                    if t == spec.cycle_type {
                        acc.3 += 1;
                        break;
                    }
                }
                acc.0 += draws;
                acc.1 += u128::from(draws) * u128::from(draws);
            }
            acc
        })
        .reduce(
            || (0, 0, 0, 0),
            |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3),
        );
    let (draws, squares, b_hits, a_hits) = totals;
    let mean = draws as f64 / trials as f64;
    let var = (squares as f64 / trials as f64 - mean * mean).max(0.0);
    let mut table = ProportionTable::new();
    let exact = cond_prob(&mut table, spec)?;
    let p_a = exact.p_a.clone();
    if p_a.is_zero() {
        return Err(Error::ImpossibleEvent { case: spec.case, n });
    }
    Ok(SearchCost {
        trials,
        total_draws: draws,
        mean_draws: mean,
        std_error: (var / trials as f64).sqrt(),
        expected_draws: integer(1) / p_a,
        acceptance: SampleStats::new(b_hits, a_hits, Some(exact.p_a_given_b)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognition::case_params;

    #[test]
    fn deterministic_given_seed() {
        let e = Event::OrderDivides(6);
        let a = estimate_event(&e, Group::Symmetric, 8, 40_000, 7).unwrap();
        let b = estimate_event(&e, Group::Symmetric, 8, 40_000, 7).unwrap();
        assert_eq!(a, b);
        let c = estimate_event(&e, Group::Symmetric, 8, 40_000, 8).unwrap();
        assert_ne!(a.successes, c.successes);
    }

    #[test]
    fn trivial_groups() {
        let mut rng = chunk_rng(1, 0);
        for _ in 0..100 {
            assert_eq!(random_cycle_type(1, &mut rng).parts(), &[1]);
        }
        let s = estimate_event(
            &Event::Type(CycleType::new(vec![2]).unwrap()),
            Group::Symmetric,
            2,
            100_000,
            3,
        )
        .unwrap();
        assert_eq!(s.target_exact, Some(ratio(1, 2)));
        assert!(s.within_sigmas(4.0), "{s}");
    }

    #[test]
    fn power_order_examples() {
        let t = CycleType::new(vec![6, 2]).unwrap();
        assert_eq!(power_order(&t, 2), BigUint::from(3u32));
        let t = CycleType::new(vec![2, 3, 8]).unwrap();
        assert_eq!(power_order(&t, 8), BigUint::from(3u32));
    }

    #[test]
    fn alternating_draws_are_even() {
        let mut rng = chunk_rng(5, 0);
        for _ in 0..1000 {
            assert!(random_group_element(7, Group::Alternating, &mut rng).is_even());
        }
    }

    #[test]
    fn search_loop_small_case() {
        let spec = case_params(4, 9).unwrap();
        let cost = search_cost_sim(&spec, 20_000, 11).unwrap();
        assert_eq!(cost.expected_draws, ratio(9, 2));
        assert!(cost.sigmas_from_expected() <= 4.0, "{cost}");
        assert!(cost.acceptance.within_sigmas(4.0), "{cost}");
    }
}
