//! The ten cycle-type cases used to recognise `S_n` and `A_n`, and the exact
//! conditional probabilities `P(A | B)` attached to them.
//!
//! Event A: `g` has exactly the target cycle type. Event B: `g^(s r) = 1` and
//! `|g^r| = s`, i.e. the order of `g` divides `s r` but not `r`.
//! Cases 6-9 are evaluated in `S_n`: both events lie inside `A_n` there, so the
//! conditional probability is the same in either group.

use std::fmt;
use std::io::Write;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::divisors::{divisor_list, gamma_parts};
use crate::numeric::{format_decimal, format_fraction, integer, ratio};
use crate::proportions::{for_each_partition, prop_alternating, CycleType, ProportionTable};
use crate::report::{BoundKind, BoundReport};
use crate::{Error, ExactRational, Result};

/// Ambient group of a random element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Group {
    Symmetric,
    Alternating,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::Symmetric => "S",
            Group::Alternating => "A",
        })
    }
}

pub const CASES: std::ops::RangeInclusive<u8> = 1..=10;

/// One row of the case table, instantiated at a concrete `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseSpec {
    pub case: u8,
    pub n: u64,
    pub r: u64,
    /// Target type including fixed points.
    pub cycle_type: CycleType,
    /// `s` with `|g^r| = s` on event B.
    pub power_order: u64,
    /// Group named by the table.
    pub group: Group,
}

impl CaseSpec {
    /// Group the probabilities are computed in. Differs from `group` for cases 6-9.
    pub fn computation_group(&self) -> Group {
        match self.case {
            6..=9 => Group::Symmetric,
            _ => self.group,
        }
    }

    /// Non-trivial cycles of the target type, e.g. `[3, r]`.
    pub fn moved_cycles(&self) -> Vec<u64> {
        let mut c: Vec<u64> = self
            .cycle_type
            .parts()
            .iter()
            .copied()
            .filter(|&p| p > 1)
            .collect();
        c.sort_unstable();
        c
    }
}

fn check_case(case: u8) -> Result<()> {
    if !CASES.contains(&case) {
        return Err(Error::Precondition(format!(
            "case must be in 1..=10, got {case}"
        )));
    }
    Ok(())
}

fn min_n(case: u8) -> u64 {
    match case {
        1 | 4 | 5 => 5,
        _ => 8,
    }
}

fn congruence(case: u8, n: u64) -> std::result::Result<(), &'static str> {
    let ok = match case {
        1 => true,
        2 | 4 => n % 2 == 1,
        3 | 5 => n % 2 == 0,
        6 => matches!(n % 6, 2 | 4),
        7 => matches!(n % 6, 3 | 5),
        8 => n % 6 == 0,
        _ => n % 6 == 1,
    };
    if ok {
        return Ok(());
    }
    Err(match case {
        2 | 4 => "n must be odd",
        3 | 5 => "n must be even",
        6 => "n must be 2 or 4 mod 6",
        7 => "n must be 3 or 5 mod 6",
        8 => "n must be 0 mod 6",
        _ => "n must be 1 mod 6",
    })
}

fn r_offset(case: u8) -> u64 {
    [0, 2, 3, 0, 1, 3, 4, 5, 6, 5][case as usize - 1]
}

/// Whether `(case, n)` is admissible, without building the spec.
pub fn is_admissible(case: u8, n: u64) -> bool {
    CASES.contains(&case) && n >= min_n(case) && congruence(case, n).is_ok()
}

/// Instantiates the case at `n`.
pub fn case_params(case: u8, n: u64) -> Result<CaseSpec> {
    check_case(case)?;
    if n < min_n(case) {
        return Err(Error::Inadmissible {
            case,
            n,
            reason: format!("n must be at least {}", min_n(case)),
        });
    }
    congruence(case, n).map_err(|reason| Error::Inadmissible {
        case,
        n,
        reason: reason.into(),
    })?;
    let r = n - r_offset(case);
    let (cycles, s, group): (Vec<u64>, u64, Group) = match case {
        1 => (vec![r], 1, Group::Symmetric),
        2 | 3 => (vec![2, r], 2, Group::Symmetric),
        4 | 5 => (vec![r], 1, Group::Alternating),
        6..=9 => (vec![3, r], 3, Group::Alternating),
        _ => (vec![2, 3, r], 3, Group::Alternating),
    };
    Ok(CaseSpec {
        case,
        n,
        r,
        cycle_type: CycleType::with_fixed_points(n, &cycles)?,
        power_order: s,
        group,
    })
}

/// Closed form of `P(A)` in the computation group.
fn prob_a_closed(spec: &CaseSpec) -> ExactRational {
    let r = spec.r;
    match spec.case {
        1 => ratio(1, r),
        4 | 5 => ratio(2, r),
        2 | 3 => ratio(1, 2 * r),
        6 | 7 | 10 => ratio(1, 3 * r),
        8 => ratio(1, 6 * r),
        _ => ratio(1, 18 * r),
    }
}

/// Proportion of the computation group with exactly the target cycle type.
/// Cross-checked against `1 / |C_{S_n}(g)|`, doubled in `A_n`.
pub fn prob_a(spec: &CaseSpec) -> ExactRational {
    let closed = prob_a_closed(spec);
    let mut from_class = spec.cycle_type.class_proportion();
    if spec.computation_group() == Group::Alternating {
        assert!(
            spec.cycle_type.is_even(),
            "target type of case {} is odd",
            spec.case
        );
        from_class *= integer(2);
    }
    assert_eq!(closed, from_class, "case {} at n = {}", spec.case, spec.n);
    closed
}

/// `P(B)` in the computation group.
pub fn prob_b(table: &mut ProportionTable, spec: &CaseSpec) -> Result<ExactRational> {
    let n = spec.n;
    let r = spec.r;
    let s = spec.power_order;
    Ok(match (spec.case, spec.computation_group()) {
        (1, _) => table.get(n as i64, n, false),
        (4 | 5, _) => prop_alternating(table, n, r)?,
        (_, Group::Symmetric) => table.get(n as i64, s * r, false) - table.get(n as i64, r, false),
        (_, Group::Alternating) => {
            prop_alternating(table, n, s * r)? - prop_alternating(table, n, r)?
        }
    })
}

/// `P(g has an r-cycle and B)` in the computation group. Requires `2r > n`,
/// so the r-cycle is unique and the other `n - r` points are enumerated directly.
pub fn prob_has_r_cycle(spec: &CaseSpec) -> Result<ExactRational> {
    let n = spec.n;
    let r = spec.r;
    let s = spec.power_order;
    if 2 * r <= n {
        return Err(Error::Precondition(format!(
            "need 2r > n, got n = {n}, r = {r}"
        )));
    }
    let rest = n - r;
    let allowed: Vec<u64> = (1..=rest.max(1)).collect();
    let alternating = spec.computation_group() == Group::Alternating;
    let mut total = ExactRational::zero();
    let mut visit = |mults: &[(u64, u64)]| {
        let mut parts = vec![r];
        for &(d, k) in mults {
            parts.extend(std::iter::repeat(d).take(k as usize));
        }
        let t = CycleType::new(parts).expect("non-empty");
        let in_b = t.order_divides(s * r) && t.power_order_is(r, s);
        if !in_b || (alternating && !t.is_even()) {
            return;
        }
        let mut p = t.class_proportion();
        if alternating {
            p *= integer(2);
        }
        total += p;
    };
    if rest == 0 {
        visit(&[]);
    } else {
        for_each_partition(rest, &allowed, &mut visit);
    }
    Ok(total)
}

/// `base - coeff / n^(2/3)`, the asymptotic-form lower bound of a case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticBound {
    pub base: ExactRational,
    pub coeff: ExactRational,
    /// The bound is positive, i.e. `base^3 n^2 > coeff^3`.
    pub positive: bool,
    /// `value >= base - coeff / n^(2/3)`, decided on cubes.
    pub holds: bool,
}

impl AsymptoticBound {
    fn evaluate(base: ExactRational, coeff: ExactRational, n: u64, value: &ExactRational) -> Self {
        let n2 = integer(n) * integer(n);
        let cube = |x: &ExactRational| x * x * x;
        let positive = cube(&base) * &n2 > cube(&coeff);
        let gap = &base - value;
        // value >= base - coeff / n^(2/3)  <=>  gap <= coeff / n^(2/3)
        let holds = gap <= ExactRational::zero() || cube(&gap) * &n2 <= cube(&coeff);
        AsymptoticBound {
            base,
            coeff,
            positive,
            holds,
        }
    }
}

impl fmt::Display for AsymptoticBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} - {}/n^(2/3)",
            format_fraction(&self.base),
            format_fraction(&self.coeff)
        )
    }
}

fn asymptotic_for(spec: &CaseSpec, value: &ExactRational) -> AsymptoticBound {
    let g = |m: u64| {
        let (num, den) = gamma_parts(m);
        ratio(num, den)
    };
    let (base, a, b, gm) = match spec.case {
        1 | 4 | 5 => (integer(1), 8, 15, g(spec.n)),
        2 | 3 => (integer(1), 18, 76, g(2 * spec.r)),
        9 => (ratio(1, 2), 46, 228, g(3 * spec.r)),
        _ => (integer(1), 98, 839, g(3 * spec.r)),
    };
    let coeff = integer(a) + integer(b) * gm;
    AsymptoticBound::evaluate(base, coeff, spec.n, value)
}

/// The printed lower-bound table for cases 6-10: `(bound, case, n, r)`.
pub const TABLE2_ENTRIES: [(u64, u64, u8, u64, u64); 4] = [
    (3, 10, 9, 31, 25),
    (3, 10, 10, 185, 80),
    (3, 20, 10, 13, 8),
    (3, 20, 10, 25, 20),
];

/// Absolute lower bound on `P(A | B)` claimed for the case at `n`.
pub fn absolute_lower_bound(spec: &CaseSpec) -> ExactRational {
    let n = spec.n;
    match spec.case {
        1 if matches!(n, 6 | 8 | 12 | 24) => ratio(2, 7),
        1 | 4 | 5 => ratio(1, 2),
        2 | 3 if matches!(n, 11 | 17 | 18) => ratio(1, 4),
        2 | 3 => ratio(1, 3),
        case => TABLE2_ENTRIES
            .iter()
            .find(|&&(_, _, c, tn, tr)| c == case && tn == n && tr == spec.r)
            .map(|&(num, den, ..)| ratio(num, den))
            .unwrap_or_else(|| ratio(1, 3)),
    }
}

/// Exact `P(A)`, `P(B)` and `P(A | B)` for one case, with the claimed bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondProbReport {
    pub case: u8,
    pub n: u64,
    pub r: u64,
    pub group: Group,
    pub p_a: ExactRational,
    pub p_b: ExactRational,
    pub p_a_given_b: ExactRational,
    /// `P(g has an r-cycle | B)`; equals `p_a_given_b` except in case 9.
    pub p_r_cycle_given_b: ExactRational,
    /// Absolute lower bound.
    pub bound: ExactRational,
    pub asymptotic: AsymptoticBound,
    /// Absolute bound holds, and the asymptotic one wherever it is positive.
    pub passed: bool,
}

impl CondProbReport {
    pub fn absolute_passed(&self) -> bool {
        self.p_a_given_b >= self.bound
    }

    pub fn to_row(&self) -> CondProbRow {
        CondProbRow {
            case: self.case,
            n: self.n,
            r: self.r,
            group: self.group.to_string(),
            p_a: format_fraction(&self.p_a),
            p_a_decimal: format_decimal(&self.p_a, 6),
            p_b: format_fraction(&self.p_b),
            p_b_decimal: format_decimal(&self.p_b, 6),
            p_a_given_b: format_fraction(&self.p_a_given_b),
            p_a_given_b_decimal: format_decimal(&self.p_a_given_b, 6),
            p_r_cycle_given_b: format_fraction(&self.p_r_cycle_given_b),
            bound: format_fraction(&self.bound),
            asymptotic: match (self.asymptotic.positive, self.asymptotic.holds) {
                (false, _) => "vacuous",
                (true, true) => "pass",
                (true, false) => "fail",
            },
            passed: self.passed,
        }
    }
}

impl fmt::Display for CondProbReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "case {} n={} r={} ({}): P(A|B) = {} ({}) >= {} {}",
            self.case,
            self.n,
            self.r,
            self.group,
            format_fraction(&self.p_a_given_b),
            format_decimal(&self.p_a_given_b, 6),
            format_fraction(&self.bound),
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

/// CSV/JSON row for a [`CondProbReport`].
#[derive(Clone, Debug, Serialize)]
pub struct CondProbRow {
    pub case: u8,
    pub n: u64,
    pub r: u64,
    pub group: String,
    pub p_a: String,
    pub p_a_decimal: String,
    pub p_b: String,
    pub p_b_decimal: String,
    pub p_a_given_b: String,
    pub p_a_given_b_decimal: String,
    pub p_r_cycle_given_b: String,
    pub bound: String,
    pub asymptotic: &'static str,
    pub passed: bool,
}

pub fn write_cond_prob_csv<W: Write>(reports: &[CondProbReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if reports.is_empty() {
        w.write_record([
            "case",
            "n",
            "r",
            "group",
            "p_a",
            "p_a_decimal",
            "p_b",
            "p_b_decimal",
            "p_a_given_b",
            "p_a_given_b_decimal",
            "p_r_cycle_given_b",
            "bound",
            "asymptotic",
            "passed",
        ])?;
    }
    for r in reports {
        w.serialize(r.to_row())?;
    }
    w.flush()?;
    Ok(())
}

/// `P(A | B) = P(A) / P(B)` with the applicable bounds.
pub fn cond_prob(table: &mut ProportionTable, spec: &CaseSpec) -> Result<CondProbReport> {
    let p_a = prob_a(spec);
    let p_b = prob_b(table, spec)?;
    if p_b.is_zero() {
        return Err(Error::ImpossibleEvent {
            case: spec.case,
            n: spec.n,
        });
    }
    let p_a_given_b = &p_a / &p_b;
    let p_r_cycle_given_b = prob_has_r_cycle(spec)? / &p_b;
    let bound = absolute_lower_bound(spec);
    let asymptotic = asymptotic_for(spec, &p_a_given_b);
    let passed = p_a_given_b >= bound && (!asymptotic.positive || asymptotic.holds);
    Ok(CondProbReport {
        case: spec.case,
        n: spec.n,
        r: spec.r,
        group: spec.computation_group(),
        p_a,
        p_b,
        p_a_given_b,
        p_r_cycle_given_b,
        bound,
        asymptotic,
        passed,
    })
}

/// One report per admissible `n` in `n_lo..=n_hi`, ascending.
pub fn verify_theorem2(case: u8, n_lo: u64, n_hi: u64) -> Result<Vec<CondProbReport>> {
    check_case(case)?;
    if n_lo > n_hi {
        return Err(Error::Precondition(format!("empty range {n_lo}..{n_hi}")));
    }
    let ns: Vec<u64> = (n_lo..=n_hi).filter(|&n| is_admissible(case, n)).collect();
    ns.par_iter()
        .map(|&n| {
            let spec = case_params(case, n)?;
            let mut table = ProportionTable::new();
            cond_prob(&mut table, &spec)
        })
        .collect()
}

/// Outcome for one printed lower-bound table entry.
#[derive(Clone, Debug)]
pub struct Table2Row {
    pub case: u8,
    pub n: u64,
    pub r: u64,
    pub bound: ExactRational,
    /// `None` when `(case, n, r)` is not an admissible instance.
    pub report: Option<CondProbReport>,
    pub note: Option<String>,
}

impl Table2Row {
    pub fn passed(&self) -> bool {
        self.report
            .as_ref()
            .is_some_and(|rep| rep.p_a_given_b >= self.bound)
    }
}

/// Evaluates the four printed entries. Inadmissible entries are reported, not computed.
pub fn table2() -> Vec<Table2Row> {
    TABLE2_ENTRIES
        .iter()
        .map(|&(num, den, case, n, r)| {
            let bound = ratio(num, den);
            let spec = match case_params(case, n) {
                Ok(spec) if spec.r == r => spec,
                Ok(spec) => {
                    return Table2Row {
                        case,
                        n,
                        r,
                        bound,
                        report: None,
                        note: Some(format!("case {case} at n = {n} has r = {}", spec.r)),
                    }
                }
                Err(e) => {
                    let hint = (r + r_offset(case), case);
                    let note = if is_admissible(case, hint.0) {
                        format!("{e}; r = {r} occurs in case {case} at n = {}", hint.0)
                    } else {
                        e.to_string()
                    };
                    return Table2Row {
                        case,
                        n,
                        r,
                        bound,
                        report: None,
                        note: Some(note),
                    };
                }
            };
            let mut table = ProportionTable::new();
            let report = cond_prob(&mut table, &spec).ok();
            Table2Row {
                case,
                n,
                r,
                bound,
                report,
                note: None,
            }
        })
        .collect()
}

/// Classifies every divisor `d <= n` of `2r` (cases 2, 3) or `3r` (cases 6-10).
///
/// Cases 2, 3: `d = r`, `d = 2r/3` or `d <= 2r/5`. Cases 6-9: `d = r`,
/// `d <= r/5` or `d = 3r/y` with `y` in {5, 7, 11, 13}. Case 10: `d = r`,
/// `d = 3r/4`, `d <= 3r/5`, or the single triple `(n, r, d) = (13, 8, 12)`.
/// `lhs` counts unclassified divisors, `rhs` is 0.
pub fn admissible_divisor_check(case: u8, n: u64) -> Result<BoundReport> {
    check_case(case)?;
    let floor = match case {
        2 | 3 => 7,
        6..=10 => 8,
        _ => {
            return Err(Error::Precondition(format!(
                "divisor classification covers cases 2, 3 and 6-10, got {case}"
            )))
        }
    };
    if n < floor {
        return Err(Error::Inadmissible {
            case,
            n,
            reason: format!("n must be at least {floor}"),
        });
    }
    congruence(case, n).map_err(|reason| Error::Inadmissible {
        case,
        n,
        reason: reason.into(),
    })?;
    let r = n - r_offset(case);
    let m = if case <= 3 { 2 * r } else { 3 * r };
    let mut labels = Vec::new();
    let mut unclassified = 0u64;
    let mut exceptional = false;
    for d in divisor_list(m).into_iter().take_while(|&d| d <= n) {
        let label = match case {
            2 | 3 if d == r => "r",
            2 | 3 if 3 * d == 2 * r => "2r/3",
            2 | 3 if 5 * d <= 2 * r => "small",
            6..=9 if d == r => "r",
            6..=9 if 5 * d <= r => "small",
            6..=9 if [5, 7, 11, 13].iter().any(|&y| d * y == 3 * r) => "3r/y",
            10 if d == r => "r",
            10 if 4 * d == 3 * r => "3r/4",
            10 if 5 * d <= 3 * r => "small",
            10 if (n, r, d) == (13, 8, 12) => {
                exceptional = true;
                "exceptional"
            }
            _ => {
                unclassified += 1;
                "unclassified"
            }
        };
        labels.push(format!("{d}:{label}"));
    }
    let mut report = BoundReport::compare(
        BoundKind::AdmissibleDivisors,
        integer(unclassified),
        integer(0),
    )
    .with_n(n)
    .with_m(m);
    let mut note = format!("case {case}, r = {r}; {}", labels.join(" "));
    if exceptional {
        note.push_str("; exceptional triple (13, 8, 12)");
    }
    report.note = Some(note);
    Ok(report)
}

/// `x / (x + y) > 1 - y / x` for positive `x`, `y`.
pub fn fact_inequality_holds(x: &ExactRational, y: &ExactRational) -> bool {
    x / (x + y) > ExactRational::one() - y / x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_parameters() {
        let s = case_params(6, 14).unwrap();
        assert_eq!(s.r, 11);
        let s = case_params(1, 9).unwrap();
        assert_eq!(s.r, 9);
        assert_eq!(s.cycle_type.parts(), &[9]);
        let s = case_params(10, 13).unwrap();
        assert_eq!(s.r, 8);
        assert_eq!(s.moved_cycles(), vec![2, 3, 8]);
        assert_eq!(s.cycle_type.parts(), &[8, 3, 2]);
        assert!(case_params(2, 10).is_err());
        assert!(case_params(2, 7).is_err());
        assert!(case_params(10, 185).is_err());
        assert!(case_params(11, 20).is_err());
        for case in CASES {
            for n in 8..60 {
                if let Ok(s) = case_params(case, n) {
                    assert!(s.r >= 2);
                    assert_eq!(s.cycle_type.n(), n);
                }
            }
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(prob_a(&case_params(1, 5).unwrap()), ratio(1, 5));
        assert_eq!(prob_a(&case_params(9, 13).unwrap()), ratio(1, 126));
        assert_eq!(prob_a(&case_params(10, 13).unwrap()), ratio(1, 24));
    }

    #[test]
    fn small_conditionals() {
        let mut t = ProportionTable::new();
        let spec = case_params(1, 5).unwrap();
        assert_eq!(prob_b(&mut t, &spec).unwrap(), ratio(5, 24));
        let rep = cond_prob(&mut t, &spec).unwrap();
        assert_eq!(rep.p_a_given_b, ratio(24, 25));
        assert!(rep.passed);
        let spec = case_params(4, 5).unwrap();
        assert_eq!(prob_b(&mut t, &spec).unwrap(), ratio(5, 12));
        let spec = case_params(2, 9).unwrap();
        assert_eq!(
            prob_b(&mut t, &spec).unwrap(),
            t.get(9, 14, false) - t.get(9, 7, false)
        );
    }

    #[test]
    fn r_cycle_variant_differs_only_in_case_nine() {
        let mut t = ProportionTable::new();
        for case in CASES {
            for n in 8..40 {
                let Ok(spec) = case_params(case, n) else {
                    continue;
                };
                let rep = cond_prob(&mut t, &spec).unwrap();
                if case == 9 {
                    assert!(rep.p_r_cycle_given_b > rep.p_a_given_b);
                } else {
                    assert_eq!(rep.p_r_cycle_given_b, rep.p_a_given_b, "case {case}, n {n}");
                }
            }
        }
    }

    #[test]
    fn lower_bound_table_flags_inadmissible_row() {
        let rows = table2();
        assert_eq!(rows.len(), 4);
        let bad = &rows[1];
        assert!(bad.report.is_none());
        assert!(bad.note.as_deref().unwrap().contains("n = 85"));
        assert!(rows[2].passed());
        assert!(rows[3].passed());
    }

    #[test]
    fn divisor_classification() {
        let r = admissible_divisor_check(2, 9).unwrap();
        assert!(r.passed);
        assert!(r.note.as_deref().unwrap().contains("7:r"));
        let r = admissible_divisor_check(10, 13).unwrap();
        assert!(r.passed);
        assert!(r.note.as_deref().unwrap().contains("12:exceptional"));
        let r = admissible_divisor_check(6, 14).unwrap();
        assert!(r.note.as_deref().unwrap().ends_with("1:small 3:3r/y 11:r"));
        assert!(admissible_divisor_check(1, 9).is_err());
        assert!(admissible_divisor_check(2, 10).is_err());
    }
}
