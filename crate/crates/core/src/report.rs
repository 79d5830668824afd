//! Verification outcome records and their CSV rendering.

use std::fmt;
use std::io::Write;

use serde::Serialize;

use crate::numeric::{format_decimal, format_fraction};
use crate::{ExactRational, Result};

/// Which inequality a [`BoundReport`] checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// `P(n,m) <= 1/n + gamma(m) m / n^2`.
    Theorem1,
    /// `Shat(d,m) <= (d-1)(d-2)(1 + gamma m / d)` for a divisor `d` of `m`.
    ShatCondition,
    /// `S(n,m) <= (n-1)(n-2)(1 + gamma m / n)` for one of the two exceptional `m`.
    ExceptionalM,
    /// Divisor-count bound `d(n) <= c n^(1/k)`, compared in powered form.
    DivisorCount,
    /// Sum of `(d-1)(d-2)` over divisors in `[a, b]`.
    SumQuadratic,
    /// Classification of the divisors of `2r` or `3r` that are at most `n`.
    AdmissibleDivisors,
    /// Upper bound `f(m, c) <= 1` for large `m`.
    LargeMFunction,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Theorem1 => "theorem1",
            BoundKind::ShatCondition => "shat-condition",
            BoundKind::ExceptionalM => "exceptional-m",
            BoundKind::DivisorCount => "divisor-count",
            BoundKind::SumQuadratic => "sum-quadratic",
            BoundKind::AdmissibleDivisors => "admissible-divisors",
            BoundKind::LargeMFunction => "large-m-function",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one exact comparison `lhs <= rhs`.
///
/// When the underlying bound involves a root (`c n^(1/3)`, `sqrt(gamma m)`),
/// both sides are stored in powered form so that the comparison stays exact;
/// `note` says which form was used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub n: Option<u64>,
    pub m: Option<u64>,
    pub d: Option<u64>,
    pub lhs: ExactRational,
    pub rhs: ExactRational,
    pub passed: bool,
    /// Description of the failing comparison; `None` when `passed`.
    pub witness: Option<String>,
    pub note: Option<String>,
}

impl BoundReport {
    pub(crate) fn compare(kind: BoundKind, lhs: ExactRational, rhs: ExactRational) -> Self {
        let passed = lhs <= rhs;
        BoundReport {
            kind,
            n: None,
            m: None,
            d: None,
            witness: (!passed)
                .then(|| format!("{} > {}", format_fraction(&lhs), format_fraction(&rhs))),
            lhs,
            rhs,
            passed,
            note: None,
        }
    }

    pub(crate) fn with_n(mut self, n: u64) -> Self {
        self.n = Some(n);
        self
    }

    pub(crate) fn with_m(mut self, m: u64) -> Self {
        self.m = Some(m);
        self
    }

    pub(crate) fn with_d(mut self, d: u64) -> Self {
        self.d = Some(d);
        self
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Sort key used for deterministic output ordering.
    pub fn sort_key(&self) -> (BoundKind, u64, u64, u64) {
        (
            self.kind,
            self.n.unwrap_or(0),
            self.m.unwrap_or(0),
            self.d.unwrap_or(0),
        )
    }

    pub fn to_row(&self) -> BoundRow {
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        BoundRow {
            kind: self.kind.as_str(),
            n: opt(self.n),
            m: opt(self.m),
            d: opt(self.d),
            lhs_num: self.lhs.numer().to_string(),
            lhs_den: self.lhs.denom().to_string(),
            rhs_num: self.rhs.numer().to_string(),
            rhs_den: self.rhs.denom().to_string(),
            passed: self.passed,
        }
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for (label, v) in [("n", self.n), ("m", self.m), ("d", self.d)] {
            if let Some(v) = v {
                write!(f, " {label}={v}")?;
            }
        }
        write!(
            f,
            ": {} ({}) <= {} ({}) {}",
            format_fraction(&self.lhs),
            format_decimal(&self.lhs, 6),
            format_fraction(&self.rhs),
            format_decimal(&self.rhs, 6),
            if self.passed { "PASS" } else { "FAIL" }
        )?;
        if let Some(note) = &self.note {
            write!(f, " [{note}]")?;
        }
        Ok(())
    }
}

/// CSV/JSON row: `kind, n, m, d, lhs_num, lhs_den, rhs_num, rhs_den, passed`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub kind: &'static str,
    pub n: String,
    pub m: String,
    pub d: String,
    pub lhs_num: String,
    pub lhs_den: String,
    pub rhs_num: String,
    pub rhs_den: String,
    pub passed: bool,
}

/// Writes reports as CSV with a header row, in the given order.
pub fn write_bound_csv<W: Write>(reports: &[BoundReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if reports.is_empty() {
        w.write_record([
            "kind", "n", "m", "d", "lhs_num", "lhs_den", "rhs_num", "rhs_den", "passed",
        ])?;
    }
    for r in reports {
        w.serialize(r.to_row())?;
    }
    w.flush()?;
    Ok(())
}
