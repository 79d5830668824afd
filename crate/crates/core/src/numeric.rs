//! Exact-arithmetic helpers: rational construction, decimal rendering and
//! certified interval enclosures for square and cube roots.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::ExactRational;

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExactRational {
    ExactRational::new(num.into(), den.into())
}

pub fn integer(v: impl Into<BigInt>) -> ExactRational {
    ExactRational::from_integer(v.into())
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).map(BigInt::from).product()
}

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), k as usize)
}

fn digit_len(v: &BigInt) -> i64 {
    if v.is_zero() {
        1
    } else {
        v.abs().to_str_radix(10).len() as i64
    }
}

/// Renders `x` with `sig` significant digits, rounding half away from zero.
/// Fixed notation is used for decimal exponents in `-5..sig`, scientific otherwise.
pub fn format_decimal(x: &ExactRational, sig: u32) -> String {
    assert!(sig >= 1);
    if x.is_zero() {
        return format!("{:.*}", (sig - 1) as usize, 0.0);
    }
    let neg = x.is_negative();
    let p = x.numer().abs();
    let q = x.denom().clone();

    // 10^e <= p/q < 10^(e+1)
    let mut e = digit_len(&p) - digit_len(&q);
    let ge_pow = |e: i64| -> bool {
        if e >= 0 {
            p >= &q * pow10(e as u32)
        } else {
            &p * pow10((-e) as u32) >= q
        }
    };
    if !ge_pow(e) {
        e -= 1;
    }

    let shift = sig as i64 - 1 - e;
    let (num, den) = if shift >= 0 {
        (&p * pow10(shift as u32), q.clone())
    } else {
        (p.clone(), &q * pow10((-shift) as u32))
    };
    let (mut digits, rem) = num.div_rem(&den);
    if rem * 2 >= den {
        digits += 1;
    }
    if digits == pow10(sig) {
        digits /= 10;
        e += 1;
    }
    let mantissa = digits.to_str_radix(10);
    debug_assert_eq!(mantissa.len(), sig as usize);

    let body = if (-5..sig as i64).contains(&e) {
        if e >= 0 {
            let int_len = (e + 1) as usize;
            let (a, b) = mantissa.split_at(int_len);
            if b.is_empty() {
                a.to_string()
            } else {
                format!("{a}.{b}")
            }
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), mantissa)
        }
    } else {
        let (a, b) = mantissa.split_at(1);
        if b.is_empty() {
            format!("{a}e{e}")
        } else {
            format!("{a}.{b}e{e}")
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Renders `x` as `p/q` (or `p` for integers).
pub fn format_fraction(x: &ExactRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// A closed interval `[lo, hi]` of rationals that is guaranteed to contain some
/// real quantity. Arithmetic propagates the guarantee.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    lo: ExactRational,
    hi: ExactRational,
}

/// Number of decimal digits used by root enclosures unless asked otherwise.
pub const DEFAULT_DIGITS: u32 = 40;

impl Enclosure {
    pub fn new(lo: ExactRational, hi: ExactRational) -> Self {
        assert!(lo <= hi, "empty enclosure");
        Enclosure { lo, hi }
    }

    pub fn exact(x: ExactRational) -> Self {
        Enclosure {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &ExactRational {
        &self.lo
    }

    pub fn hi(&self) -> &ExactRational {
        &self.hi
    }

    pub fn width(&self) -> ExactRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &ExactRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// True when every point of the enclosure is `<= x`.
    pub fn certainly_le(&self, x: &ExactRational) -> bool {
        &self.hi <= x
    }

    /// True when every point of the enclosure is `>= x`.
    pub fn certainly_ge(&self, x: &ExactRational) -> bool {
        &self.lo >= x
    }

    /// Encloses `x^(1/k)` for `x >= 0` and `k` in {2, 3}, to within `10^-digits`.
    fn root(x: &ExactRational, k: u32, digits: u32) -> Self {
        assert!(!x.is_negative(), "root of a negative rational");
        let a = x.numer().to_biguint().expect("non-negative");
        let b = x.denom().to_biguint().expect("positive");
        // x^(1/k) = (a * b^(k-1))^(1/k) / b
        let scale = num_traits::pow(BigUint::from(10u32), digits as usize);
        let radicand = &a
            * num_traits::pow(b.clone(), (k - 1) as usize)
            * num_traits::pow(scale.clone(), k as usize);
        let floor = radicand.nth_root(k);
        let exact = num_traits::pow(floor.clone(), k as usize) == radicand;
        let den = BigInt::from_biguint(Sign::Plus, &b * &scale);
        let lo = ExactRational::new(BigInt::from(floor.clone()), den.clone());
        let hi = if exact {
            lo.clone()
        } else {
            ExactRational::new(BigInt::from(floor + 1u32), den)
        };
        Enclosure { lo, hi }
    }

    pub fn sqrt(x: &ExactRational, digits: u32) -> Self {
        Self::root(x, 2, digits)
    }

    pub fn cbrt(x: &ExactRational, digits: u32) -> Self {
        Self::root(x, 3, digits)
    }

    pub fn recip(&self) -> Self {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "reciprocal of an enclosure containing zero"
        );
        Enclosure {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
    }

    pub fn midpoint(&self) -> ExactRational {
        (&self.lo + &self.hi) / integer(2)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            format_decimal(&self.lo, 12),
            format_decimal(&self.hi, 12)
        )
    }
}

impl Add for &Enclosure {
    type Output = Enclosure;
    fn add(self, rhs: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &Enclosure {
    type Output = Enclosure;
    fn sub(self, rhs: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Mul for &Enclosure {
    type Output = Enclosure;
    fn mul(self, rhs: &Enclosure) -> Enclosure {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Enclosure { lo, hi }
    }
}

impl Div for &Enclosure {
    type Output = Enclosure;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Enclosure) -> Enclosure {
        self * &rhs.recip()
    }
}

impl Add<&ExactRational> for &Enclosure {
    type Output = Enclosure;
    fn add(self, rhs: &ExactRational) -> Enclosure {
        Enclosure {
            lo: &self.lo + rhs,
            hi: &self.hi + rhs,
        }
    }
}

impl Sub<&ExactRational> for &Enclosure {
    type Output = Enclosure;
    fn sub(self, rhs: &ExactRational) -> Enclosure {
        Enclosure {
            lo: &self.lo - rhs,
            hi: &self.hi - rhs,
        }
    }
}

impl Mul<&ExactRational> for &Enclosure {
    type Output = Enclosure;
    fn mul(self, rhs: &ExactRational) -> Enclosure {
        self * &Enclosure::exact(rhs.clone())
    }
}

/// `x <= y` for the fractions `xn/xd` and `yn/yd`, with positive denominators.
pub(crate) fn frac_le(xn: &BigInt, xd: &BigInt, yn: &BigInt, yd: &BigInt) -> bool {
    debug_assert!(xd.is_positive() && yd.is_positive());
    xn * yd <= yn * xd
}
