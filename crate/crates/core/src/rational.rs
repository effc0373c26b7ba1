//! Exact rationals over `i128` with checked arithmetic.
//!
//! Index values on graphs with at most 64 vertices have denominators that
//! divide `lcm(1..=63)` (about 9.3e26), so 128-bit numerators are ample.
//! Any overflow surfaces as [`ArithmeticError::Overflow`]; the operator
//! impls panic rather than wrap.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ArithmeticError;

/// Reduced fraction `num / den` with `den > 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

pub(crate) fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
        return binary_gcd(a as u64, b as u64) as i128;
    }
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i128
}

/// `a / b`, through 64-bit division when both fit.
fn div(a: i128, b: i128) -> i128 {
    match (i64::try_from(a), i64::try_from(b)) {
        (Ok(x), Ok(y)) => (x / y) as i128,
        _ => a / b,
    }
}

fn binary_gcd(mut a: u64, mut b: u64) -> u64 {
    if a == 0 || b == 0 {
        return a | b;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

/// `lcm(1, 2, ..., m)`; `lcm_upto(0) == 1`.
pub fn lcm_upto(m: usize) -> i128 {
    (1..=m as i128).fold(1i128, |acc, k| acc / gcd(acc, k) * k)
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Result<Rational, ArithmeticError> {
        if den == 0 {
            return Err(ArithmeticError::ZeroDenominator);
        }
        let g = gcd(num, den).max(1);
        let (mut num, mut den) = (div(num, g), div(den, g));
        if den < 0 {
            num = num.checked_neg().ok_or(ArithmeticError::Overflow)?;
            den = den.checked_neg().ok_or(ArithmeticError::Overflow)?;
        }
        Ok(Rational { num, den })
    }

    pub const fn integer(n: i128) -> Rational {
        Rational { num: n, den: 1 }
    }

    /// `1 / d` for a positive integer `d`.
    pub fn recip_of(d: i128) -> Rational {
        Rational::new(1, d).expect("nonzero")
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn checked_add(self, rhs: Rational) -> Result<Rational, ArithmeticError> {
        let g = gcd(self.den, rhs.den);
        let (a, b) = (div(self.den, g), div(rhs.den, g));
        let den = a.checked_mul(rhs.den).ok_or(ArithmeticError::Overflow)?;
        let left = self.num.checked_mul(b).ok_or(ArithmeticError::Overflow)?;
        let right = rhs.num.checked_mul(a).ok_or(ArithmeticError::Overflow)?;
        let num = left.checked_add(right).ok_or(ArithmeticError::Overflow)?;
        Rational::new(num, den)
    }

    pub fn checked_sub(self, rhs: Rational) -> Result<Rational, ArithmeticError> {
        let neg = Rational {
            num: rhs.num.checked_neg().ok_or(ArithmeticError::Overflow)?,
            den: rhs.den,
        };
        self.checked_add(neg)
    }

    pub fn checked_mul(self, rhs: Rational) -> Result<Rational, ArithmeticError> {
        // cross-reduce first to keep intermediates small
        let g1 = gcd(self.num, rhs.den).max(1);
        let g2 = gcd(rhs.num, self.den).max(1);
        let num = div(self.num, g1)
            .checked_mul(div(rhs.num, g2))
            .ok_or(ArithmeticError::Overflow)?;
        let den = div(self.den, g2)
            .checked_mul(div(rhs.den, g1))
            .ok_or(ArithmeticError::Overflow)?;
        Rational::new(num, den)
    }

    pub fn checked_mul_int(self, k: i128) -> Result<Rational, ArithmeticError> {
        self.checked_mul(Rational::integer(k))
    }

    /// Nearest `f64`; for display only.
    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Decimal rendering rounded half away from zero to `sig` significant
    /// digits, computed by exact long division.
    pub fn to_decimal(&self, sig: usize) -> String {
        let neg = self.num < 0;
        let num = self.num.unsigned_abs();
        let den = self.den as u128;
        let int_digits = if num / den == 0 {
            1
        } else {
            (num / den).ilog10() as usize + 1
        };
        let decimals = if num / den == 0 && num != 0 {
            // leading zeros after the point do not count as significant
            let mut lead = 0;
            let mut r = num;
            while r * 10 < den {
                r *= 10;
                lead += 1;
            }
            sig + lead
        } else {
            sig.saturating_sub(int_digits)
        };
        let scale = match 10u128.checked_pow(decimals as u32) {
            Some(s) => s,
            None => return format!("{:.*}", decimals.min(30), self.to_f64()),
        };
        let Some(scaled) = num.checked_mul(scale) else {
            return format!("{:.*}", decimals, self.to_f64());
        };
        let mut q = scaled / den;
        if (scaled % den) * 2 >= den {
            q += 1;
        }
        let int_part = q / scale;
        let frac = q % scale;
        let sign = if neg && q != 0 { "-" } else { "" };
        if decimals == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac:0width$}", width = decimals)
        }
    }

    /// `"p/q (decimal)"` with 12 significant digits.
    pub fn display_with_decimal(&self) -> String {
        format!("{self} ({})", self.to_decimal(12))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n as i128)
    }
}

impl From<usize> for Rational {
    fn from(n: usize) -> Self {
        Rational::integer(n as i128)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Some(l), Some(r)) = (
            self.num.checked_mul(other.den),
            other.num.checked_mul(self.den),
        ) {
            return l.cmp(&r);
        }
        cmp_fractions(self.num, self.den, other.num, other.den)
    }
}

/// Overflow-free comparison of `a/b` and `c/d` (`b, d > 0`) by continued
/// fraction expansion.
fn cmp_fractions(a: i128, b: i128, c: i128, d: i128) -> Ordering {
    let (qa, ra) = (a.div_euclid(b), a.rem_euclid(b));
    let (qc, rc) = (c.div_euclid(d), c.rem_euclid(d));
    match qa.cmp(&qc) {
        Ordering::Equal => {}
        o => return o,
    }
    match (ra == 0, rc == 0) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        // ra/b vs rc/d  <=>  d/rc vs b/ra
        (false, false) => cmp_fractions(d, rc, b, ra),
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        self.checked_add(rhs).expect("rational overflow in +")
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self.checked_sub(rhs).expect("rational overflow in -")
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        self.checked_mul(rhs).expect("rational overflow in *")
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational::ZERO - self
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let n: i128 = n
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: i128 = d
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in {s:?}"))?;
        Rational::new(n, d).map_err(|e| e.to_string())
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
