//! Exact rational values used for every function value, critical value and
//! smoothing parameter.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// A fraction in lowest terms with a positive denominator.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(Ratio<i128>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty number")]
    Empty,
    #[error("malformed number `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("number `{0}` out of range")]
    Overflow(String),
}

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    /// Panics on a zero denominator.
    pub fn new(numer: i128, denom: i128) -> Self {
        Rational(Ratio::new(numer, denom))
    }

    pub fn integer(n: i128) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn midpoint(a: Rational, b: Rational) -> Rational {
        Rational((a.0 + b.0) / Ratio::from_integer(2))
    }

    pub fn half(&self) -> Rational {
        Rational(self.0 / Ratio::from_integer(2))
    }

    /// Lossy conversion for display and timing code only.
    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str, whole: &str) -> Result<i128, RationalParseError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RationalParseError::Malformed(whole.to_string()));
    }
    s.parse::<i128>()
        .map_err(|_| RationalParseError::Overflow(whole.to_string()))
}

impl FromStr for Rational {
    type Err = RationalParseError;

    /// Accepts `p/q`, integers and plain decimals such as `-0.125`; decimals
    /// convert exactly.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let s = text.trim();
        if s.is_empty() {
            return Err(RationalParseError::Empty);
        }
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let value = if let Some((p, q)) = body.split_once('/') {
            let p = parse_int(p, s)?;
            let q = parse_int(q, s)?;
            if q == 0 {
                return Err(RationalParseError::ZeroDenominator(s.to_string()));
            }
            Ratio::new(p, q)
        } else if let Some((int, frac)) = body.split_once('.') {
            if int.is_empty() && frac.is_empty() {
                return Err(RationalParseError::Malformed(s.to_string()));
            }
            let int = if int.is_empty() { 0 } else { parse_int(int, s)? };
            let (digits, scale) = if frac.is_empty() {
                (0, 1)
            } else {
                let scale = 10i128
                    .checked_pow(frac.len() as u32)
                    .ok_or_else(|| RationalParseError::Overflow(s.to_string()))?;
                (parse_int(frac, s)?, scale)
            };
            let numer = int
                .checked_mul(scale)
                .and_then(|v| v.checked_add(digits))
                .ok_or_else(|| RationalParseError::Overflow(s.to_string()))?;
            Ratio::new(numer, scale)
        } else {
            Ratio::from_integer(parse_int(body, s)?)
        };
        Ok(Rational(if negative { -value } else { value }))
    }
}

impl From<i128> for Rational {
    fn from(n: i128) -> Self {
        Rational::integer(n)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n as i128)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::integer(n as i128)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        Rational(self.0 / rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |a, b| a + b)
    }
}

/// `Rational::new` with a lowest-terms check, for call sites that want the
/// canonical form spelled out.
pub fn ratio(numer: i128, denom: i128) -> Rational {
    let g = numer.gcd(&denom);
    let r = Rational::new(numer, denom);
    debug_assert_eq!(r.denom(), (denom / g).abs());
    r
}

/// Sorted, deduplicated copy of `values`.
pub fn sorted_unique(mut values: Vec<Rational>) -> Vec<Rational> {
    values.sort_unstable();
    values.dedup();
    values
}
