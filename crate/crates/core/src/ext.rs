//! Extended reals over exact rationals.
//!
//! The arithmetic is a convention table rather than a limit: `r ± ∞ = ±∞`,
//! `∞ + ∞ = ∞`, `∞ − ∞ = 0` (in either order) and `0 · (±∞) = 0`. With these
//! rules `α(a − b) = αa − αb` holds for every finite `α` and all `a, b`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// An element of `ℝ ∪ {−∞, +∞}` with exact rational finite part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtReal {
    NegInf,
    Finite(BigRational),
    PosInf,
}

/// Coarse classification used by the convention table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    NegInf,
    Finite,
    PosInf,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseExtRealError {
    #[error("empty value")]
    Empty,
    #[error("invalid number `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl ExtReal {
    pub fn zero() -> Self {
        ExtReal::Finite(BigRational::zero())
    }

    pub fn one() -> Self {
        ExtReal::Finite(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        ExtReal::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        ExtReal::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn tag(&self) -> Tag {
        match self {
            ExtReal::NegInf => Tag::NegInf,
            ExtReal::Finite(_) => Tag::Finite,
            ExtReal::PosInf => Tag::PosInf,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtReal::Finite(r) if r.is_zero())
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            ExtReal::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// Sign as -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        match self {
            ExtReal::NegInf => -1,
            ExtReal::PosInf => 1,
            ExtReal::Finite(r) if r.is_zero() => 0,
            ExtReal::Finite(r) if r.is_positive() => 1,
            ExtReal::Finite(_) => -1,
        }
    }

    /// `max(x, 0)`.
    pub fn pos_part(&self) -> ExtReal {
        if self.signum() > 0 {
            self.clone()
        } else {
            ExtReal::zero()
        }
    }

    /// `max(−x, 0)`.
    pub fn neg_part(&self) -> ExtReal {
        if self.signum() < 0 {
            -self
        } else {
            ExtReal::zero()
        }
    }

    pub fn abs(&self) -> ExtReal {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn max_of(a: &ExtReal, b: &ExtReal) -> ExtReal {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn min_of(a: &ExtReal, b: &ExtReal) -> ExtReal {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    /// Lossy conversion for display layers only.
    pub fn to_f64(&self) -> f64 {
        match self {
            ExtReal::NegInf => f64::NEG_INFINITY,
            ExtReal::PosInf => f64::INFINITY,
            ExtReal::Finite(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl From<BigRational> for ExtReal {
    fn from(r: BigRational) -> Self {
        ExtReal::Finite(r)
    }
}

impl From<i64> for ExtReal {
    fn from(n: i64) -> Self {
        ExtReal::from_int(n)
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.cmp(b),
            _ => self.tag().cmp(&other.tag()),
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for &ExtReal {
    type Output = ExtReal;

    fn neg(self) -> ExtReal {
        match self {
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::PosInf => ExtReal::NegInf,
            ExtReal::Finite(r) => ExtReal::Finite(-r),
        }
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;

    fn neg(self) -> ExtReal {
        -&self
    }
}

impl Add for &ExtReal {
    type Output = ExtReal;

    fn add(self, rhs: &ExtReal) -> ExtReal {
        use ExtReal::*;
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a + b),
            (PosInf, NegInf) | (NegInf, PosInf) => ExtReal::zero(),
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
        }
    }
}

impl Sub for &ExtReal {
    type Output = ExtReal;

    fn sub(self, rhs: &ExtReal) -> ExtReal {
        self + &(-rhs)
    }
}

impl Mul for &ExtReal {
    type Output = ExtReal;

    fn mul(self, rhs: &ExtReal) -> ExtReal {
        use ExtReal::*;
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a * b),
            _ => match self.signum() * rhs.signum() {
                0 => ExtReal::zero(),
                s if s > 0 => PosInf,
                _ => NegInf,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ExtReal {
            type Output = ExtReal;
            fn $m(self, rhs: ExtReal) -> ExtReal {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ExtReal> for ExtReal {
            type Output = ExtReal;
            fn $m(self, rhs: &ExtReal) -> ExtReal {
                (&self).$m(rhs)
            }
        }
        impl $tr<ExtReal> for &ExtReal {
            type Output = ExtReal;
            fn $m(self, rhs: ExtReal) -> ExtReal {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::PosInf => f.write_str("inf"),
            ExtReal::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            ExtReal::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

/// Parses `inf`, `+inf`, `-inf`, integers, `p/q` and plain decimals. Decimals
/// are read exactly (`0.1` is `1/10`).
impl FromStr for ExtReal {
    type Err = ParseExtRealError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseExtRealError::Empty);
        }
        match s.to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "+infinity" => return Ok(ExtReal::PosInf),
            "-inf" | "-infinity" => return Ok(ExtReal::NegInf),
            _ => {}
        }
        let invalid = || ParseExtRealError::Invalid(s.to_string());
        if let Some((num, den)) = s.split_once('/') {
            let num: BigInt = num.trim().parse().map_err(|_| invalid())?;
            let den: BigInt = den.trim().parse().map_err(|_| invalid())?;
            if den.is_zero() {
                return Err(ParseExtRealError::ZeroDenominator(s.to_string()));
            }
            return Ok(ExtReal::Finite(BigRational::new(num, den)));
        }
        if let Some((int, frac)) = s.split_once('.') {
            let negative = int.starts_with('-');
            let digits = int.trim_start_matches(['-', '+']);
            if frac.is_empty() && digits.is_empty() {
                return Err(invalid());
            }
            if !digits.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(invalid());
            }
            let mantissa: BigInt = format!("{digits}{frac}").parse().map_err(|_| invalid())?;
            let scale = num_traits::pow(BigInt::from(10u8), frac.len());
            let r = BigRational::new(mantissa, scale);
            return Ok(ExtReal::Finite(if negative { -r } else { r }));
        }
        let n: BigInt = s.parse().map_err(|_| invalid())?;
        Ok(ExtReal::Finite(BigRational::from_integer(n)))
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

struct ExtRealVisitor;

impl Visitor<'_> for ExtRealVisitor {
    type Value = ExtReal;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a rational string such as \"3/4\", \"inf\" or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtReal, E> {
        v.parse().map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtReal, E> {
        Ok(ExtReal::from_int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtReal, E> {
        Ok(ExtReal::Finite(BigRational::from_integer(BigInt::from(v))))
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(ExtRealVisitor)
    }
}
