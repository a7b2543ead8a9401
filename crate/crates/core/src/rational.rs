//! Exact rationals and their display forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Arbitrary-precision fraction, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Default number of fractional digits in decimal renderings.
pub const DEFAULT_DIGITS: usize = 6;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(value: usize) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `1 / (d + 1)`.
pub fn inverse_succ(d: usize) -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(d + 1))
}

/// Smallest integer not below `r`.
pub fn ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Decimal string with `digits` fractional digits, rounded half to even.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let floor = scaled.floor().to_integer();
    let frac = &scaled - Rational::from_integer(floor.clone());
    let half = ratio(1, 2);
    let rounded = if frac > half || (frac == half && floor.is_odd()) {
        floor + 1
    } else {
        floor
    };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if r.is_negative() && !rounded_is_zero(&int_part, &frac_part) {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>digits$}")
    }
}

fn rounded_is_zero(a: &BigInt, b: &BigInt) -> bool {
    a.is_zero() && b.is_zero()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Machine-readable form of a rational. Numerator and denominator are
/// decimal strings so that values of any size survive JSON round trips;
/// `decimal` is an annotation only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalRecord {
    pub num: String,
    pub den: String,
    pub decimal: String,
}

impl From<&Rational> for RationalRecord {
    fn from(r: &Rational) -> Self {
        RationalRecord {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
            decimal: to_decimal(r, DEFAULT_DIGITS),
        }
    }
}

/// `#[serde(serialize_with = "...")]` helper for a single rational.
pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    RationalRecord::from(r).serialize(s)
}

/// `#[serde(serialize_with = "...")]` helper for a list of rationals.
pub fn serialize_vec<S: Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(RationalRecord::from))
}
