//! Exact nonnegative rational lengths with a distinguished infinity.
//!
//! All distance computation in this crate is exact: lengths are ratios of
//! arbitrary-precision integers, so no comparison ever suffers rounding and
//! ties break the same way on every platform. `Infinity` stands for
//! "unreachable" (for example the distance to an empty shelter set) and
//! compares greater than every finite length.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Length {
    Finite(BigRational),
    Infinity,
}

impl Length {
    pub fn zero() -> Self {
        Length::Finite(BigRational::zero())
    }

    pub fn one() -> Self {
        Length::Finite(BigRational::one())
    }

    pub fn from_int(n: u64) -> Self {
        Length::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `num/den`, rejecting negative values and a zero denominator.
    pub fn new(num: i64, den: i64) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::invalid("length denominator is zero"));
        }
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        Self::from_rational(r)
    }

    pub fn from_rational(r: BigRational) -> Result<Self, Error> {
        if r.is_negative() {
            return Err(Error::invalid(format!("negative length {r}")));
        }
        Ok(Length::Finite(r))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Length::Finite(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Length::Finite(r) if r.is_zero())
    }

    /// The underlying rational, when finite.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Length::Finite(r) => Some(r),
            Length::Infinity => None,
        }
    }

    /// Exact doubling; used for threshold radii.
    pub fn double(&self) -> Length {
        self.times(2)
    }

    pub fn times(&self, k: u64) -> Length {
        match self {
            Length::Finite(r) => Length::Finite(r * BigRational::from_integer(BigInt::from(k))),
            Length::Infinity => Length::Infinity,
        }
    }

    /// `self - other` when the difference is defined and nonnegative;
    /// `None` when it would be negative or both operands are infinite.
    pub fn minus(&self, other: &Length) -> Option<Length> {
        match (self, other) {
            (Length::Infinity, Length::Infinity) => None,
            (Length::Infinity, _) => Some(Length::Infinity),
            (Length::Finite(_), Length::Infinity) => None,
            (Length::Finite(a), Length::Finite(b)) => {
                if a >= b {
                    Some(Length::Finite(a - b))
                } else {
                    None
                }
            }
        }
    }

    /// Exact division by a positive integer; used for averaging.
    pub fn div_int(&self, k: u64) -> Length {
        assert!(k > 0, "division of a length by zero");
        match self {
            Length::Finite(r) => Length::Finite(r / BigRational::from_integer(BigInt::from(k))),
            Length::Infinity => Length::Infinity,
        }
    }

    pub fn min_ref<'a>(&'a self, other: &'a Length) -> &'a Length {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max_ref<'a>(&'a self, other: &'a Length) -> &'a Length {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for Length {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Length {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Length::Finite(a), Length::Finite(b)) => a.cmp(b),
            (Length::Finite(_), Length::Infinity) => Ordering::Less,
            (Length::Infinity, Length::Finite(_)) => Ordering::Greater,
            (Length::Infinity, Length::Infinity) => Ordering::Equal,
        }
    }
}

impl Add for Length {
    type Output = Length;
    fn add(self, rhs: Length) -> Length {
        match (self, rhs) {
            (Length::Finite(a), Length::Finite(b)) => Length::Finite(a + b),
            _ => Length::Infinity,
        }
    }
}

impl Add<&Length> for &Length {
    type Output = Length;
    fn add(self, rhs: &Length) -> Length {
        match (self, rhs) {
            (Length::Finite(a), Length::Finite(b)) => Length::Finite(a + b),
            _ => Length::Infinity,
        }
    }
}

impl Sum for Length {
    fn sum<I: Iterator<Item = Length>>(iter: I) -> Length {
        iter.fold(Length::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Length {
    /// Finite values print as a reduced fraction, `"7/2"`, or as a plain
    /// integer when the denominator is one. Infinity prints as `"inf"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Length::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Length {
    type Err = Error;

    /// Accepts `"inf"`, an integer `"3"`, or a fraction `"7/2"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Length::Infinity);
        }
        let parse_int = |t: &str| -> Result<BigInt, Error> {
            t.parse::<BigInt>()
                .map_err(|_| Error::invalid(format!("bad length literal {t:?}")))
        };
        let r = match s.split_once('/') {
            Some((n, d)) => {
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err(Error::invalid(format!("zero denominator in {s:?}")));
                }
                BigRational::new(parse_int(n)?, den)
            }
            None => BigRational::from_integer(parse_int(s)?),
        };
        Length::from_rational(r)
    }
}

impl serde::Serialize for Length {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Length {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Formats a rational to six significant decimal digits, for human-facing
/// report columns next to the exact fraction.
pub fn approx_decimal(r: &BigRational) -> String {
    use num::ToPrimitive;
    let v = r.to_f64().unwrap_or(f64::NAN);
    if !v.is_finite() {
        return "?".to_string();
    }
    if v == 0.0 {
        return "0.00000".to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = (5 - exp).clamp(0, 17) as usize;
    format!("{v:.decimals$}")
}

/// `approx_decimal` for a length, printing `inf` unchanged.
pub fn approx_decimal_len(l: &Length) -> String {
    match l.as_rational() {
        Some(r) => approx_decimal(r),
        None => "inf".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fin(n: i64, d: i64) -> Length {
        Length::new(n, d).unwrap()
    }

    #[test]
    fn ordering_places_infinity_last() {
        let mut v = vec![Length::Infinity, fin(3, 1), fin(1, 2), Length::zero(), fin(7, 2)];
        v.sort();
        assert_eq!(
            v,
            vec![Length::zero(), fin(1, 2), fin(3, 1), fin(7, 2), Length::Infinity]
        );
    }

    #[test]
    fn addition_absorbs_infinity() {
        assert_eq!(fin(1, 2) + Length::Infinity, Length::Infinity);
        assert_eq!(Length::Infinity + Length::Infinity, Length::Infinity);
        assert_eq!(fin(1, 2) + fin(1, 3), fin(5, 6));
    }

    #[test]
    fn display_roundtrips() {
        for s in ["0", "3", "7/2", "inf", "1000000000000000000000/7"] {
            let l: Length = s.parse().unwrap();
            assert_eq!(l.to_string(), s);
        }
    }

    #[test]
    fn rejects_negative_and_zero_denominator() {
        assert!(Length::new(-1, 2).is_err());
        assert!(Length::new(1, 0).is_err());
        assert!("-3".parse::<Length>().is_err());
        assert!("1/0".parse::<Length>().is_err());
    }

    #[test]
    fn negative_denominator_normalizes() {
        // -3 / -4 is a positive value and must be accepted.
        assert_eq!(Length::new(-3, -4).unwrap(), fin(3, 4));
    }

    #[test]
    fn decimal_rendering_uses_six_significant_digits() {
        assert_eq!(approx_decimal_len(&fin(11, 4)), "2.75000");
        assert_eq!(approx_decimal_len(&fin(1, 3)), "0.333333");
        assert_eq!(approx_decimal_len(&fin(123456789, 1)), "123456789");
        assert_eq!(approx_decimal_len(&Length::Infinity), "inf");
    }

    proptest! {
        #[test]
        fn addition_is_commutative(a in 0i64..1000, b in 1i64..50, c in 0i64..1000, d in 1i64..50) {
            let x = fin(a, b);
            let y = fin(c, d);
            prop_assert_eq!(x.clone() + y.clone(), y + x);
        }

        #[test]
        fn parse_display_roundtrip(a in 0i64..100000, b in 1i64..1000) {
            let x = fin(a, b);
            let back: Length = x.to_string().parse().unwrap();
            prop_assert_eq!(x, back);
        }

        #[test]
        fn order_is_total_and_consistent_with_sum(a in 0i64..1000, b in 1i64..50, c in 0i64..1000, d in 1i64..50) {
            let x = fin(a, b);
            let y = fin(c, d);
            let s = x.clone() + y.clone();
            prop_assert!(s >= x);
            prop_assert!(s >= y);
        }
    }
}
