//! Exact rational arithmetic used throughout the crate.
//!
//! Every comparison that drives an algorithmic branch is done on `Rat`
//! values, never on floats. `Rat` wraps an arbitrary-precision rational
//! kept in lowest terms with a positive denominator.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// Arbitrary-precision rational, always in lowest terms, denominator > 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    /// `numer/denom`, reduced. Panics on a zero denominator.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rat(BigRational::new(numer, denom))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    /// Largest integer ≤ self.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Smallest integer ≥ self.
    pub fn ceil_int(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn floor(&self) -> Self {
        Rat(self.0.floor())
    }

    pub fn ceil(&self) -> Self {
        Rat(self.0.ceil())
    }

    /// Exact integer power (negative exponents allowed for nonzero values).
    pub fn pow(&self, exp: i32) -> Self {
        if exp == 0 {
            return Rat::one();
        }
        if exp < 0 {
            return self.recip().pow(-exp);
        }
        Rat(num_traits::pow::pow(self.0.clone(), exp as usize))
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// f64 approximation for convenience fields in reports; never used for decisions.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact square root if the value is a perfect square of a rational.
    pub fn sqrt_exact(&self) -> Option<Rat> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rat::from_big(n, d))
        } else {
            None
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRatError(pub String);

impl fmt::Display for ParseRatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational: {}", self.0)
    }
}

impl std::error::Error for ParseRatError {}

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Accepts `"7"`, `"-3/4"` and decimal literals like `"1.1"` (exactly 11/10).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let numer =
                BigInt::from_str(n.trim()).map_err(|_| ParseRatError(s.to_string()))?;
            let denom =
                BigInt::from_str(d.trim()).map_err(|_| ParseRatError(s.to_string()))?;
            if denom.is_zero() {
                return Err(ParseRatError(s.to_string()));
            }
            return Ok(Rat::from_big(numer, denom));
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            let neg = int_part.trim_start().starts_with('-');
            let int = if int_part.is_empty() || int_part == "-" {
                BigInt::zero()
            } else {
                BigInt::from_str(int_part).map_err(|_| ParseRatError(s.to_string()))?
            };
            if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ParseRatError(s.to_string()));
            }
            let frac = BigInt::from_str(frac_part).map_err(|_| ParseRatError(s.to_string()))?;
            let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
            let unsigned = Rat::from_bigint(int.abs()) + Rat::from_big(frac, scale);
            return Ok(if neg { -unsigned } else { unsigned });
        }
        BigInt::from_str(s)
            .map(Rat::from_bigint)
            .map_err(|_| ParseRatError(s.to_string()))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(self.0 / rhs.0)
    }
}

impl Div<&Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl serde::Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an integer or a rational string like \"3/4\"")
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Rat, E> {
                Ok(Rat::from_int(v))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Rat, E> {
                Ok(Rat::from_bigint(BigInt::from(v)))
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Rat, E> {
                v.parse().map_err(serde::de::Error::custom)
            }
        }
        deserializer.deserialize_any(V)
    }
}

/// Floor of the n-th root of a nonnegative integer.
pub fn floor_nth_root(x: &BigInt, n: u32) -> BigInt {
    assert!(n >= 1);
    assert!(x.sign() != Sign::Minus);
    x.nth_root(n)
}

/// Encloses `x^(1/n)` in `[lo, hi]` with `hi - lo <= 2^-bits`, for `x >= 0`.
pub fn nth_root_enclosure(x: &Rat, n: u32, bits: u32) -> (Rat, Rat) {
    assert!(!x.is_negative());
    if x.is_zero() {
        return (Rat::zero(), Rat::zero());
    }
    // Scale so the integer root carries `bits` fractional bits:
    // N = floor(x * 2^(n*bits)), r = floor(N^(1/n)), then
    // r/2^bits <= x^(1/n) < (r+1)/2^bits.
    let scale = BigInt::one() << bits;
    let scaled = x * &Rat::from_bigint(BigInt::one() << (n as u64 * bits as u64));
    let r = floor_nth_root(&scaled.floor_int(), n);
    let lo = Rat::from_big(r.clone(), scale.clone());
    let hi = Rat::from_big(r + 1, scale);
    (lo, hi)
}

/// Exact n-th root if it is rational.
pub fn nth_root_exact(x: &Rat, n: u32) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let rn = floor_nth_root(x.numer(), n);
    let rd = floor_nth_root(x.denom(), n);
    if &num_traits::pow::pow(rn.clone(), n as usize) == x.numer()
        && &num_traits::pow::pow(rd.clone(), n as usize) == x.denom()
    {
        Some(Rat::from_big(rn, rd))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_display() {
        let r = Rat::new(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert!(r.denom() > &BigInt::zero());
        assert_eq!(Rat::new(8, 4).to_string(), "2");
    }

    #[test]
    fn parse_forms() {
        assert_eq!("7".parse::<Rat>().unwrap(), Rat::from_int(7));
        assert_eq!("-3/4".parse::<Rat>().unwrap(), Rat::new(-3, 4));
        assert_eq!("1.1".parse::<Rat>().unwrap(), Rat::new(11, 10));
        assert_eq!("0.25".parse::<Rat>().unwrap(), Rat::new(1, 4));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }

    #[test]
    fn floor_ceil_pow() {
        assert_eq!(Rat::new(7, 2).floor_int(), BigInt::from(3));
        assert_eq!(Rat::new(7, 2).ceil_int(), BigInt::from(4));
        assert_eq!(Rat::new(-7, 2).floor_int(), BigInt::from(-4));
        assert_eq!(Rat::new(2, 3).pow(3), Rat::new(8, 27));
        assert_eq!(Rat::new(2, 3).pow(-1), Rat::new(3, 2));
    }

    #[test]
    fn root_enclosure_brackets_value() {
        let (lo, hi) = nth_root_enclosure(&Rat::from_int(2), 2, 64);
        assert!(lo.clone() * lo.clone() <= Rat::from_int(2));
        assert!(hi.clone() * hi.clone() >= Rat::from_int(2));
        assert!(hi - lo <= Rat::from_big(BigInt::one(), BigInt::one() << 64));

        // Perfect powers are recognized exactly.
        assert_eq!(nth_root_exact(&Rat::from_int(25), 2), Some(Rat::from_int(5)));
        assert_eq!(
            nth_root_exact(&Rat::new(8, 27), 3),
            Some(Rat::new(2, 3))
        );
        assert_eq!(nth_root_exact(&Rat::from_int(2), 2), None);
    }

    #[test]
    fn serde_roundtrip() {
        let r: Rat = serde_json::from_str("\"3/4\"").unwrap();
        assert_eq!(r, Rat::new(3, 4));
        let r: Rat = serde_json::from_str("10").unwrap();
        assert_eq!(r, Rat::from_int(10));
        assert_eq!(serde_json::to_string(&Rat::new(3, 4)).unwrap(), "\"3/4\"");
        assert_eq!(serde_json::to_string(&Rat::from_int(5)).unwrap(), "\"5\"");
    }
}
