//! Exact dyadic rationals `m / 2^e`.
//!
//! Values are kept in canonical form: either the exponent is zero or the
//! mantissa is odd, and zero is always `0 / 2^0`. Structural equality and
//! hashing therefore coincide with numeric equality. Mantissas that fit in an
//! `i64` are stored inline; larger ones spill to a [`BigInt`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Mantissa {
    Small(i64),
    Big(BigInt),
}

impl Mantissa {
    fn from_big(value: BigInt) -> Self {
        match value.to_i64() {
            Some(v) => Mantissa::Small(v),
            None => Mantissa::Big(value),
        }
    }

    fn to_big(&self) -> BigInt {
        match self {
            Mantissa::Small(v) => BigInt::from(*v),
            Mantissa::Big(v) => v.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Mantissa::Small(0))
    }

    fn is_odd(&self) -> bool {
        match self {
            Mantissa::Small(v) => v & 1 == 1,
            Mantissa::Big(v) => v.is_odd(),
        }
    }

    fn trailing_zeros(&self) -> u64 {
        match self {
            Mantissa::Small(0) => 0,
            Mantissa::Small(v) => v.trailing_zeros() as u64,
            Mantissa::Big(v) => v.trailing_zeros().unwrap_or(0),
        }
    }

    fn shr(&self, bits: u64) -> Self {
        match self {
            Mantissa::Small(v) => Mantissa::Small(v >> bits),
            Mantissa::Big(v) => Mantissa::from_big(v >> bits),
        }
    }

    fn shl(&self, bits: u64) -> Self {
        if let Mantissa::Small(v) = self {
            if bits < 63 {
                let wide = i128::from(*v) << bits;
                if let Ok(narrow) = i64::try_from(wide) {
                    return Mantissa::Small(narrow);
                }
            }
        }
        Mantissa::from_big(self.to_big() << bits)
    }

    fn signum(&self) -> i32 {
        match self {
            Mantissa::Small(v) => v.signum() as i32,
            Mantissa::Big(v) => {
                if v.is_positive() {
                    1
                } else if v.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }
}

/// An exact number of the form `mantissa / 2^exponent`.
#[derive(Clone, PartialEq, Eq)]
pub struct Dyadic {
    mantissa: Mantissa,
    exponent: u64,
}

impl Hash for Dyadic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mantissa.hash(state);
        self.exponent.hash(state);
    }
}

impl Dyadic {
    pub fn from_integer(value: i64) -> Self {
        Dyadic {
            mantissa: Mantissa::Small(value),
            exponent: 0,
        }
    }

    pub fn from_bigint(value: BigInt) -> Self {
        Dyadic {
            mantissa: Mantissa::from_big(value),
            exponent: 0,
        }
    }

    /// Builds `mantissa / 2^exponent`, reducing to canonical form.
    pub fn new(mantissa: BigInt, exponent: u64) -> Self {
        Self::normalized(Mantissa::from_big(mantissa), exponent)
    }

    fn normalized(mantissa: Mantissa, exponent: u64) -> Self {
        if mantissa.is_zero() {
            return Dyadic::from_integer(0);
        }
        let strip = mantissa.trailing_zeros().min(exponent);
        if strip == 0 {
            Dyadic { mantissa, exponent }
        } else {
            Dyadic {
                mantissa: mantissa.shr(strip),
                exponent: exponent - strip,
            }
        }
    }

    pub fn mantissa(&self) -> BigInt {
        self.mantissa.to_big()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_integer(&self) -> bool {
        self.exponent == 0
    }

    /// The integer value, if there is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.mantissa.to_big())
    }

    pub fn to_i64(&self) -> Option<i64> {
        match (&self.mantissa, self.exponent) {
            (Mantissa::Small(v), 0) => Some(*v),
            _ => None,
        }
    }

    /// Exact division by two.
    pub fn half(&self) -> Self {
        if self.mantissa.is_zero() {
            self.clone()
        } else if self.exponent == 0 && !self.mantissa.is_odd() {
            Dyadic {
                mantissa: self.mantissa.shr(1),
                exponent: 0,
            }
        } else {
            Dyadic {
                mantissa: self.mantissa.clone(),
                exponent: self.exponent + 1,
            }
        }
    }

    pub fn signum(&self) -> i32 {
        self.mantissa.signum()
    }

    pub fn to_f64(&self) -> f64 {
        let m = match &self.mantissa {
            Mantissa::Small(v) => *v as f64,
            Mantissa::Big(v) => v.to_f64().unwrap_or(f64::NAN),
        };
        let e = i32::try_from(self.exponent).unwrap_or(i32::MAX);
        m * 2f64.powi(-e)
    }

    fn aligned(&self, other: &Self) -> (Mantissa, Mantissa, u64) {
        let exponent = self.exponent.max(other.exponent);
        (
            self.mantissa.shl(exponent - self.exponent),
            other.mantissa.shl(exponent - other.exponent),
            exponent,
        )
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl From<i64> for Dyadic {
    fn from(value: i64) -> Self {
        Dyadic::from_integer(value)
    }
}

impl From<i32> for Dyadic {
    fn from(value: i32) -> Self {
        Dyadic::from_integer(i64::from(value))
    }
}

impl From<BigInt> for Dyadic {
    fn from(value: BigInt) -> Self {
        Dyadic::from_bigint(value)
    }
}

impl Zero for Dyadic {
    fn zero() -> Self {
        Dyadic::from_integer(0)
    }

    fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }
}

impl One for Dyadic {
    fn one() -> Self {
        Dyadic::from_integer(1)
    }
}

impl Add<&Dyadic> for &Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: &Dyadic) -> Dyadic {
        if let (Mantissa::Small(a), Mantissa::Small(b)) = (&self.mantissa, &rhs.mantissa) {
            if self.exponent == rhs.exponent {
                if let Some(sum) = a.checked_add(*b) {
                    return Dyadic::normalized(Mantissa::Small(sum), self.exponent);
                }
            }
        }
        let (a, b, exponent) = self.aligned(rhs);
        let sum = match (a, b) {
            (Mantissa::Small(a), Mantissa::Small(b)) => match a.checked_add(b) {
                Some(s) => Mantissa::Small(s),
                None => Mantissa::from_big(BigInt::from(a) + BigInt::from(b)),
            },
            (a, b) => Mantissa::from_big(a.to_big() + b.to_big()),
        };
        Dyadic::normalized(sum, exponent)
    }
}

impl Sub<&Dyadic> for &Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul<&Dyadic> for &Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: &Dyadic) -> Dyadic {
        let exponent = self.exponent + rhs.exponent;
        let product = match (&self.mantissa, &rhs.mantissa) {
            (Mantissa::Small(a), Mantissa::Small(b)) => match a.checked_mul(*b) {
                Some(p) => Mantissa::Small(p),
                None => Mantissa::from_big(BigInt::from(*a) * BigInt::from(*b)),
            },
            (a, b) => Mantissa::from_big(a.to_big() * b.to_big()),
        };
        // Odd times odd stays odd, so a product of canonical values is canonical
        // unless one factor is an integer.
        Dyadic::normalized(product, exponent)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        let mantissa = match &self.mantissa {
            Mantissa::Small(v) => match v.checked_neg() {
                Some(n) => Mantissa::Small(n),
                None => Mantissa::Big(-BigInt::from(*v)),
            },
            Mantissa::Big(v) => Mantissa::from_big(-v),
        };
        Dyadic {
            mantissa,
            exponent: self.exponent,
        }
    }
}

macro_rules! forward_by_value {
    ($($imp:ident :: $method:ident),*) => {$(
        impl $imp<Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $method(self, rhs: Dyadic) -> Dyadic {
                (&self).$method(&rhs)
            }
        }
        impl $imp<&Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $method(self, rhs: &Dyadic) -> Dyadic {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_by_value!(Add::add, Sub::sub, Mul::mul);

impl Neg for Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        -&self
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        match (a, b) {
            (Mantissa::Small(a), Mantissa::Small(b)) => a.cmp(&b),
            (a, b) => a.to_big().cmp(&b.to_big()),
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mantissa {
            Mantissa::Small(v) => write!(f, "{v}")?,
            Mantissa::Big(v) => write!(f, "{v}")?,
        }
        if self.exponent > 0 {
            write!(f, "/{}", BigInt::one() << self.exponent)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseDyadicError {
    #[error("invalid integer part in {0:?}")]
    Mantissa(String),
    #[error("denominator in {0:?} is not a positive power of two")]
    Denominator(String),
}

impl FromStr for Dyadic {
    type Err = ParseDyadicError;

    /// Accepts `m` or `m/d` with `d` a power of two.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let mantissa: BigInt = num
            .parse()
            .map_err(|_| ParseDyadicError::Mantissa(s.to_string()))?;
        let exponent = match den {
            None => 0,
            Some(d) => {
                let d: BigInt = d
                    .parse()
                    .map_err(|_| ParseDyadicError::Denominator(s.to_string()))?;
                if !d.is_positive() {
                    return Err(ParseDyadicError::Denominator(s.to_string()));
                }
                let tz = d.trailing_zeros().unwrap_or(0);
                if d != BigInt::one() << tz {
                    return Err(ParseDyadicError::Denominator(s.to_string()));
                }
                tz
            }
        };
        Ok(Dyadic::new(mantissa, exponent))
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Int(v) => Ok(Dyadic::from_integer(v)),
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(Dyadic::new(BigInt::from(6), 2), d("3/2"));
        assert_eq!(Dyadic::new(BigInt::from(0), 7), Dyadic::zero());
        assert_eq!(Dyadic::new(BigInt::from(8), 3), Dyadic::one());
        assert_eq!(d("4/8").exponent(), 1);
    }

    #[test]
    fn halving() {
        assert_eq!(Dyadic::from(3).half(), d("3/2"));
        assert_eq!(Dyadic::from(4).half(), Dyadic::from(2));
        assert_eq!(d("-3/2").half(), d("-3/4"));
        assert_eq!(Dyadic::zero().half(), Dyadic::zero());
    }

    #[test]
    fn rendering() {
        assert_eq!(d("-3/2").to_string(), "-3/2");
        assert_eq!(Dyadic::from(-7).to_string(), "-7");
        assert_eq!(d("1/4").to_string(), "1/4");
        assert!("1/3".parse::<Dyadic>().is_err());
        assert!("1/0".parse::<Dyadic>().is_err());
    }

    #[test]
    fn overflow_promotes_to_bigint() {
        let big = Dyadic::from(i64::MAX);
        let sum = &big + &big;
        assert_eq!(sum.mantissa(), BigInt::from(i64::MAX) * 2);
        let square = &big * &big;
        assert_eq!(
            square.mantissa(),
            BigInt::from(i64::MAX) * BigInt::from(i64::MAX)
        );
        assert_eq!(&square - &square, Dyadic::zero());
        assert_eq!(
            -Dyadic::from(i64::MIN),
            Dyadic::from_bigint(-BigInt::from(i64::MIN))
        );
        let back = &sum - &big;
        assert_eq!(back, big);
        assert_eq!(back.to_i64(), Some(i64::MAX));
    }

    fn dyadic() -> impl Strategy<Value = Dyadic> {
        (any::<i64>(), 0u64..80).prop_map(|(m, e)| Dyadic::new(BigInt::from(m), e))
    }

    fn as_rational(x: &Dyadic) -> num_rational::BigRational {
        num_rational::BigRational::new(x.mantissa(), BigInt::one() << x.exponent())
    }

    fn is_canonical(x: &Dyadic) -> bool {
        x.exponent() == 0 || x.mantissa().is_odd()
    }

    proptest! {
        #[test]
        fn arithmetic_matches_rationals(a in dyadic(), b in dyadic()) {
            let (ra, rb) = (as_rational(&a), as_rational(&b));
            let sum = &a + &b;
            let diff = &a - &b;
            let prod = &a * &b;
            prop_assert_eq!(as_rational(&sum), &ra + &rb);
            prop_assert_eq!(as_rational(&diff), &ra - &rb);
            prop_assert_eq!(as_rational(&prod), &ra * &rb);
            prop_assert!(is_canonical(&sum) && is_canonical(&diff) && is_canonical(&prod));
            prop_assert_eq!(a.cmp(&b), ra.cmp(&rb));
        }

        #[test]
        fn display_parses_back(a in dyadic()) {
            prop_assert_eq!(a.to_string().parse::<Dyadic>().unwrap(), a);
        }
    }
}
