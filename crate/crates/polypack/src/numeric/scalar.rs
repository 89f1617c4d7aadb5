use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::error::NumericError;
use super::quad::{Quad, Ring};

/// Default tolerance for float comparisons of inversive products.
pub const FLOAT_TOL: f64 = 1e-9;

/// Resolution of the float dedup key.
pub const KEY_RESOLUTION: f64 = 1e-7;

/// Which arithmetic a computation runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Float,
    Quadratic(i64),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Float => write!(f, "float"),
            Field::Quadratic(m) => write!(f, "exact:{m}"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = NumericError;
    fn from_str(s: &str) -> Result<Field, NumericError> {
        if s == "float" {
            return Ok(Field::Float);
        }
        s.strip_prefix("exact:")
            .and_then(|m| m.parse().ok())
            .map(Field::Quadratic)
            .ok_or_else(|| NumericError::Parse(s.to_string()))
    }
}

/// Numbers the geometry is generic over: `f64` or an exact quadratic field.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Hashable identity used to deduplicate balls.
    type Key: Clone + Eq + Hash + fmt::Debug + Send + Sync;

    const EXACT: bool;

    fn field() -> Field;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(n: i64, d: i64) -> Self;
    /// `a + b√m`; exact fields reject a foreign `m` unless `b = 0`.
    fn from_surd(a: &BigRational, b: &BigRational, m: i64) -> Result<Self, NumericError>;
    /// Exact fields cannot take an arbitrary float.
    fn from_f64(x: f64) -> Result<Self, NumericError>;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
    /// Sign, treating floats within `tol` of zero as zero.
    fn sign(&self, tol: f64) -> i32;
    /// Square root in the same arithmetic, `None` when the field lacks it.
    fn sqrt(&self) -> Result<Option<Self>, NumericError>;
    fn checked_div(&self, rhs: &Self) -> Result<Self, NumericError>;
    fn key(&self) -> Self::Key;
    /// A second key when the value sits so close to a rounding boundary
    /// that a nearby copy may round the other way.
    fn key_neighbor(&self) -> Option<Self::Key> {
        None
    }
    fn parse(s: &str) -> Result<Self, NumericError>;
    /// Exact membership in a ring of integers; floats cannot answer.
    fn in_ring(&self, ring: Ring) -> Result<bool, NumericError>;

    fn abs(&self) -> Self {
        if self.sign(0.0) < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.clone() - other.clone()).sign(tol) == 0
    }

    fn surd_int(a: i64, b: i64, m: i64) -> Result<Self, NumericError> {
        Self::from_surd(&BigRational::from_integer(a.into()), &BigRational::from_integer(b.into()), m)
    }

    /// The square root, failing with `NotHosted` when it leaves the field.
    fn sqrt_hosted(&self) -> Result<Self, NumericError> {
        self.sqrt()?.ok_or_else(|| NumericError::NotHosted(format!("sqrt({self})")))
    }
}

impl Scalar for f64 {
    type Key = i64;
    const EXACT: bool = false;

    fn field() -> Field {
        Field::Float
    }
    fn zero() -> f64 {
        0.0
    }
    fn one() -> f64 {
        1.0
    }
    fn from_i64(n: i64) -> f64 {
        n as f64
    }
    fn from_ratio(n: i64, d: i64) -> f64 {
        n as f64 / d as f64
    }
    fn from_surd(a: &BigRational, b: &BigRational, m: i64) -> Result<f64, NumericError> {
        let a = a.to_f64().unwrap_or(f64::NAN);
        let b = b.to_f64().unwrap_or(f64::NAN);
        Ok(a + b * (m as f64).sqrt())
    }
    fn from_f64(x: f64) -> Result<f64, NumericError> {
        Ok(x)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn sign(&self, tol: f64) -> i32 {
        if f64::abs(*self) <= tol {
            0
        } else if *self > 0.0 {
            1
        } else {
            -1
        }
    }
    fn sqrt(&self) -> Result<Option<f64>, NumericError> {
        if *self < -FLOAT_TOL {
            return Err(NumericError::NegativeRadicand(self.to_string()));
        }
        Ok(Some(f64::sqrt(self.max(0.0))))
    }
    fn checked_div(&self, rhs: &f64) -> Result<f64, NumericError> {
        if *rhs == 0.0 {
            return Err(NumericError::DivisionByZero);
        }
        Ok(self / rhs)
    }
    fn key(&self) -> i64 {
        // `as` saturates; adding 0.0 folds −0 into +0
        ((self / KEY_RESOLUTION).round() + 0.0) as i64
    }
    fn key_neighbor(&self) -> Option<i64> {
        let x = self / KEY_RESOLUTION;
        let frac = x - x.floor();
        if (frac - 0.5).abs() > 0.01 {
            return None;
        }
        let k = self.key();
        Some(if (k as f64) > x { k - 1 } else { k + 1 })
    }
    fn parse(s: &str) -> Result<f64, NumericError> {
        s.trim().parse().map_err(|_| NumericError::Parse(s.to_string()))
    }
    fn in_ring(&self, ring: Ring) -> Result<bool, NumericError> {
        Err(NumericError::NotHosted(format!("{ring} membership of float {self}")))
    }
}

impl<const M: i64> Scalar for Quad<M> {
    type Key = Quad<M>;
    const EXACT: bool = true;

    fn field() -> Field {
        Field::Quadratic(M)
    }
    fn zero() -> Self {
        Quad::from_int(0)
    }
    fn one() -> Self {
        Quad::from_int(1)
    }
    fn from_i64(n: i64) -> Self {
        Quad::from_int(n)
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        Quad::from_ratio(n, d)
    }
    fn from_surd(a: &BigRational, b: &BigRational, m: i64) -> Result<Self, NumericError> {
        if b.is_zero() {
            return Ok(Quad::from_rationals(a, b));
        }
        if m == M {
            return Ok(Quad::from_rationals(a, b));
        }
        // b√m with m = k²M is still in the field
        if m > 0 && m % M == 0 {
            let k2 = m / M;
            let k = (k2 as f64).sqrt().round() as i64;
            if k * k == k2 {
                return Ok(Quad::from_rationals(a, &(b * BigRational::from_integer(k.into()))));
            }
        }
        Err(NumericError::FieldMismatch { expected: M, found: m })
    }
    fn from_f64(x: f64) -> Result<Self, NumericError> {
        Err(NumericError::NotHosted(format!("float {x}")))
    }
    fn to_f64(&self) -> f64 {
        Quad::to_f64(self)
    }
    fn is_zero(&self) -> bool {
        Quad::is_zero(self)
    }
    fn sign(&self, _tol: f64) -> i32 {
        self.signum()
    }
    fn sqrt(&self) -> Result<Option<Self>, NumericError> {
        self.sqrt_if_expressible()
    }
    fn checked_div(&self, rhs: &Self) -> Result<Self, NumericError> {
        Quad::checked_div(self, rhs)
    }
    fn key(&self) -> Self {
        self.clone()
    }
    fn parse(s: &str) -> Result<Self, NumericError> {
        s.parse()
    }
    fn in_ring(&self, ring: Ring) -> Result<bool, NumericError> {
        self.is_ring_integer(ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{Q2, Q5};

    #[test]
    fn generic_construction() {
        let r = <Q2 as Scalar>::surd_int(0, 1, 8).unwrap();
        assert_eq!(r, Q2::surd(0, 1, 2, 1));
        assert!(<Q2 as Scalar>::surd_int(0, 1, 5).is_err());
        assert!(<Q5 as Scalar>::surd_int(3, 0, 2).is_ok());
        let f = <f64 as Scalar>::surd_int(1, 1, 5).unwrap();
        assert!((f - 3.236_067_977_499_79).abs() < 1e-14);
    }

    #[test]
    fn float_keys_round() {
        assert_eq!((1.0f64).key(), (1.0 + 1e-9f64).key());
        assert_ne!((1.0f64).key(), (1.0 + 1e-6f64).key());
        assert_eq!((-0.0f64).key(), 0);
        assert_eq!((1.0f64).key_neighbor(), None);
        let edge = 0.5 * KEY_RESOLUTION;
        let (a, b) = ((edge - 1e-15).key(), (edge + 1e-15).key());
        assert_ne!(a, b);
        assert_eq!((edge - 1e-15).key_neighbor(), Some(b));
        assert_eq!((edge + 1e-15).key_neighbor(), Some(a));
    }

    #[test]
    fn field_tags_parse() {
        for f in [Field::Float, Field::Quadratic(2), Field::Quadratic(5)] {
            assert_eq!(f.to_string().parse::<Field>().unwrap(), f);
        }
    }
}
