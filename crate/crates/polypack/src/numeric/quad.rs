//! Exact numbers `a + b√m` of a real quadratic field.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::error::NumericError;
use super::int::Int;

/// Subrings whose membership the integrality certificates need.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    /// The rational integers.
    Z,
    /// `ℤ[√2]`, living in `ℚ(√2)`.
    ZSqrt2,
    /// `ℤ[φ]` with `φ = (1+√5)/2`, living in `ℚ(√5)`.
    ZPhi,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "Z"),
            Ring::ZSqrt2 => write!(f, "Z[sqrt2]"),
            Ring::ZPhi => write!(f, "Z[phi]"),
        }
    }
}

const fn is_squarefree(m: i64) -> bool {
    if m < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// `(a + b√M) / d` with `d > 0` and `gcd(a, b, d) = 1`.
///
/// The field is a type parameter, so mixing `ℚ(√2)` and `ℚ(√5)` values is a
/// compile error rather than a runtime check.
#[derive(Clone)]
pub struct Quad<const M: i64> {
    a: Int,
    b: Int,
    d: Int,
}

pub type Q2 = Quad<2>;
pub type Q3 = Quad<3>;
pub type Q5 = Quad<5>;
pub type Q6 = Quad<6>;

impl<const M: i64> Quad<M> {
    const VALID: () = assert!(is_squarefree(M), "field parameter must be square-free and > 1");

    fn raw(a: Int, b: Int, d: Int) -> Self {
        let () = Self::VALID;
        Quad { a, b, d }
    }

    fn normalized(a: Int, b: Int, d: Int) -> Self {
        assert!(!d.is_zero(), "zero denominator");
        if d.is_one() {
            return Self::raw(a, b, d);
        }
        let g = a.gcd(&b).gcd(&d);
        let (mut a, mut b, mut d) = if g.is_one() {
            (a, b, d)
        } else {
            (a.div_exact(&g), b.div_exact(&g), d.div_exact(&g))
        };
        if d.signum() < 0 {
            a = -a;
            b = -b;
            d = -d;
        }
        Self::raw(a, b, d)
    }

    pub fn from_int(n: i64) -> Self {
        Self::raw(Int::Small(n), Int::ZERO, Int::ONE)
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::normalized(Int::Small(n), Int::ZERO, Int::Small(d))
    }

    /// `an/ad + (bn/bd)√M`.
    pub fn surd(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        let d = Int::Small(ad) * Int::Small(bd);
        Self::normalized(
            Int::Small(an) * Int::Small(bd),
            Int::Small(bn) * Int::Small(ad),
            d,
        )
    }

    pub fn from_rationals(a: &BigRational, b: &BigRational) -> Self {
        let d = a.denom() * b.denom();
        let an = a.numer() * b.denom();
        let bn = b.numer() * a.denom();
        Self::normalized(Int::from_big(an), Int::from_big(bn), Int::from_big(d))
    }

    /// `√M` itself.
    pub fn sqrt_m() -> Self {
        Self::raw(Int::ZERO, Int::ONE, Int::ONE)
    }

    pub fn m() -> i64 {
        M
    }

    pub fn rational_part(&self) -> BigRational {
        BigRational::new(self.a.to_big(), self.d.to_big())
    }

    pub fn surd_part(&self) -> BigRational {
        BigRational::new(self.b.to_big(), self.d.to_big())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::raw(self.a.clone(), -&self.b, self.d.clone())
    }

    /// Field norm `a² − M b²` of the represented number.
    pub fn norm(&self) -> BigRational {
        let r = self.rational_part();
        let s = self.surd_part();
        &r * &r - BigRational::from_integer(BigInt::from(M)) * &s * &s
    }

    /// Exact sign.
    pub fn signum(&self) -> i32 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let mb2 = &(&Int::Small(M) * &self.b) * &self.b;
        if a2 > mb2 {
            sa
        } else {
            sb
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64();
        let b = self.b.to_f64();
        let d = self.d.to_f64();
        let r = (M as f64).sqrt();
        if self.a.signum() * self.b.signum() < 0 {
            // a + b√M = (a² − M b²)/(a − b√M) avoids the cancellation.
            let num = &(&self.a * &self.a) - &(&(&Int::Small(M) * &self.b) * &self.b);
            num.to_f64() / (a - b * r) / d
        } else {
            (a + b * r) / d
        }
    }

    pub fn checked_recip(&self) -> Result<Self, NumericError> {
        if self.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        let den = &(&self.a * &self.a) - &(&(&Int::Small(M) * &self.b) * &self.b);
        Ok(Self::normalized(&self.d * &self.a, -&(&self.d * &self.b), den))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, NumericError> {
        Ok(self * &rhs.checked_recip()?)
    }

    /// A square root inside the same field, when one exists.
    pub fn sqrt_if_expressible(&self) -> Result<Option<Self>, NumericError> {
        if self.signum() < 0 {
            return Err(NumericError::NegativeRadicand(self.to_string()));
        }
        let a = self.rational_part();
        let b = self.surd_part();
        let m = BigRational::from_integer(BigInt::from(M));
        if b.is_zero() {
            if let Some(r) = rational_sqrt(&a) {
                return Ok(Some(Self::from_rationals(&r, &BigRational::zero())));
            }
            if let Some(r) = rational_sqrt(&(&a / &m)) {
                return Ok(Some(Self::from_rationals(&BigRational::zero(), &r)));
            }
            return Ok(None);
        }
        let Some(s) = rational_sqrt(&self.norm()) else {
            return Ok(None);
        };
        let two = BigRational::from_integer(BigInt::from(2));
        for cand in [(&a + &s) / &two, (&a - &s) / &two] {
            if let Some(p) = rational_sqrt(&cand) {
                if p.is_zero() {
                    continue;
                }
                let q = &b / (&two * &p);
                let y = Self::from_rationals(&p, &q);
                if &(&y * &y) == self {
                    return Ok(Some(y.abs()));
                }
            }
        }
        Ok(None)
    }

    /// Membership in one of the supported rings of integers.
    pub fn is_ring_integer(&self, ring: Ring) -> Result<bool, NumericError> {
        match ring {
            Ring::Z => Ok(self.b.is_zero() && self.d.is_one()),
            Ring::ZSqrt2 => {
                if M != 2 {
                    return Err(NumericError::IncompatibleRing { ring, m: M });
                }
                Ok(self.d.is_one())
            }
            Ring::ZPhi => {
                if M != 5 {
                    return Err(NumericError::IncompatibleRing { ring, m: M });
                }
                // a + b√5 = (a − b) + 2b·φ
                let two_b = &Int::Small(2) * &self.b;
                let a_minus_b = &self.a - &self.b;
                let divides = |x: &Int| x.gcd(&self.d) == self.d;
                Ok(divides(&two_b) && divides(&a_minus_b))
            }
        }
    }

    fn cmp_exact(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = Int::from_big(q.numer().clone()).exact_sqrt()?;
    let d = Int::from_big(q.denom().clone()).exact_sqrt()?;
    Some(BigRational::new(n.to_big(), d.to_big()))
}

impl<const M: i64> PartialEq for Quad<M> {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && self.d == other.d
    }
}

impl<const M: i64> Eq for Quad<M> {}

impl<const M: i64> Hash for Quad<M> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        self.d.hash(state);
    }
}

impl<const M: i64> PartialOrd for Quad<M> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<const M: i64> Ord for Quad<M> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

impl<const M: i64> Zero for Quad<M> {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn is_zero(&self) -> bool {
        Quad::is_zero(self)
    }
}

impl<const M: i64> One for Quad<M> {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl<const M: i64> From<i64> for Quad<M> {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a, const M: i64> Add<&'a Quad<M>> for &'a Quad<M> {
    type Output = Quad<M>;
    fn add(self, rhs: &Quad<M>) -> Quad<M> {
        if self.d == rhs.d {
            return Quad::normalized(&self.a + &rhs.a, &self.b + &rhs.b, self.d.clone());
        }
        Quad::normalized(
            &(&self.a * &rhs.d) + &(&rhs.a * &self.d),
            &(&self.b * &rhs.d) + &(&rhs.b * &self.d),
            &self.d * &rhs.d,
        )
    }
}

impl<'a, const M: i64> Sub<&'a Quad<M>> for &'a Quad<M> {
    type Output = Quad<M>;
    fn sub(self, rhs: &Quad<M>) -> Quad<M> {
        if self.d == rhs.d {
            return Quad::normalized(&self.a - &rhs.a, &self.b - &rhs.b, self.d.clone());
        }
        Quad::normalized(
            &(&self.a * &rhs.d) - &(&rhs.a * &self.d),
            &(&self.b * &rhs.d) - &(&rhs.b * &self.d),
            &self.d * &rhs.d,
        )
    }
}

impl<'a, const M: i64> Mul<&'a Quad<M>> for &'a Quad<M> {
    type Output = Quad<M>;
    fn mul(self, rhs: &Quad<M>) -> Quad<M> {
        let m = Int::Small(M);
        let (a, b) = if self.b.is_zero() && rhs.b.is_zero() {
            (&self.a * &rhs.a, Int::ZERO)
        } else {
            (
                &(&self.a * &rhs.a) + &(&(&m * &self.b) * &rhs.b),
                &(&self.a * &rhs.b) + &(&self.b * &rhs.a),
            )
        };
        Quad::normalized(a, b, &self.d * &rhs.d)
    }
}

impl<'a, const M: i64> Div<&'a Quad<M>> for &'a Quad<M> {
    type Output = Quad<M>;
    /// Panics on division by zero; use [`Quad::checked_div`] to get an error.
    fn div(self, rhs: &Quad<M>) -> Quad<M> {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl<const M: i64> Neg for &Quad<M> {
    type Output = Quad<M>;
    fn neg(self) -> Quad<M> {
        Quad::raw(-&self.a, -&self.b, self.d.clone())
    }
}

impl<const M: i64> Neg for Quad<M> {
    type Output = Quad<M>;
    fn neg(self) -> Quad<M> {
        -&self
    }
}

macro_rules! by_value {
    ($tr:ident, $f:ident) => {
        impl<const M: i64> $tr for Quad<M> {
            type Output = Quad<M>;
            fn $f(self, rhs: Quad<M>) -> Quad<M> {
                (&self).$f(&rhs)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);
by_value!(Div, div);

fn write_rational(f: &mut fmt::Formatter<'_>, n: &Int, d: &Int) -> fmt::Result {
    let g = n.gcd(d);
    let (n, d) = (n.div_exact(&g), d.div_exact(&g));
    if d.is_one() {
        write!(f, "{n}")
    } else {
        write!(f, "{n}/{d}")
    }
}

/// Written as `a/b+c/d√m`; a zero part is omitted.
impl<const M: i64> fmt::Display for Quad<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write_rational(f, &self.a, &self.d);
        }
        if !self.a.is_zero() {
            write_rational(f, &self.a, &self.d)?;
            if self.b.signum() > 0 {
                write!(f, "+")?;
            }
        }
        write_rational(f, &self.b, &self.d)?;
        write!(f, "√{M}")
    }
}

impl<const M: i64> fmt::Debug for Quad<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, NumericError> {
    let bad = || NumericError::Parse(s.to_string());
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Accepts the `Display` form, with `sqrt` allowed in place of `√`.
impl<const M: i64> FromStr for Quad<M> {
    type Err = NumericError;

    fn from_str(input: &str) -> Result<Self, NumericError> {
        let s: String = input.replace("sqrt", "√").chars().filter(|c| !c.is_whitespace()).collect();
        let Some(root) = s.find('√') else {
            return Ok(Self::from_rationals(&parse_rational(&s)?, &BigRational::zero()));
        };
        let m: i64 = s[root + '√'.len_utf8()..]
            .parse()
            .map_err(|_| NumericError::Parse(input.to_string()))?;
        if m != M {
            return Err(NumericError::FieldMismatch { expected: M, found: m });
        }
        let head = &s[..root];
        let split = head
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .next_back();
        let (a_txt, b_txt) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let b = match b_txt {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            t => parse_rational(t)?,
        };
        Ok(Self::from_rationals(&parse_rational(a_txt)?, &b))
    }
}
