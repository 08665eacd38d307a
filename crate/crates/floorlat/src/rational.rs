//! Exact rational scalars and the floor expressions built on them.
//!
//! No floating point anywhere in this module. Shifts given as decimal
//! strings are parsed as exact decimal fractions, never as binary floats:
//! the floor of a near-integer argument is the quantity everything else
//! depends on, so it must be computed exactly.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// An exact signed fraction, always stored reduced with a positive
/// denominator. Backed by arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational {
    inner: BigRational,
}

impl Rational {
    /// Builds `num/den`, reducing and normalizing the sign. Fails on a zero
    /// denominator.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::Domain("rational denominator must be nonzero".into()));
        }
        Ok(Self {
            inner: BigRational::new(num.into(), den),
        })
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self {
            inner: BigRational::from_integer(n.into()),
        }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn numer(&self) -> &BigInt {
        self.inner.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.inner.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.inner.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.inner.is_positive()
    }

    /// Greatest integer `z` with `z ≤ self`, exact for all magnitudes.
    pub fn floor_int(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }

    /// Least integer `z` with `z ≥ self`.
    pub fn ceil_int(&self) -> BigInt {
        self.numer().div_ceil(self.denom())
    }

    /// `self − ⌊self⌋`, always in `[0, 1)`.
    pub fn fract(&self) -> Rational {
        Self {
            inner: &self.inner - BigRational::from_integer(self.floor_int()),
        }
    }

    /// Conversion at the exact-arithmetic boundary; counting paths never
    /// call this.
    pub fn to_f64(&self) -> f64 {
        self.inner.to_f64().unwrap_or_else(|| {
            self.numer().to_f64().unwrap_or(f64::NAN) / self.denom().to_f64().unwrap_or(f64::NAN)
        })
    }

    /// True iff `0 ≤ self < 1`.
    pub fn in_unit_interval(&self) -> bool {
        !self.inner.is_negative() && self.inner < BigRational::one()
    }
}

impl fmt::Display for Rational {
    /// Canonical form is always reduced `p/q`, including a denominator of 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rational({})", self)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p/q` with optional sign, an integer, or a decimal such as
    /// `0.68237922734` (parsed as 68237922734/10^11, exactly).
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::ParseRational(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(err());
        }
        let (sign, body) = match t.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, t.strip_prefix('+').unwrap_or(t)),
        };
        if body.is_empty() {
            return Err(err());
        }
        let parse_digits = |d: &str| -> Result<BigInt> {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                Err(err())
            } else {
                d.parse::<BigInt>().map_err(|_| err())
            }
        };
        let mag = if let Some((p, q)) = body.split_once('/') {
            let num = parse_digits(p)?;
            let den = parse_digits(q)?;
            if den.is_zero() {
                return Err(err());
            }
            BigRational::new(num, den)
        } else if let Some((int, frac)) = body.split_once('.') {
            let int = if int.is_empty() {
                BigInt::zero()
            } else {
                parse_digits(int)?
            };
            let frac_digits = parse_digits(frac)?;
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            BigRational::new(int * &scale + frac_digits, scale)
        } else {
            BigRational::from_integer(parse_digits(body)?)
        };
        Ok(Self {
            inner: mag * BigRational::from_integer(BigInt::from(sign)),
        })
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational {
                    inner: (&self.inner).$method(&rhs.inner),
                }
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);
impl_binop!(Div, div);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            inner: -&self.inner,
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

/// The k-th term of the shifted floor sequence: `⌊(n − ν)/k + α⌋`, computed
/// as the floor of a single reduced rational.
pub fn shifted_floor_term(n: u64, k: u64, alpha: &Rational, nu: &Rational) -> Result<BigInt> {
    if k < 1 || k > n {
        return Err(Error::Domain(format!(
            "term index k={k} outside [1, n] with n={n}"
        )));
    }
    let x = (Rational::from_int(n) - nu.clone()) / Rational::from_int(k) + alpha.clone();
    Ok(x.floor_int())
}

/// True iff some positive integer `d` satisfies `⌈d·a⌉ = b`, i.e. `a`
/// real-ly divides `b`. Only defined for `a > 0`.
///
/// `⌈d·a⌉ = b` holds exactly when `d·a ∈ (b−1, b]`, so it suffices to test
/// the largest `d` with `d·a ≤ b`.
pub fn really_divides(a: &Rational, b: u64) -> Result<bool> {
    if !a.is_positive() {
        return Err(Error::Domain(
            "real divisibility is defined only for positive a".into(),
        ));
    }
    let d = (Rational::from_int(b) / a.clone()).floor_int();
    if !d.is_positive() {
        return Ok(false);
    }
    let prod = Rational::from_int(d) * a.clone();
    Ok(prod > Rational::from_int(b as i64 - 1))
}
