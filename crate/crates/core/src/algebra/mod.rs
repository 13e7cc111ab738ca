//! Exact coefficient arithmetic.
//!
//! [`Rational`] is an arbitrary-precision rational number. [`Coeff`] is a rational
//! function in named parameters. Both implement [`Field`], the scalar interface the
//! rest of the crate is generic over.

mod coeff;
mod param;
mod parampoly;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use coeff::{monomial_coeff, Coeff};
pub use param::{Param, ParamMonomial};
pub use parampoly::ParamPoly;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parameter `{0}` has no value")]
    UnboundParameter(Param),
}

/// Exact field of coefficients for linear difference polynomials.
pub trait Field:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_rational(q: Rational) -> Self;

    fn from_i64(i: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(i)))
    }

    /// The value as a plain rational, when it involves no parameters.
    fn to_rational(&self) -> Option<Rational>;

    fn is_parameter_free(&self) -> bool {
        self.to_rational().is_some()
    }

    /// Sign convention used to make printed leading coefficients positive.
    fn is_negative(&self) -> bool;

    /// Nonzero multiplier turning every element of `cs` into a denominator-free
    /// value with jointly unit content.
    fn content_factor(cs: &[Self]) -> Self;
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn from_rational(q: Rational) -> Self {
        q
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn content_factor(cs: &[Self]) -> Self {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in cs {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        if num.is_zero() {
            return Rational::one();
        }
        Rational::new(den, num)
    }
}

impl Field for Coeff {
    fn inv(&self) -> Option<Self> {
        self.inverse().ok()
    }

    fn from_rational(q: Rational) -> Self {
        Coeff::from_rational(q)
    }

    fn to_rational(&self) -> Option<Rational> {
        Coeff::to_rational(self)
    }

    fn is_parameter_free(&self) -> bool {
        Coeff::is_parameter_free(self)
    }

    fn is_negative(&self) -> bool {
        Coeff::is_negative(self)
    }

    fn content_factor(cs: &[Self]) -> Self {
        Coeff::content_factor(cs)
    }
}
