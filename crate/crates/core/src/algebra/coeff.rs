use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::param::{Param, ParamMonomial};
use super::parampoly::ParamPoly;
use super::{AlgebraError, Rational};

/// Element of the coefficient field: a reduced fraction of parameter polynomials.
///
/// Canonical form: numerator and denominator have integer coefficients, share no
/// common factor (polynomial or integer), and the denominator's leading coefficient
/// is positive. Zero is `0/1`. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coeff {
    num: ParamPoly,
    den: ParamPoly,
}

impl Coeff {
    /// Builds `num/den` and normalizes it.
    pub fn new(num: ParamPoly, den: ParamPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::normalized(ParamPoly::constant(q), ParamPoly::one())
    }

    pub fn from_integer(i: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(i)))
    }

    pub fn param(name: &str) -> Self {
        Coeff {
            num: ParamPoly::var(Param::new(name)),
            den: ParamPoly::one(),
        }
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        Self::normalized(p, ParamPoly::one())
    }

    pub fn numer(&self) -> &ParamPoly {
        &self.num
    }

    pub fn denom(&self) -> &ParamPoly {
        &self.den
    }

    /// Re-establishes the canonical form. Idempotent.
    pub fn normalize(&self) -> Self {
        Self::normalized(self.num.clone(), self.den.clone())
    }

    fn normalized(num: ParamPoly, den: ParamPoly) -> Self {
        if num.is_zero() {
            return Coeff::zero();
        }
        let (mut num, mut den) = if den.is_constant() || num.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            }
        };
        let (n_num, n_den) = num.rational_content();
        let (d_num, d_den) = den.rational_content();
        let l = n_den.lcm(&d_den);
        let g = n_num.gcd(&d_num);
        let mut factor = Rational::new(l, BigInt::one()) / Rational::new(g, BigInt::one());
        if den.leading_coeff().is_negative() {
            factor = -factor;
        }
        if !factor.is_one() {
            num = num.scale(&factor);
            den = den.scale(&factor);
        }
        Coeff { num, den }
    }

    pub fn is_parameter_free(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        Some(self.num.constant_value()? / self.den.constant_value()?)
    }

    pub fn params(&self) -> Vec<Param> {
        let mut ps = self.num.params();
        ps.extend(self.den.params());
        ps.sort();
        ps.dedup();
        ps
    }

    /// Sign of the leading numerator coefficient (the denominator's is always positive).
    pub fn is_negative(&self) -> bool {
        self.num.leading_coeff().is_negative()
    }

    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        Coeff::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        if other.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalized(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn pow(&self, e: u32) -> Self {
        Coeff {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Exact value with every parameter bound by `lookup`.
    pub fn eval(
        &self,
        lookup: &dyn Fn(Param) -> Option<Rational>,
    ) -> Result<Rational, AlgebraError> {
        let n = self.num.eval(lookup).map_err(AlgebraError::UnboundParameter)?;
        let d = self.den.eval(lookup).map_err(AlgebraError::UnboundParameter)?;
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(n / d)
    }

    /// Multiplier that clears all denominators of `cs` and removes their common content,
    /// so that `factor * c` for every `c` is a polynomial with jointly unit content.
    pub fn content_factor(cs: &[Coeff]) -> Coeff {
        let mut l = ParamPoly::one();
        for c in cs {
            if !c.den.is_one() {
                l = l.lcm(&c.den);
            }
        }
        let scaled: Vec<ParamPoly> = cs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.num.mul(&l.div_exact(&c.den).unwrap()))
            .collect();
        let mut g = ParamPoly::zero();
        for n in &scaled {
            g = if g.is_zero() { n.primitive_integer() } else { g.gcd(n) };
        }
        if g.is_zero() {
            return Coeff::one();
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for n in &scaled {
            let (cn, cd) = n.div_exact(&g).unwrap().rational_content();
            den_lcm = den_lcm.lcm(&cd);
            num_gcd = num_gcd.gcd(&cn);
        }
        let k = Rational::new(den_lcm, num_gcd);
        Coeff::normalized(l.scale(&k), g)
    }

    fn add_impl(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Coeff::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        Self::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::zero()
    }
}

impl Zero for Coeff {
    fn zero() -> Self {
        Coeff {
            num: ParamPoly::zero(),
            den: ParamPoly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Coeff {
    fn one() -> Self {
        Coeff {
            num: ParamPoly::one(),
            den: ParamPoly::one(),
        }
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl From<i64> for Coeff {
    fn from(i: i64) -> Self {
        Coeff::from_integer(i)
    }
}

impl From<Rational> for Coeff {
    fn from(q: Rational) -> Self {
        Coeff::from_rational(q)
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Coeff> for &Coeff {
            type Output = Coeff;
            fn $method(self, rhs: &Coeff) -> Coeff {
                let f: fn(&Coeff, &Coeff) -> Coeff = $body;
                f(self, rhs)
            }
        }
        impl $tr<&Coeff> for Coeff {
            type Output = Coeff;
            fn $method(self, rhs: &Coeff) -> Coeff {
                (&self).$method(rhs)
            }
        }
        impl $tr<Coeff> for Coeff {
            type Output = Coeff;
            fn $method(self, rhs: Coeff) -> Coeff {
                (&self).$method(&rhs)
            }
        }
        impl $tr<Coeff> for &Coeff {
            type Output = Coeff;
            fn $method(self, rhs: Coeff) -> Coeff {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b));
forward_binop!(Sub, sub, |a, b| a.add_impl(&-b));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
forward_binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("division by zero coefficient"));

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn is_atomic(p: &ParamPoly) -> bool {
    match p.leading() {
        Some((m, c)) if p.num_terms() == 1 => {
            (m.is_one() && !c.is_negative()) || (c.is_one() && m.factors().len() == 1)
        }
        _ => false,
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if is_atomic(&self.den) {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

/// Convenience constructor for `c * m` with an integer coefficient.
pub fn monomial_coeff(c: i64, m: ParamMonomial) -> Coeff {
    Coeff::from_poly(ParamPoly::term(Rational::from_integer(BigInt::from(c)), m))
}
