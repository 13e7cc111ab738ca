use num_traits::One;

use crate::algebra::Coeff;
use crate::diffpoly::{IndetId, ShiftMonomial, ShiftOperator};
use crate::Poly;

use super::SchemeError;

/// Quadrature rule turning `∫ d = Δ primitive` into a difference relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Over two cells, evaluated at the middle node: `2h·θ∘d − (θ²−1)∘u`.
    Midpoint,
    /// Over one cell: `(h/2)(θ+1)∘d − (θ−1)∘u`.
    Trapezoid,
    /// Over one step, evaluated at the left node: `τ·d − (θ−1)∘u`.
    ExplicitEuler,
}

impl Rule {
    pub fn code(self) -> char {
        match self {
            Rule::Midpoint => 'm',
            Rule::Trapezoid => 't',
            Rule::ExplicitEuler => 'e',
        }
    }

    pub fn from_code(c: char) -> Option<Rule> {
        match c {
            'm' => Some(Rule::Midpoint),
            't' => Some(Rule::Trapezoid),
            'e' => Some(Rule::ExplicitEuler),
            _ => None,
        }
    }
}

/// A grid direction: its shift operator and mesh step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axis {
    pub shift: usize,
    pub step: Coeff,
}

impl Axis {
    pub fn new(shift: usize, step: &str) -> Self {
        Axis {
            shift,
            step: Coeff::param(step),
        }
    }
}

fn theta(nshifts: usize, axis: &Axis, e: u32) -> ShiftOperator<Coeff> {
    ShiftOperator::shift(nshifts, axis.shift, e)
}

fn scalar(nshifts: usize, c: Coeff) -> ShiftOperator<Coeff> {
    ShiftOperator::scalar(nshifts, c)
}

/// Discrete form of `∫ derivative = Δ primitive` along `axis`.
pub fn discretize_relation(
    derivative: IndetId,
    primitive: IndetId,
    rule: Rule,
    axis: &Axis,
    nshifts: usize,
) -> Result<Poly, SchemeError> {
    if axis.shift >= nshifts {
        return Err(SchemeError::UnknownAxis(axis.shift));
    }
    let one = scalar(nshifts, Coeff::one());
    let (lhs, rhs) = match rule {
        Rule::Midpoint => (
            theta(nshifts, axis, 1).scale(&(Coeff::from(2) * &axis.step)),
            theta(nshifts, axis, 2).sub(&one),
        ),
        Rule::Trapezoid => (
            theta(nshifts, axis, 1)
                .add(&one)
                .scale(&(axis.step.clone() / Coeff::from(2))),
            theta(nshifts, axis, 1).sub(&one),
        ),
        Rule::ExplicitEuler => (scalar(nshifts, axis.step.clone()), theta(nshifts, axis, 1).sub(&one)),
    };
    Ok(lhs.on(derivative).sub(&rhs.on(primitive)))
}

/// Lax averaging of a one-sided time relation: the relation is multiplied by `θ_space`
/// and its `θ_space∘primitive` term is replaced by `(θ_space²+1)/2 ∘ primitive`.
pub fn lax_substitute(
    p: &Poly,
    primitive: IndetId,
    space: &Axis,
    nshifts: usize,
) -> Result<Poly, SchemeError> {
    let shifted = theta(nshifts, space, 1).apply(p);
    let mut mu = vec![0u32; nshifts];
    mu[space.shift] = 1;
    let at = ShiftMonomial::new(primitive, &mu);
    let c = shifted.coeff(&at).cloned().ok_or(SchemeError::MissingLaxTerm)?;
    let average = theta(nshifts, space, 2)
        .add(&scalar(nshifts, Coeff::one()))
        .scale(&(c.clone() / Coeff::from(2)));
    Ok(shifted
        .sub(&Poly::monomial(at, c))
        .add(&average.on(primitive)))
}
