use num_traits::ToPrimitive;

use crate::algebra::Param;
use crate::schemegen::Scheme;
use crate::Rational;

use super::{real, NumericsError, Real};

/// A smooth function of the grid coordinates, one per shift in the scheme's shift order.
pub type FieldFn<'a, T> = Box<dyn Fn(&[T]) -> T + 'a>;

pub struct ConsistencySetup<'a, T> {
    /// Mesh step of each shift as a multiple of `h`.
    pub ratios: Vec<T>,
    /// Lowest corner of the stencil.
    pub base: Vec<T>,
    /// Parameter values for a given `h`.
    pub params: Box<dyn Fn(T) -> Vec<(String, T)> + 'a>,
    /// Exact solution for each indeterminate.
    pub fields: Vec<(String, FieldFn<'a, T>)>,
    /// Fields whose image fixes the scale of the scheme, typically `u = t` for an
    /// evolution equation. Missing indeterminates are zero.
    pub unit: Vec<(String, FieldFn<'a, T>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConsistencyReport<T> {
    pub hs: Vec<T>,
    /// Scheme applied to the exact solution, divided by the scheme applied to the unit fields.
    pub residuals: Vec<T>,
    /// `log(r_i / r_{i+1}) / log(h_i / h_{i+1})`.
    pub orders: Vec<T>,
    /// Every residual is within rounding of the terms it sums.
    pub exact: bool,
}

impl<T: Real> ConsistencyReport<T> {
    pub fn order(&self) -> Option<T> {
        self.orders.last().copied()
    }
}

fn apply<T: Real>(
    s: &Scheme,
    setup: &ConsistencySetup<'_, T>,
    fields: &[(String, FieldFn<'_, T>)],
    h: T,
) -> Result<(T, T), NumericsError> {
    let values: Vec<(String, Rational)> = (setup.params)(h)
        .into_iter()
        .map(|(n, v)| {
            v.to_f64()
                .and_then(Rational::from_float)
                .map(|q| (n, q))
                .ok_or(NumericsError::Singular)
        })
        .collect::<Result<_, _>>()?;
    let lookup = |p: Param| values.iter().find(|(n, _)| n == p.name()).map(|(_, q)| q.clone());
    let (mut sum, mut mag) = (T::zero(), T::zero());
    for (m, c) in s.poly.to_origin().terms() {
        let name = s.names.indet(m.indet);
        let Some((_, f)) = fields.iter().find(|(n, _)| n == name) else {
            continue;
        };
        let c = c
            .eval(&lookup)
            .map_err(|_| NumericsError::UnboundParameter(name.to_string()))?;
        let c = c.to_f64().and_then(T::from_f64).ok_or(NumericsError::Singular)?;
        let point: Vec<T> = setup
            .base
            .iter()
            .zip(&setup.ratios)
            .zip(m.mu.iter())
            .map(|((b, r), &e)| *b + T::from_u32(e).expect("shift") * *r * h)
            .collect();
        let v = c * f(&point);
        sum = sum + v;
        mag = mag + v.abs();
    }
    Ok((sum, mag))
}

/// Estimates the order of consistency of `s` from residuals at the mesh sizes `hs`.
pub fn consistency_order<T: Real>(
    s: &Scheme,
    setup: &ConsistencySetup<'_, T>,
    hs: &[T],
) -> Result<ConsistencyReport<T>, NumericsError> {
    let mut residuals = Vec::with_capacity(hs.len());
    let mut exact = true;
    for &h in hs {
        let (r, mag) = apply(s, setup, &setup.fields, h)?;
        let (unit, _) = apply(s, setup, &setup.unit, h)?;
        if unit == T::zero() {
            return Err(NumericsError::Singular);
        }
        exact &= r.abs() <= real::<T>(64.0) * T::epsilon() * mag;
        residuals.push((r / unit).abs());
    }
    let orders = if exact {
        Vec::new()
    } else {
        residuals
            .windows(2)
            .zip(hs.windows(2))
            .map(|(r, h)| (r[0] / r[1]).ln() / (h[0] / h[1]).ln())
            .collect()
    };
    Ok(ConsistencyReport {
        hs: hs.to_vec(),
        residuals,
        orders,
        exact,
    })
}
