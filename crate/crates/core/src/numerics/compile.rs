use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::Param;
use crate::schemegen::{ProductScheme, Scheme};
use crate::Rational;

use super::{NumericsError, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    U,
    F,
}

/// One known value feeding the update: `coeff · field^{n−level}_{j+dx}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tap<T> {
    pub field: Field,
    pub level: usize,
    pub dx: i32,
    pub coeff: T,
}

/// `u^{n+1}_j = Σ taps (+ sweep.1 · u^{n+1}_{j+sweep.0})`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearUpdate<T> {
    pub taps: Vec<Tap<T>>,
    /// Number of known time levels the update reads.
    pub levels: usize,
    /// A second unknown to the left of the solved node, filled in by a left-to-right sweep.
    pub sweep: Option<(i32, T)>,
}

impl<T: Real> LinearUpdate<T> {
    pub fn width(&self) -> usize {
        self.taps
            .iter()
            .map(|t| t.dx.unsigned_abs() as usize)
            .chain(self.sweep.map(|(dx, _)| dx.unsigned_abs() as usize))
            .max()
            .unwrap_or(0)
    }
}

/// Conservative update with the exact Godunov flux; the two upwind branches it selects
/// between are kept for inspection.
#[derive(Clone, Debug, PartialEq)]
pub struct GodunovUpdate<T> {
    pub branches: [LinearUpdate<T>; 2],
    /// `τ/h`.
    pub lambda: T,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StencilUpdate<T> {
    Linear(LinearUpdate<T>),
    Godunov(GodunovUpdate<T>),
}

impl<T: Real> StencilUpdate<T> {
    pub fn levels(&self) -> usize {
        match self {
            StencilUpdate::Linear(l) => l.levels,
            StencilUpdate::Godunov(_) => 1,
        }
    }

    pub fn width(&self) -> usize {
        match self {
            StencilUpdate::Linear(l) => l.width(),
            StencilUpdate::Godunov(_) => 1,
        }
    }
}

type Univariate = Vec<Rational>;

fn trim(mut p: Univariate) -> Univariate {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn rem(a: &Univariate, b: &Univariate) -> Univariate {
    let mut r = a.clone();
    let lb = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let q = r.last().expect("nonempty").clone() / &lb;
        let off = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[off + i] -= &q * c;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn gcd(a: Univariate, b: Univariate) -> Univariate {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    let lead = a.last().cloned().unwrap_or_else(Rational::one);
    a.into_iter().map(|c| c / &lead).collect()
}

fn div_exact(a: &Univariate, b: &Univariate) -> Univariate {
    let mut r = a.clone();
    let lb = b.last().expect("nonzero divisor").clone();
    let mut q = vec![Rational::zero(); a.len() + 1 - b.len()];
    while r.len() >= b.len() && !r.is_empty() {
        let c = r.last().expect("nonempty").clone() / &lb;
        let off = r.len() - b.len();
        for (i, bc) in b.iter().enumerate() {
            r[off + i] -= &c * bc;
        }
        q[off] = c;
        r = trim(r);
    }
    debug_assert!(r.is_empty());
    q
}

fn to_real<T: Real>(q: &Rational) -> Result<T, NumericsError> {
    q.to_f64().and_then(T::from_f64).ok_or(NumericsError::Singular)
}

fn field_of(name: &str) -> Result<Field, NumericsError> {
    match name {
        "u" => Ok(Field::U),
        "f" => Ok(Field::F),
        other => Err(NumericsError::UnsupportedIndet(other.to_string())),
    }
}

/// Exact coefficients of `s` at the given parameter values, grouped by `(field, time)`
/// as polynomials in `θx`, with their common `θx`-content removed.
pub(super) fn numeric_terms<T: Real>(
    s: &Scheme,
    params: &[(&str, T)],
) -> Result<BTreeMap<(Field, u32), Univariate>, NumericsError> {
    let shifts = &s.names.shifts;
    let (Some(t), Some(x)) = (
        shifts.iter().position(|n| n == "St"),
        shifts.iter().position(|n| n == "Sx"),
    ) else {
        return Err(NumericsError::UnsupportedShifts(shifts.clone()));
    };
    if shifts.len() != 2 {
        return Err(NumericsError::UnsupportedShifts(shifts.clone()));
    }
    let values: Vec<(&str, Rational)> = params
        .iter()
        .map(|(n, v)| {
            v.to_f64()
                .and_then(Rational::from_float)
                .map(|q| (*n, q))
                .ok_or(NumericsError::Singular)
        })
        .collect::<Result<_, _>>()?;
    let lookup = |p: Param| values.iter().find(|(n, _)| *n == p.name()).map(|(_, q)| q.clone());
    let mut groups: BTreeMap<(Field, u32), Univariate> = BTreeMap::new();
    for (m, c) in s.poly.to_origin().terms() {
        let field = field_of(s.names.indet(m.indet))?;
        let v = c.eval(&lookup).map_err(|e| match e {
            crate::algebra::AlgebraError::UnboundParameter(p) => {
                NumericsError::UnboundParameter(p.name().to_string())
            }
            _ => NumericsError::Singular,
        })?;
        let g = groups.entry((field, m.mu[t])).or_default();
        let k = m.mu[x] as usize;
        if g.len() <= k {
            g.resize(k + 1, Rational::zero());
        }
        g[k] += v;
    }
    groups.retain(|_, p| {
        *p = trim(std::mem::take(p));
        !p.is_empty()
    });
    let content = groups.values().cloned().fold(Vec::new(), gcd);
    if content.len() > 1 {
        for p in groups.values_mut() {
            *p = div_exact(p, &content);
        }
    }
    // Re-anchor both axes at the origin.
    let lo_x = groups
        .values()
        .filter_map(|p| p.iter().position(|c| !c.is_zero()))
        .min()
        .unwrap_or(0);
    let lo_t = groups.keys().map(|(_, t)| *t).min().unwrap_or(0);
    Ok(groups
        .into_iter()
        .map(|((f, dt), p)| ((f, dt - lo_t), p[lo_x..].to_vec()))
        .collect())
}

fn node_name(field: Field, t: u32, x: usize) -> String {
    let f = match field {
        Field::U => "u",
        Field::F => "f",
    };
    format!("{f}[t+{t}, x+{x}]")
}

/// Solves a scheme in `u` and `f = u²/2` for its new-level `u` node.
///
/// The new level may hold one further `u` node to the left of the solved one, provided
/// its coefficient is no larger in magnitude; such updates run as a left-to-right sweep.
pub fn compile_update<T: Real>(
    s: &Scheme,
    params: &[(&str, T)],
) -> Result<StencilUpdate<T>, NumericsError> {
    compile_linear(s, params).map(StencilUpdate::Linear)
}

fn compile_linear<T: Real>(s: &Scheme, params: &[(&str, T)]) -> Result<LinearUpdate<T>, NumericsError> {
    let groups = numeric_terms(s, params)?;
    let top = groups
        .keys()
        .filter(|(f, _)| *f == Field::U)
        .map(|(_, t)| *t)
        .max()
        .ok_or_else(|| NumericsError::UnsupportedIndet("u".into()))?;
    if groups.contains_key(&(Field::F, top)) {
        return Err(NumericsError::ImplicitFlux);
    }
    let unknown: Vec<(usize, &Rational)> = groups[&(Field::U, top)]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let (xs, lead) = *unknown.last().expect("nonzero group");
    let sweep = match unknown.as_slice() {
        [_] => None,
        [(xo, co), _] if co.abs() <= lead.abs() => {
            Some((*xo as i32 - xs as i32, to_real::<T>(&(-(*co).clone() / lead))?))
        }
        _ => {
            return Err(NumericsError::NotExplicit {
                nodes: unknown.iter().map(|(x, _)| node_name(Field::U, top, *x)).collect(),
            })
        }
    };
    let mut taps = Vec::new();
    for ((field, t), p) in &groups {
        if *t == top {
            continue;
        }
        for (x, c) in p.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            taps.push(Tap {
                field: *field,
                level: (top - t - 1) as usize,
                dx: x as i32 - xs as i32,
                coeff: to_real(&(-c.clone() / lead))?,
            });
        }
    }
    Ok(LinearUpdate {
        taps,
        levels: top as usize,
        sweep,
    })
}

/// Compiles both factors of a product scheme and checks that each is a two-point
/// conservative upwind update with the same `τ/h`.
pub fn compile_godunov<T: Real>(
    p: &ProductScheme,
    params: &[(&str, T)],
) -> Result<StencilUpdate<T>, NumericsError> {
    let a = compile_linear(&p.factors[0], params)?;
    let b = compile_linear(&p.factors[1], params)?;
    let lambda = |l: &LinearUpdate<T>| {
        let fs: Vec<&Tap<T>> = l.taps.iter().filter(|t| t.field == Field::F).collect();
        match fs.as_slice() {
            [x, y] if l.levels == 1 && l.sweep.is_none() && (x.coeff + y.coeff).abs() <= T::epsilon() => {
                Some(x.coeff.abs())
            }
            _ => None,
        }
    };
    let not_upwind = || NumericsError::NotExplicit {
        nodes: vec!["godunov factor is not a two-point flux update".into()],
    };
    let (la, lb) = (lambda(&a).ok_or_else(not_upwind)?, lambda(&b).ok_or_else(not_upwind)?);
    if (la - lb).abs() > T::epsilon() * la {
        return Err(not_upwind());
    }
    Ok(StencilUpdate::Godunov(GodunovUpdate {
        branches: [a, b],
        lambda: la,
    }))
}
