//! Finite-difference schemes by elimination.
//!
//! A [`ProblemSpec`] lists a conservation-law equation (already discretized over its
//! contour) plus one integral relation per derivative, each with a quadrature [`Rule`].
//! [`generate_scheme`] builds the difference system, computes its Gröbner basis under
//! an elimination ranking and returns the basis element free of every derivative.

mod burgers;
mod golden;
mod problems;
mod templates;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::Coeff;
use crate::diffpoly::{IndetId, Names, Ranking, ShiftMonomial, ShiftOperator};
use crate::engine::{groebner_basis, BasisResult, EngineError, EngineOptions};
use crate::parser::{parse_system, ParseError, RankingSpec, SystemSource};
use crate::Poly;

pub use burgers::{
    branch_specs, burgers_variants, distinct_classes, godunov_compose, lax_wendroff, lax_wendroff_spec,
    BurgersVariant, LaxWendroff, ProductScheme,
};
pub use golden::{golden, GOLDEN};
pub use problems::{advection, burgers_ftfs, burgers_lax, godunov, heat, laplace, problem, wave, PROBLEMS};
pub use templates::{discretize_relation, lax_substitute, Axis, Rule};

#[derive(Debug, Error)]
pub enum SchemeError {
    #[error("shift axis {0} is not declared")]
    UnknownAxis(usize),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("time relation has no lone primitive term to average")]
    MissingLaxTerm,
    #[error("unknown problem `{0}`")]
    UnknownProblem(String),
    #[error("rule string `{0}` is not valid here")]
    BadRules(String),
    #[error("malformed equation: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("no basis element is free of the eliminated indeterminates")]
    NoScheme { basis: Box<BasisResult<Coeff>> },
    #[error("branch {branch} failed: {source}")]
    Branch {
        branch: usize,
        #[source]
        source: Box<SchemeError>,
    },
}

/// One equation of a problem before discretization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equation {
    /// A difference equation in the `.dps` expression syntax.
    Given(String),
    /// `∫ derivative d(axis) = Δ primitive` under a quadrature rule.
    Relation {
        derivative: String,
        primitive: String,
        rule: Rule,
        axis: String,
    },
    /// Explicit time relation averaged in space by the Lax method. The new time level
    /// holds `advanced`, which is usually the primitive itself.
    Lax {
        derivative: String,
        primitive: String,
        advanced: String,
        time: String,
        space: String,
    },
    /// Product of two linear factors; only [`godunov_compose`] accepts it.
    Factored(String, String),
}

/// A discretized problem together with its elimination ranking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub name: String,
    pub params: Vec<String>,
    /// Shift names from highest to lowest priority, each with its mesh-step parameter.
    pub shifts: Vec<(String, String)>,
    /// Indeterminates from highest to lowest elimination priority.
    pub indets: Vec<String>,
    pub ranking: RankingSpec,
    pub equations: Vec<Equation>,
    /// Indeterminates allowed in the scheme.
    pub surviving: Vec<String>,
}

impl ProblemSpec {
    fn header(&self) -> String {
        let mut s = String::new();
        if !self.params.is_empty() {
            s.push_str(&format!("params {};\n", self.params.join(" ")));
        }
        let shifts: Vec<&str> = self.shifts.iter().map(|(n, _)| n.as_str()).collect();
        s.push_str(&format!("shifts {};\n", shifts.join(" ")));
        s.push_str(&format!("indets {};\n", self.indets.join(" > ")));
        s.push_str(&format!("ranking {};\n", self.ranking));
        s
    }

    fn axis(&self, name: &str) -> Result<Axis, SchemeError> {
        self.shifts
            .iter()
            .position(|(n, _)| n == name)
            .map(|i| Axis::new(i, &self.shifts[i].1))
            .ok_or_else(|| SchemeError::UnknownSymbol(name.to_string()))
    }

    fn indet(&self, name: &str) -> Result<IndetId, SchemeError> {
        self.indets
            .iter()
            .position(|n| n == name)
            .map(|i| IndetId(i as u16))
            .ok_or_else(|| SchemeError::UnknownSymbol(name.to_string()))
    }

    fn parse_expr(&self, expr: &str) -> Result<Poly, SchemeError> {
        let src = format!("{}eq: {expr};\n", self.header());
        Ok(parse_system(&src)?.equations.remove(0))
    }

    fn equation(&self, eq: &Equation) -> Result<Poly, SchemeError> {
        let n = self.shifts.len();
        match eq {
            Equation::Given(e) => self.parse_expr(e),
            Equation::Relation {
                derivative,
                primitive,
                rule,
                axis,
            } => discretize_relation(
                self.indet(derivative)?,
                self.indet(primitive)?,
                *rule,
                &self.axis(axis)?,
                n,
            ),
            Equation::Lax {
                derivative,
                primitive,
                advanced,
                time,
                space,
            } => {
                let p = self.indet(primitive)?;
                let t = self.axis(time)?;
                let mut euler =
                    discretize_relation(self.indet(derivative)?, p, Rule::ExplicitEuler, &t, n)?;
                if advanced != primitive {
                    let step = ShiftOperator::<Coeff>::shift(n, t.shift, 1);
                    euler = euler.add(&step.on(p)).sub(&step.on(self.indet(advanced)?));
                }
                lax_substitute(&euler, p, &self.axis(space)?, n)
            }
            Equation::Factored(..) => Err(SchemeError::BadRules(
                "factored equations need godunov_compose".into(),
            )),
        }
    }

    /// The discretized difference system.
    pub fn system(&self) -> Result<SystemSource, SchemeError> {
        let base = parse_system(&self.header())?;
        let equations = self
            .equations
            .iter()
            .map(|e| self.equation(e))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SystemSource { equations, ..base })
    }

    pub fn names(&self) -> Names {
        Names::new(
            self.indets.clone(),
            self.shifts.iter().map(|(n, _)| n.clone()).collect(),
        )
    }

    fn surviving_ids(&self) -> Result<Vec<IndetId>, SchemeError> {
        self.surviving.iter().map(|s| self.indet(s)).collect()
    }
}

/// A difference scheme: a polynomial in the surviving indeterminates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scheme {
    pub poly: Poly,
    pub names: Names,
    pub ranking: Ranking,
}

/// One grid value of a stencil, offsets measured from the scheme's lowest corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub offset: Vec<u32>,
    pub indet: String,
    pub coeff: Coeff,
}

impl Scheme {
    pub fn new(poly: Poly, names: Names, ranking: Ranking) -> Self {
        Scheme {
            poly: poly.normalized(&ranking),
            names,
            ranking,
        }
    }

    /// Content-cleared text with a positive leading coefficient, shifted to the origin.
    pub fn display(&self) -> String {
        self.poly
            .to_origin()
            .normalized(&self.ranking)
            .display(&self.names, &self.ranking)
    }

    pub fn stencil(&self) -> Vec<Node> {
        self.poly
            .to_origin()
            .sorted_terms(&self.ranking)
            .into_iter()
            .map(|(m, c)| Node {
                offset: m.mu.to_vec(),
                indet: self.names.indet(m.indet).to_string(),
                coeff: c.clone(),
            })
            .collect()
    }

    /// The polynomial with indeterminates renamed into `names`, if all of them exist there.
    pub(crate) fn in_names(&self, names: &Names) -> Option<Poly> {
        if names.shifts != self.names.shifts {
            return None;
        }
        let mut terms = Vec::with_capacity(self.poly.len());
        for (m, c) in self.poly.terms() {
            let k = names.indet_id(self.names.indet(m.indet))?;
            terms.push((ShiftMonomial::new(k, &m.mu), c.clone()));
        }
        Some(Poly::from_terms(terms))
    }

    /// Shift-and-scale invariant form used for comparisons.
    fn canonical(p: &Poly, r: &Ranking) -> Poly {
        p.to_origin().monic(r)
    }

    /// Replaces the named parameters by the given values.
    pub fn substitute(&self, values: &BTreeMap<&str, Coeff>) -> Scheme {
        let poly = self.poly.map_coeffs(|c| substitute_coeff(c, values));
        Scheme::new(poly, self.names.clone(), self.ranking.clone())
    }
}

fn substitute_coeff(c: &Coeff, values: &BTreeMap<&str, Coeff>) -> Coeff {
    let eval = |p: &crate::ParamPoly| {
        let mut acc = Coeff::zero();
        for (m, q) in p.terms() {
            let mut t = Coeff::from_rational(q.clone());
            for &(param, e) in m.factors() {
                let v = values
                    .get(param.name())
                    .cloned()
                    .unwrap_or_else(|| Coeff::param(param.name()));
                t = t * &v.pow(e);
            }
            acc = acc + &t;
        }
        acc
    };
    eval(c.numer()) / eval(c.denom())
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// True iff `a = c·θ^σ∘b` for a nonzero constant `c` and a shift `σ` in either direction.
pub fn scheme_equiv(a: &Scheme, b: &Scheme) -> bool {
    let Some(bp) = b.in_names(&a.names) else {
        return false;
    };
    if a.poly.len() != bp.len() {
        return false;
    }
    Scheme::canonical(&a.poly, &a.ranking) == Scheme::canonical(&bp, &a.ranking)
}

/// A generated scheme with the basis it came from.
#[derive(Clone, Debug)]
pub struct Generated {
    pub scheme: Scheme,
    /// Every reduced-basis element free of eliminated indeterminates, lowest first.
    pub candidates: Vec<Poly>,
    pub system: SystemSource,
    pub basis: BasisResult<Coeff>,
}

pub fn generate_scheme(spec: &ProblemSpec) -> Result<Generated, SchemeError> {
    generate_with(spec, &EngineOptions::default())
}

pub fn generate_with(spec: &ProblemSpec, opts: &EngineOptions) -> Result<Generated, SchemeError> {
    let system = spec.system()?;
    let r = system.ranking();
    let keep = spec.surviving_ids()?;
    let basis = groebner_basis(&system.equations, &r, opts)?;
    let mut candidates: Vec<Poly> = basis
        .reduced_gb
        .iter()
        .filter(|g| g.indets().iter().all(|k| keep.contains(k)))
        .cloned()
        .collect();
    candidates.sort_by(|a, b| {
        let la = a.leading_monomial(&r).expect("nonzero");
        let lb = b.leading_monomial(&r).expect("nonzero");
        r.cmp(&la, &lb)
    });
    let Some(first) = candidates.first() else {
        return Err(SchemeError::NoScheme {
            basis: Box::new(basis),
        });
    };
    Ok(Generated {
        scheme: Scheme::new(first.clone(), spec.names(), r.clone()),
        candidates,
        system,
        basis,
    })
}

/// Sums `θ_space^j ∘ p` over one period of a periodic grid, wrapping offsets around,
/// and checks that every `flux` term cancels while `conserved` is left as a difference
/// of two full-period sums at distinct time offsets.
pub fn telescopes(s: &Scheme, space: usize, conserved: &str, fluxes: &[&str]) -> bool {
    let n = s.names.shifts.len();
    let p = s.poly.to_origin();
    let period = p.terms().map(|(m, _)| m.mu[space]).max().unwrap_or(0) + 1;
    // (indet, offset with the space slot cleared) -> coefficient per residue class
    let mut summed: BTreeMap<(String, Vec<u32>), Vec<Coeff>> = BTreeMap::new();
    for j in 0..period {
        let q = ShiftOperator::<Coeff>::shift(n, space, j).apply(&p);
        for (m, c) in q.terms() {
            let mut mu = m.mu.to_vec();
            let residue = (mu[space] % period) as usize;
            mu[space] = 0;
            let e = summed
                .entry((s.names.indet(m.indet).to_string(), mu))
                .or_insert_with(|| vec![Coeff::zero(); period as usize]);
            e[residue] = e[residue].clone() + c;
        }
    }
    summed.retain(|_, cs| cs.iter().any(|c| !c.is_zero()));
    let mut levels = Vec::new();
    for ((k, _), cs) in &summed {
        if fluxes.contains(&k.as_str()) || k != conserved || cs.iter().any(|c| c != &cs[0]) {
            return false;
        }
        levels.push(&cs[0]);
    }
    levels.len() == 2 && (levels[0].clone() + levels[1]).is_zero()
}
