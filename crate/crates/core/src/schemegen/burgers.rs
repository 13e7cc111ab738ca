use std::fmt;

use crate::engine::EngineOptions;

use super::problems::{burgers_lax, given, lax, relation, spec};
use super::{generate_with, scheme_equiv, Equation, Generated, ProblemSpec, Rule, Scheme, SchemeError};

/// One rule combination of the Lax-type Burgers system.
#[derive(Clone, Debug)]
pub struct BurgersVariant {
    /// Rules for the `f_x`, `u_x` and `u_xx` relations.
    pub rules: [Rule; 3],
    pub generated: Generated,
}

impl BurgersVariant {
    /// `m`/`t` code such as `mtm`.
    pub fn code(&self) -> String {
        self.rules.iter().map(|r| r.code()).collect()
    }

    pub fn scheme(&self) -> &Scheme {
        &self.generated.scheme
    }
}

/// All eight midpoint/trapezoid combinations, in `mmm, mmt, …, ttt` order.
pub fn burgers_variants(opts: &EngineOptions) -> Result<Vec<BurgersVariant>, SchemeError> {
    let both = [Rule::Midpoint, Rule::Trapezoid];
    let mut out = Vec::with_capacity(8);
    for a in both {
        for b in both {
            for c in both {
                let rules = [a, b, c];
                let generated = generate_with(&burgers_lax(rules), opts)?;
                out.push(BurgersVariant { rules, generated });
            }
        }
    }
    Ok(out)
}

/// Groups schemes into equivalence classes, each listed by index in input order.
pub fn distinct_classes(schemes: &[&Scheme]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, s) in schemes.iter().enumerate() {
        match classes.iter_mut().find(|c| scheme_equiv(schemes[c[0]], s)) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

/// Two-level Burgers system with barred intermediate values; `rules` covers the six
/// spatial relations `f_x, u_x, u_xx` and then their barred counterparts.
pub fn lax_wendroff_spec(rules: [Rule; 6]) -> ProblemSpec {
    spec(
        "lax-wendroff",
        &["h", "tau", "nu"],
        &[("St", "tau"), ("Sx", "h")],
        &[
            "u_xx", "ub_xx", "u_x", "ub_x", "u_t", "ub_t", "f_x", "fb_x", "f", "u", "fb", "ub",
        ],
        vec![
            given("u_t + f_x - nu*u_xx"),
            lax("u_t", "u", "ub"),
            relation("f_x", "f", rules[0], "Sx"),
            relation("u_x", "u", rules[1], "Sx"),
            relation("u_xx", "u_x", rules[2], "Sx"),
            given("ub_t + fb_x - nu*ub_xx"),
            given("tau*ub_t - St(u) + u"),
            relation("fb_x", "fb", rules[3], "Sx"),
            relation("ub_x", "ub", rules[4], "Sx"),
            relation("ub_xx", "ub_x", rules[5], "Sx"),
        ],
        &["f", "u", "fb", "ub"],
    )
}

/// Predictor and corrector of a two-step scheme.
#[derive(Clone, Debug)]
pub struct LaxWendroff {
    /// Relates `ub` at the new level to `u` and `f`.
    pub predictor: Scheme,
    /// Relates the new `u` to `ub` and `fb`.
    pub corrector: Scheme,
    pub generated: Generated,
}

pub fn lax_wendroff(rules: [Rule; 6], opts: &EngineOptions) -> Result<LaxWendroff, SchemeError> {
    let spec = lax_wendroff_spec(rules);
    let generated = generate_with(&spec, opts)?;
    let names = spec.names();
    let id = |s: &str| names.indet_id(s).expect("declared");
    let (f, fb, ub) = (id("f"), id("fb"), id("ub"));
    let pick = |with: crate::IndetId, without: crate::IndetId| {
        generated
            .candidates
            .iter()
            .find(|g| g.contains_indet(with) && g.contains_indet(ub) && !g.contains_indet(without))
            .map(|g| Scheme::new(g.clone(), names.clone(), generated.scheme.ranking.clone()))
    };
    match (pick(f, fb), pick(fb, f)) {
        (Some(predictor), Some(corrector)) => Ok(LaxWendroff {
            predictor,
            corrector,
            generated,
        }),
        _ => Err(SchemeError::NoScheme {
            basis: Box::new(generated.basis),
        }),
    }
}

/// Product of two linear schemes, one per branch of a factored equation.
#[derive(Clone, Debug)]
pub struct ProductScheme {
    pub factors: [Scheme; 2],
}

impl ProductScheme {
    /// Factors shifted by one common offset so that the pair starts at the origin.
    fn aligned(&self) -> [crate::Poly; 2] {
        align(self.factors.clone().map(|f| f.poly))
    }

    /// Equal up to a common shift, a scalar per factor and the order of the factors.
    pub fn equiv(&self, other: &ProductScheme) -> bool {
        let (names, r) = (&self.factors[0].names, &self.factors[0].ranking);
        let Some(theirs) = other
            .factors
            .iter()
            .map(|f| f.in_names(names))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        let key = |ps: [crate::Poly; 2]| {
            let mut v: Vec<String> = align(ps)
                .iter()
                .map(|f| f.monic(r).display(names, r))
                .collect();
            v.sort();
            v
        };
        let theirs: [crate::Poly; 2] = theirs.try_into().expect("two factors");
        key(self.factors.clone().map(|f| f.poly)) == key(theirs)
    }
}

fn align(factors: [crate::Poly; 2]) -> [crate::Poly; 2] {
    let n = factors[0].min_shift().map_or(0, |m| m.len());
    let mut lo = vec![u32::MAX; n];
    for f in &factors {
        for (l, e) in lo.iter_mut().zip(f.min_shift().unwrap_or_default()) {
            *l = (*l).min(e);
        }
    }
    factors.map(|f| {
        crate::Poly::from_terms(f.terms().map(|(m, c)| {
            let mu: Vec<u32> = m.mu.iter().zip(&lo).map(|(e, l)| e - l).collect();
            (crate::ShiftMonomial::new(m.indet, &mu), c.clone())
        }))
    })
}

impl fmt::Display for ProductScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = self.aligned();
        let r = &self.factors[0].ranking;
        let names = &self.factors[0].names;
        write!(
            f,
            "({}) * ({})",
            a.normalized(r).display(names, r),
            b.normalized(r).display(names, r)
        )
    }
}

/// The two linear problems obtained by replacing the factored equation with each factor.
pub fn branch_specs(spec: &ProblemSpec) -> Result<[ProblemSpec; 2], SchemeError> {
    let at = spec
        .equations
        .iter()
        .position(|e| matches!(e, Equation::Factored(..)))
        .ok_or_else(|| SchemeError::BadRules("no factored equation".into()))?;
    let Equation::Factored(a, b) = &spec.equations[at] else {
        unreachable!()
    };
    Ok([a, b].map(|factor| {
        let mut s = spec.clone();
        s.equations[at] = Equation::Given(factor.clone());
        s
    }))
}

/// Eliminates each branch of the factored equation separately and returns the product
/// of the two branch schemes.
pub fn godunov_compose(spec: &ProblemSpec, opts: &EngineOptions) -> Result<ProductScheme, SchemeError> {
    let mut factors = Vec::with_capacity(2);
    for (branch, s) in branch_specs(spec)?.iter().enumerate() {
        let g = generate_with(s, opts).map_err(|e| SchemeError::Branch {
            branch,
            source: Box::new(e),
        })?;
        factors.push(g.scheme);
    }
    // Shift the factors so that both update the same node of the solved indeterminate.
    let solved = spec.names().indet_id(&spec.surviving[0]).expect("declared");
    let top: Vec<Vec<u32>> = factors
        .iter()
        .map(|f: &Scheme| {
            f.poly
                .terms()
                .map(|(m, _)| m)
                .filter(|m| m.indet == solved)
                .max_by(|a, b| f.ranking.cmp(a, b))
                .map_or_else(|| vec![0; spec.shifts.len()], |m| m.mu.to_vec())
        })
        .collect();
    let target: Vec<u32> = top[0].iter().zip(&top[1]).map(|(a, b)| *a.max(b)).collect();
    for (f, t) in factors.iter_mut().zip(&top) {
        let d: Vec<u32> = target.iter().zip(t).map(|(a, b)| a - b).collect();
        f.poly = f.poly.apply_shift(&d);
    }
    Ok(ProductScheme {
        factors: factors.try_into().expect("two branches"),
    })
}
