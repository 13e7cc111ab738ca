use crate::parser::RankingSpec;

use super::{Equation, ProblemSpec, Rule, SchemeError};

/// Names accepted by [`problem`].
pub const PROBLEMS: &[&str] = &[
    "laplace",
    "heat",
    "wave",
    "advection",
    "burgers-ftfs",
    "burgers-lax",
    "lax-wendroff",
    "godunov",
];

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

pub(crate) fn given(s: &str) -> Equation {
    Equation::Given(s.to_string())
}

pub(crate) fn relation(derivative: &str, primitive: &str, rule: Rule, axis: &str) -> Equation {
    Equation::Relation {
        derivative: derivative.to_string(),
        primitive: primitive.to_string(),
        rule,
        axis: axis.to_string(),
    }
}

pub(crate) fn lax(derivative: &str, primitive: &str, advanced: &str) -> Equation {
    Equation::Lax {
        derivative: derivative.to_string(),
        primitive: primitive.to_string(),
        advanced: advanced.to_string(),
        time: "St".to_string(),
        space: "Sx".to_string(),
    }
}

pub(crate) fn spec(
    name: &str,
    params: &[&str],
    shifts: &[(&str, &str)],
    indets: &[&str],
    equations: Vec<Equation>,
    surviving: &[&str],
) -> ProblemSpec {
    ProblemSpec {
        name: name.to_string(),
        params: strings(params),
        shifts: shifts
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        indets: strings(indets),
        ranking: RankingSpec::Lex,
        equations,
        surviving: strings(surviving),
    }
}

/// `u_xx + u_yy = 0` over the square contour with both relations under `rule`.
pub fn laplace(rule: Rule) -> ProblemSpec {
    spec(
        "laplace",
        &["h"],
        &[("Sx", "h"), ("Sy", "h")],
        &["u_x", "u_y", "u"],
        vec![
            given("(Sx*Sy^2 - Sx)(u_y) + (Sx^2*Sy - Sy)(u_x)"),
            relation("u_x", "u", rule, "Sx"),
            relation("u_y", "u", rule, "Sy"),
        ],
        &["u"],
    )
}

/// `u_t + α u_xx = 0`; midpoint contour, relation under `rule`.
pub fn heat(rule: Rule) -> ProblemSpec {
    spec(
        "heat",
        &["h", "tau", "alpha"],
        &[("Sx", "h"), ("St", "tau")],
        &["u_x", "u"],
        vec![
            given("alpha*tau/2*(1 + St - Sx^2 - St*Sx^2)(u_x) - 2*h*(Sx*St - Sx)(u)"),
            relation("u_x", "u", rule, "Sx"),
        ],
        &["u"],
    )
}

/// `u_tt − u_xx = 0` with equal mesh steps.
pub fn wave(rule: Rule) -> ProblemSpec {
    spec(
        "wave",
        &["h"],
        &[("Sx", "h"), ("St", "h")],
        &["u_x", "u_t", "u"],
        vec![
            given("(Sx - Sx*St^2)(u_t) + (Sx^2*St - St)(u_x)"),
            relation("u_x", "u", rule, "Sx"),
            relation("u_t", "u", rule, "St"),
        ],
        &["u"],
    )
}

/// `u_t + ν u_x = 0` with a Lax-averaged time relation.
pub fn advection() -> ProblemSpec {
    spec(
        "advection",
        &["h", "tau", "nu"],
        &[("St", "tau"), ("Sx", "h")],
        &["u_t", "u_x", "u"],
        vec![
            given("u_t + nu*u_x"),
            lax("u_t", "u", "u"),
            relation("u_x", "u", Rule::Midpoint, "Sx"),
        ],
        &["u"],
    )
}

/// Burgers `u_t + f_x = ν u_xx` over the square contour (forward time, forward space).
pub fn burgers_ftfs() -> ProblemSpec {
    spec(
        "burgers-ftfs",
        &["h", "tau", "nu"],
        &[("St", "tau"), ("Sx", "h")],
        &["u_x", "u", "f"],
        vec![
            given("h*(Sx*St^2 - Sx)(u) - nu*tau*(Sx^2*St - St)(u_x) + tau*(Sx^2*St - St)(f)"),
            relation("u_x", "u", Rule::Midpoint, "Sx"),
        ],
        &["u", "f"],
    )
}

/// Burgers with a Lax time relation; `rules` applies to the `f_x`, `u_x` and `u_xx`
/// relations in that order.
pub fn burgers_lax(rules: [Rule; 3]) -> ProblemSpec {
    spec(
        "burgers-lax",
        &["h", "tau", "nu"],
        &[("St", "tau"), ("Sx", "h")],
        &["u_xx", "u_t", "u_x", "f_x", "u", "f"],
        vec![
            given("u_t + f_x - nu*u_xx"),
            lax("u_t", "u", "u"),
            relation("f_x", "f", rules[0], "Sx"),
            relation("u_x", "u", rules[1], "Sx"),
            relation("u_xx", "u_x", rules[2], "Sx"),
        ],
        &["u", "f"],
    )
}

/// Inviscid Burgers with the two-branch Riemann flux condition.
pub fn godunov() -> ProblemSpec {
    spec(
        "godunov",
        &["h", "tau"],
        &[("St", "tau"), ("Sx", "h")],
        &["u_xx", "u_x", "u_t", "f_x", "f", "u"],
        vec![
            given("u_t + f_x"),
            relation("u_t", "u", Rule::ExplicitEuler, "St"),
            Equation::Factored(
                "h*f_x - (Sx - 1)(f)".to_string(),
                "h*Sx(f_x) - (Sx - 1)(f)".to_string(),
            ),
            relation("u_x", "u", Rule::Midpoint, "Sx"),
            relation("u_xx", "u_x", Rule::Midpoint, "Sx"),
        ],
        &["u", "f"],
    )
}

fn parse_rules<const N: usize>(s: &str, allowed: &[Rule]) -> Result<[Rule; N], SchemeError> {
    let bad = || SchemeError::BadRules(s.to_string());
    let rules: Vec<Rule> = s
        .chars()
        .map(|c| Rule::from_code(c).filter(|r| allowed.contains(r)).ok_or_else(bad))
        .collect::<Result<_, _>>()?;
    rules.try_into().map_err(|_| bad())
}

/// A canned problem by name. `rules` is a string of `m`/`t` codes for problems with
/// selectable spatial quadrature.
pub fn problem(name: &str, rules: Option<&str>) -> Result<ProblemSpec, SchemeError> {
    let mt = [Rule::Midpoint, Rule::Trapezoid];
    let single = |default: Rule| -> Result<Rule, SchemeError> {
        match rules {
            None => Ok(default),
            Some(s) => parse_rules::<1>(s, &mt).map(|r| r[0]),
        }
    };
    let none = || match rules {
        None => Ok(()),
        Some(s) => Err(SchemeError::BadRules(s.to_string())),
    };
    Ok(match name {
        "laplace" => laplace(single(Rule::Midpoint)?),
        "heat" => heat(single(Rule::Trapezoid)?),
        "wave" => wave(single(Rule::Trapezoid)?),
        "advection" => none().map(|_| advection())?,
        "burgers-ftfs" => none().map(|_| burgers_ftfs())?,
        "burgers-lax" => burgers_lax(match rules {
            None => [Rule::Midpoint; 3],
            Some(s) => parse_rules(s, &mt)?,
        }),
        "lax-wendroff" => super::burgers::lax_wendroff_spec(match rules {
            None => [Rule::Midpoint; 6],
            Some(s) => parse_rules(s, &mt)?,
        }),
        "godunov" => none().map(|_| godunov())?,
        other => return Err(SchemeError::UnknownProblem(other.to_string())),
    })
}
