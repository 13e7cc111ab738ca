//! Linear difference polynomials, rankings and ordinary reductions.

mod monomial;
mod operator;
mod poly;
mod ranked;
mod ranking;

use thiserror::Error;

pub use monomial::{shift_degree, shift_is_identity, IndetId, Shift, ShiftMonomial};
pub use operator::ShiftOperator;
pub use poly::DiffPoly;
pub use ranked::{
    first_divisor, normal_form, normal_form_with_cofactors, reduce_once, reduce_with, Cofactor,
    RankedPoly, Term, WorkBudget,
};
pub use ranking::{RankKey, Ranking, RankingKind, ShiftOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffPolyError {
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("monomial does not occur in the polynomial")]
    MissingTerm,
    #[error("monomial is not a shift of the reductor's leading monomial")]
    NotDivisible,
    #[error("reduction budget of {limit} steps exceeded")]
    BudgetExceeded { limit: u64 },
}

/// Symbol names for indeterminates and shift operators, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Names {
    pub indets: Vec<String>,
    pub shifts: Vec<String>,
}

impl Names {
    pub fn new(indets: Vec<String>, shifts: Vec<String>) -> Self {
        Names { indets, shifts }
    }

    pub fn indet(&self, k: IndetId) -> &str {
        &self.indets[k.index()]
    }

    pub fn indet_id(&self, name: &str) -> Option<IndetId> {
        self.indets
            .iter()
            .position(|s| s == name)
            .map(|i| IndetId(i as u16))
    }

    /// Shift operator prefix such as `Sx^2*St`, empty for the identity.
    pub fn shift(&self, theta: &[u32]) -> String {
        let mut parts = Vec::new();
        for (name, &e) in self.shifts.iter().zip(theta) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }

    /// Text form of `θ^μ ∘ y^k`, e.g. `Sx^2*St(u_x)`.
    pub fn monomial(&self, m: &ShiftMonomial) -> String {
        let op = self.shift(&m.mu);
        if op.is_empty() {
            self.indet(m.indet).to_string()
        } else {
            format!("{op}({})", self.indet(m.indet))
        }
    }
}
