use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Position of a difference indeterminate in its system's declaration list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndetId(pub u16);

impl IndetId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Exponent vector of a shift operator, one slot per shift.
pub type Shift = SmallVec<[u32; 4]>;

/// `θ^μ ∘ y^k`: a shifted copy of one indeterminate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiftMonomial {
    pub indet: IndetId,
    pub mu: Shift,
}

impl ShiftMonomial {
    pub fn new(indet: IndetId, mu: &[u32]) -> Self {
        ShiftMonomial {
            indet,
            mu: Shift::from_slice(mu),
        }
    }

    pub fn unshifted(indet: IndetId, nshifts: usize) -> Self {
        ShiftMonomial {
            indet,
            mu: smallvec::smallvec![0; nshifts],
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.mu.iter().sum()
    }

    pub fn deg(&self, i: usize) -> u32 {
        self.mu[i]
    }

    pub fn shifted(&self, theta: &[u32]) -> Self {
        ShiftMonomial {
            indet: self.indet,
            mu: self.mu.iter().zip(theta).map(|(a, b)| a + b).collect(),
        }
    }

    /// Non-strict divisibility: same indeterminate and `other.mu - self.mu >= 0`.
    pub fn divides(&self, other: &Self) -> bool {
        self.indet == other.indet && self.mu.iter().zip(&other.mu).all(|(a, b)| a <= b)
    }

    /// Strict divisibility: divides and the quotient shift is not the identity.
    pub fn strictly_divides(&self, other: &Self) -> bool {
        self.divides(other) && self.mu != other.mu
    }

    /// The shift `θ` with `θ ∘ self = other`, if any.
    pub fn quotient(&self, other: &Self) -> Option<Shift> {
        self.divides(other)
            .then(|| self.mu.iter().zip(&other.mu).map(|(a, b)| b - a).collect())
    }

    /// Least common multiple of two monomials on the same indeterminate.
    pub fn lcm(&self, other: &Self) -> Option<Self> {
        (self.indet == other.indet).then(|| ShiftMonomial {
            indet: self.indet,
            mu: self
                .mu
                .iter()
                .zip(&other.mu)
                .map(|(a, b)| *a.max(b))
                .collect(),
        })
    }
}

impl fmt::Debug for ShiftMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y{}{:?}", self.indet.0, self.mu.as_slice())
    }
}

pub fn shift_is_identity(theta: &[u32]) -> bool {
    theta.iter().all(|&e| e == 0)
}

pub fn shift_degree(theta: &[u32]) -> u32 {
    theta.iter().sum()
}
