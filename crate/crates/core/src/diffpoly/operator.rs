use std::collections::BTreeMap;

use crate::algebra::Field;

use super::monomial::{Shift, ShiftMonomial};
use super::poly::DiffPoly;
use super::IndetId;

/// Linear combination of shift operators `Σ c_μ θ^μ`, acting on difference polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftOperator<K> {
    nshifts: usize,
    terms: BTreeMap<Shift, K>,
}

impl<K: Field> ShiftOperator<K> {
    pub fn zero(nshifts: usize) -> Self {
        ShiftOperator {
            nshifts,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(nshifts: usize, c: K) -> Self {
        let mut op = Self::zero(nshifts);
        op.add_term(smallvec::smallvec![0; nshifts], c);
        op
    }

    pub fn identity(nshifts: usize) -> Self {
        Self::scalar(nshifts, K::one())
    }

    /// `θ_i^e`.
    pub fn shift(nshifts: usize, i: usize, e: u32) -> Self {
        let mut mu: Shift = smallvec::smallvec![0; nshifts];
        mu[i] = e;
        let mut op = Self::zero(nshifts);
        op.add_term(mu, K::one());
        op
    }

    pub fn add_term(&mut self, mu: Shift, c: K) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&mu) {
            Some(old) => old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(mu, sum);
        }
    }

    pub fn nshifts(&self) -> usize {
        self.nshifts
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Shift, &K)> {
        self.terms.iter()
    }

    /// The coefficient when the operator is a plain scalar.
    pub fn as_scalar(&self) -> Option<K> {
        match self.terms.len() {
            0 => Some(K::zero()),
            1 => {
                let (mu, c) = self.terms.iter().next().unwrap();
                mu.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (mu, c) in &other.terms {
            out.add_term(mu.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ShiftOperator {
            nshifts: self.nshifts,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &K) -> Self {
        let mut out = Self::zero(self.nshifts);
        for (mu, c) in &self.terms {
            out.add_term(mu.clone(), c.clone() * k);
        }
        out
    }

    /// Composition, which is commutative for shifts.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nshifts);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mu: Shift = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(mu, ca.clone() * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.nshifts);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn apply(&self, p: &DiffPoly<K>) -> DiffPoly<K> {
        let mut out = DiffPoly::zero();
        for (mu, c) in &self.terms {
            for (m, v) in p.terms() {
                out.add_term(m.shifted(mu), v.clone() * c);
            }
        }
        out
    }

    /// Applies the operator to the unshifted indeterminate `k`.
    pub fn on(&self, k: IndetId) -> DiffPoly<K> {
        self.apply(&DiffPoly::monomial(
            ShiftMonomial::unshifted(k, self.nshifts),
            K::one(),
        ))
    }
}

impl<K: Field> DiffPoly<K> {
    /// Splits the polynomial by indeterminate into operators: `p = Σ_k op_k ∘ y^k`.
    pub fn operator_parts(&self, nshifts: usize) -> BTreeMap<IndetId, ShiftOperator<K>> {
        let mut parts: BTreeMap<IndetId, ShiftOperator<K>> = BTreeMap::new();
        for (m, c) in self.terms() {
            parts
                .entry(m.indet)
                .or_insert_with(|| ShiftOperator::zero(nshifts))
                .add_term(m.mu.clone(), c.clone());
        }
        parts
    }
}
