use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::algebra::Field;

use super::monomial::{IndetId, ShiftMonomial};
use super::ranking::Ranking;
use super::{DiffPolyError, Names};

/// Linear difference polynomial: a finite map from shift monomials to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DiffPoly<K> {
    terms: BTreeMap<ShiftMonomial, K>,
}

impl<K: Field> Default for DiffPoly<K> {
    fn default() -> Self {
        DiffPoly {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Field> DiffPoly<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: ShiftMonomial, c: K) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (ShiftMonomial, K)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: ShiftMonomial, c: K) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ShiftMonomial, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &ShiftMonomial) -> Option<&K> {
        self.terms.get(m)
    }

    pub fn indets(&self) -> Vec<IndetId> {
        let mut ids: Vec<IndetId> = self.terms.keys().map(|m| m.indet).collect();
        ids.dedup();
        ids
    }

    pub fn contains_indet(&self, k: IndetId) -> bool {
        self.terms.keys().any(|m| m.indet == k)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DiffPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        DiffPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), -v.clone()))
                .collect(),
        }
    }

    /// `θ ∘ p`: adds `theta` to every exponent vector.
    pub fn apply_shift(&self, theta: &[u32]) -> Self {
        DiffPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.shifted(theta), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> DiffPoly<L> {
        DiffPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Replaces every monomial on indeterminate `from` by the same shift of `to`.
    pub fn rename_indet(&self, from: IndetId, to: IndetId) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut m = m.clone();
            if m.indet == from {
                m.indet = to;
            }
            (m, c.clone())
        }))
    }

    /// The ≻-largest monomial and its coefficient.
    pub fn leading(&self, r: &Ranking) -> Result<(ShiftMonomial, K), DiffPolyError> {
        self.terms
            .iter()
            .max_by(|a, b| r.cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(DiffPolyError::ZeroPolynomial)
    }

    pub fn leading_monomial(&self, r: &Ranking) -> Option<ShiftMonomial> {
        self.terms.keys().max_by(|a, b| r.cmp(a, b)).cloned()
    }

    /// Terms from highest to lowest rank.
    pub fn sorted_terms(&self, r: &Ranking) -> Vec<(&ShiftMonomial, &K)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| r.cmp(b.0, a.0));
        v
    }

    /// Scalar multiple with denominators and common content cleared and a positive
    /// leading coefficient.
    pub fn normalized(&self, r: &Ranking) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let cs: Vec<K> = self.terms.values().cloned().collect();
        let mut k = K::content_factor(&cs);
        let (_, lc) = self.leading(r).expect("nonzero");
        if (lc * &k).is_negative() {
            k = -k;
        }
        self.scale(&k)
    }

    /// Monic multiple (leading coefficient one).
    pub fn monic(&self, r: &Ranking) -> Self {
        match self.leading(r) {
            Ok((_, lc)) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            Err(_) => Self::zero(),
        }
    }

    /// Smallest exponent per shift over all terms; shifting by its negation moves the
    /// polynomial to the origin.
    pub fn min_shift(&self) -> Option<Vec<u32>> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo: Vec<u32> = first.mu.to_vec();
        for m in it {
            for (l, &e) in lo.iter_mut().zip(&m.mu) {
                *l = (*l).min(e);
            }
        }
        Some(lo)
    }

    /// Shifts the polynomial back so that every shift's minimal exponent is zero.
    pub fn to_origin(&self) -> Self {
        let Some(lo) = self.min_shift() else {
            return Self::zero();
        };
        DiffPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m = m.clone();
                    for (e, l) in m.mu.iter_mut().zip(&lo) {
                        *e -= l;
                    }
                    (m, c.clone())
                })
                .collect(),
        }
    }

    /// Canonical text form using the given symbol names, terms in descending rank.
    pub fn display(&self, names: &Names, r: &Ranking) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.sorted_terms(r).into_iter().enumerate() {
            let neg = c.is_negative();
            let a = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !a.is_one() {
                let s = a.to_string();
                if needs_parens(&s) {
                    let _ = write!(out, "({s})*");
                } else {
                    let _ = write!(out, "{s}*");
                }
            }
            out.push_str(&names.monomial(m));
        }
        out
    }
}

/// True when a coefficient string has a top-level sum or difference.
fn needs_parens(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Coeff;
    use num_traits::One;

    fn names() -> Names {
        Names::new(vec!["u_x".into(), "u".into()], vec!["Sx".into(), "St".into()])
    }

    fn m(k: u16, mu: &[u32]) -> ShiftMonomial {
        ShiftMonomial::new(IndetId(k), mu)
    }

    #[test]
    fn shift_adds_exponents() {
        let h = Coeff::param("h");
        let p: DiffPoly<Coeff> = DiffPoly::from_terms([
            (m(0, &[1, 0]), Coeff::from(2) * &h),
            (m(1, &[2, 0]), Coeff::from(-1)),
            (m(1, &[0, 0]), Coeff::from(1)),
        ]);
        let r = Ranking::elimination_lex(2, 2);
        let q = p.apply_shift(&[1, 0]);
        assert_eq!(q.display(&names(), &r), "2*h*Sx^2(u_x) - Sx^3(u) + Sx(u)");
        assert_eq!(p.apply_shift(&[0, 0]), p);
        assert!(DiffPoly::<Coeff>::zero().apply_shift(&[0, 1]).is_zero());
    }

    #[test]
    fn leading_of_midpoint_relation() {
        let h = Coeff::param("h");
        let p: DiffPoly<Coeff> = DiffPoly::from_terms([
            (m(0, &[1, 0]), Coeff::from(2) * &h),
            (m(1, &[2, 0]), Coeff::from(-1)),
            (m(1, &[0, 0]), Coeff::from(1)),
        ]);
        let r = Ranking::elimination_lex(2, 2);
        assert_eq!(p.leading(&r).unwrap(), (m(0, &[1, 0]), Coeff::from(2) * &h));
        assert_eq!(
            DiffPoly::<Coeff>::zero().leading(&r),
            Err(DiffPolyError::ZeroPolynomial)
        );
        let single = DiffPoly::monomial(m(1, &[0, 3]), Coeff::from(5));
        assert_eq!(single.leading(&r).unwrap(), (m(1, &[0, 3]), Coeff::from(5)));
        let lexed: DiffPoly<Coeff> =
            DiffPoly::from_terms([(m(1, &[1, 0]), Coeff::one()), (m(1, &[0, 1]), Coeff::one())]);
        assert_eq!(lexed.leading(&r).unwrap().0, m(1, &[1, 0]));
    }

    #[test]
    fn normalized_clears_denominators() {
        let h = Coeff::param("h");
        let p: DiffPoly<Coeff> = DiffPoly::from_terms([
            (m(0, &[1, 0]), -(h.clone() / Coeff::from(2))),
            (m(1, &[0, 0]), Coeff::from(3) / &h),
        ]);
        let r = Ranking::elimination_lex(2, 2);
        assert_eq!(p.normalized(&r).display(&names(), &r), "h^2*Sx(u_x) - 6*u");
    }

    #[test]
    fn coefficient_sums_are_parenthesized() {
        let c = Coeff::param("h") - Coeff::param("tau");
        let p: DiffPoly<Coeff> = DiffPoly::monomial(m(1, &[0, 1]), c);
        let r = Ranking::elimination_lex(2, 2);
        assert_eq!(p.display(&names(), &r), "(h - tau)*St(u)");
    }
}
