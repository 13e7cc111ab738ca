use std::cmp::Ordering;

use crate::algebra::Field;

use super::monomial::{Shift, ShiftMonomial};
use super::poly::DiffPoly;
use super::ranking::{RankKey, Ranking};
use super::DiffPolyError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term<K> {
    pub key: RankKey,
    pub mono: ShiftMonomial,
    pub coeff: K,
}

/// A difference polynomial stored in descending order of a fixed ranking,
/// so the leading term is the first one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedPoly<K> {
    terms: Vec<Term<K>>,
}

impl<K: Field> RankedPoly<K> {
    pub fn zero() -> Self {
        RankedPoly { terms: Vec::new() }
    }

    pub fn from_poly(p: &DiffPoly<K>, r: &Ranking) -> Self {
        let mut terms: Vec<Term<K>> = p
            .terms()
            .map(|(m, c)| Term {
                key: r.key(m),
                mono: m.clone(),
                coeff: c.clone(),
            })
            .collect();
        terms.sort_by(|a, b| b.key.cmp(&a.key));
        RankedPoly { terms }
    }

    pub fn to_poly(&self) -> DiffPoly<K> {
        DiffPoly::from_terms(self.terms.iter().map(|t| (t.mono.clone(), t.coeff.clone())))
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

    pub fn terms(&self) -> &[Term<K>] {
        &self.terms
    }

    pub fn lm(&self) -> Option<&ShiftMonomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn lc(&self) -> Option<&K> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn lead_key(&self) -> Option<&RankKey> {
        self.terms.first().map(|t| &t.key)
    }

    pub fn shifted(&self, theta: &[u32], r: &Ranking) -> Self {
        RankedPoly {
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let mono = t.mono.shifted(theta);
                    Term {
                        key: r.key(&mono),
                        mono,
                        coeff: t.coeff.clone(),
                    }
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RankedPoly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    key: t.key.clone(),
                    mono: t.mono.clone(),
                    coeff: t.coeff.clone() * c,
                })
                .collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            None => Self::zero(),
        }
    }

    /// `self - c * other`, merging the two sorted term lists.
    pub fn sub_scaled(&self, c: &K, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.key.cmp(&y.key),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        key: b[j].key.clone(),
                        mono: b[j].mono.clone(),
                        coeff: -(b[j].coeff.clone() * c),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let v = a[i].coeff.clone() - &(b[j].coeff.clone() * c);
                    if !v.is_zero() {
                        out.push(Term {
                            key: a[i].key.clone(),
                            mono: a[i].mono.clone(),
                            coeff: v,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        RankedPoly { terms: out }
    }

    /// Multiple with denominators and content cleared and a positive leading coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let cs: Vec<K> = self.terms.iter().map(|t| t.coeff.clone()).collect();
        let mut k = K::content_factor(&cs);
        if (self.terms[0].coeff.clone() * &k).is_negative() {
            k = -k;
        }
        self.scale(&k)
    }
}

/// Reduction step counter with an upper limit.
#[derive(Clone, Debug)]
pub struct WorkBudget {
    pub used: u64,
    pub limit: u64,
}

impl WorkBudget {
    pub const DEFAULT_LIMIT: u64 = 10_000_000;

    pub fn new(limit: u64) -> Self {
        WorkBudget { used: 0, limit }
    }

    pub fn unlimited() -> Self {
        WorkBudget::new(u64::MAX)
    }

    pub fn tick(&mut self) -> Result<(), DiffPolyError> {
        self.used += 1;
        if self.used > self.limit {
            Err(DiffPolyError::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

/// One recorded reduction step: `coeff * θ ∘ reducers[index]` was subtracted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cofactor<K> {
    pub index: usize,
    pub theta: Shift,
    pub coeff: K,
}

/// Reduces `h` by repeatedly asking `find` for a reductor of the highest reducible term.
///
/// `find` maps a monomial to `(index into reducers, θ)` with `θ ∘ lm(reducers[index])`
/// equal to that monomial. With `head_only` the loop stops at the first irreducible term.
pub fn reduce_with<K: Field>(
    mut h: RankedPoly<K>,
    reducers: &[&RankedPoly<K>],
    r: &Ranking,
    mut find: impl FnMut(&ShiftMonomial) -> Option<(usize, Shift)>,
    head_only: bool,
    budget: &mut WorkBudget,
    mut record: Option<&mut Vec<Cofactor<K>>>,
) -> Result<RankedPoly<K>, DiffPolyError> {
    let mut pos = 0;
    while pos < h.terms.len() {
        let Some((idx, theta)) = find(&h.terms[pos].mono) else {
            if head_only {
                break;
            }
            pos += 1;
            continue;
        };
        budget.tick()?;
        let f = reducers[idx];
        let lc = f.lc().expect("reductor is nonzero");
        let c = h.terms[pos].coeff.clone() * &lc.inv().expect("nonzero");
        let shifted = f.shifted(&theta, r);
        debug_assert_eq!(shifted.lm(), Some(&h.terms[pos].mono));
        h = h.sub_scaled(&c, &shifted);
        if let Some(rec) = record.as_deref_mut() {
            rec.push(Cofactor {
                index: idx,
                theta,
                coeff: c,
            });
        }
    }
    Ok(h)
}

/// Ordinary (Gröbner) divisor search: the first reducer whose leading monomial divides `m`.
pub fn first_divisor<K: Field>(
    reducers: &[&RankedPoly<K>],
    m: &ShiftMonomial,
) -> Option<(usize, Shift)> {
    reducers.iter().enumerate().find_map(|(i, f)| {
        let lm = f.lm()?;
        lm.quotient(m).map(|theta| (i, theta))
    })
}

/// `h - c θ ∘ (f / lc(f))` where `c` is the coefficient of `at` in `h` and `at = θ ∘ lm(f)`.
pub fn reduce_once<K: Field>(
    h: &DiffPoly<K>,
    f: &DiffPoly<K>,
    at: &ShiftMonomial,
    r: &Ranking,
) -> Result<DiffPoly<K>, DiffPolyError> {
    let c = h.coeff(at).ok_or(DiffPolyError::MissingTerm)?.clone();
    let (lm, lc) = f.leading(r)?;
    let theta = lm.quotient(at).ok_or(DiffPolyError::NotDivisible)?;
    let factor = c * &lc.inv().expect("nonzero");
    let out = h.sub(&f.apply_shift(&theta).scale(&factor));
    debug_assert!(out.coeff(at).is_none());
    Ok(out)
}

/// Full normal form modulo `fs` by ordinary reductions.
pub fn normal_form<K: Field>(h: &DiffPoly<K>, fs: &[DiffPoly<K>], r: &Ranking) -> DiffPoly<K> {
    normal_form_with_cofactors(h, fs, r).0
}

/// Normal form together with the reduction steps, so that
/// `h - nf = Σ coeff · θ ∘ fs[index]`.
pub fn normal_form_with_cofactors<K: Field>(
    h: &DiffPoly<K>,
    fs: &[DiffPoly<K>],
    r: &Ranking,
) -> (DiffPoly<K>, Vec<Cofactor<K>>) {
    let ranked: Vec<RankedPoly<K>> = fs
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| RankedPoly::from_poly(f, r))
        .collect();
    let index_map: Vec<usize> = fs
        .iter()
        .enumerate()
        .filter(|(_, f)| !f.is_zero())
        .map(|(i, _)| i)
        .collect();
    let refs: Vec<&RankedPoly<K>> = ranked.iter().collect();
    let mut steps = Vec::new();
    let nf = reduce_with(
        RankedPoly::from_poly(h, r),
        &refs,
        r,
        |m| first_divisor(&refs, m),
        false,
        &mut WorkBudget::unlimited(),
        Some(&mut steps),
    )
    .expect("unlimited budget");
    for s in &mut steps {
        s.index = index_map[s.index];
    }
    (nf.to_poly(), steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Coeff;
    use crate::diffpoly::IndetId;

    fn m(k: u16, mu: &[u32]) -> ShiftMonomial {
        ShiftMonomial::new(IndetId(k), mu)
    }

    fn poly(terms: &[(u16, &[u32], i64)]) -> DiffPoly<Coeff> {
        DiffPoly::from_terms(terms.iter().map(|&(k, mu, c)| (m(k, mu), Coeff::from(c))))
    }

    #[test]
    fn reduce_once_cancels_exactly() {
        let r = Ranking::elimination_lex(1, 1);
        let h = poly(&[(0, &[2], 1)]);
        let f = poly(&[(0, &[1], 1)]);
        assert!(reduce_once(&h, &f, &m(0, &[2]), &r).unwrap().is_zero());
    }

    #[test]
    fn reduce_once_by_itself() {
        let r = Ranking::elimination_lex(2, 1);
        let tau = Coeff::param("tau");
        let f: DiffPoly<Coeff> = DiffPoly::from_terms([
            (m(0, &[1]), Coeff::from(2) * &tau),
            (m(1, &[2]), Coeff::from(-1)),
            (m(1, &[0]), Coeff::from(1)),
        ]);
        assert!(reduce_once(&f, &f, &m(0, &[1]), &r).unwrap().is_zero());
    }

    #[test]
    fn reduce_once_rejects_non_divisor() {
        let r = Ranking::elimination_lex(1, 2);
        let h = poly(&[(0, &[0, 1], 1)]);
        let f = poly(&[(0, &[1, 0], 1)]);
        assert_eq!(
            reduce_once(&h, &f, &m(0, &[0, 1]), &r),
            Err(DiffPolyError::NotDivisible)
        );
        assert_eq!(
            reduce_once(&h, &f, &m(0, &[1, 1]), &r),
            Err(DiffPolyError::MissingTerm)
        );
    }

    #[test]
    fn normal_form_examples() {
        let r = Ranking::elimination_lex(1, 2);
        let f = poly(&[(0, &[1, 0], 3), (0, &[0, 0], 1)]);
        assert!(normal_form(&f, std::slice::from_ref(&f), &r).is_zero());
        assert!(normal_form(&DiffPoly::zero(), std::slice::from_ref(&f), &r).is_zero());
        let h = poly(&[(0, &[2, 0], 1), (0, &[0, 1], 1)]);
        let g = poly(&[(0, &[1, 0], 1)]);
        assert_eq!(normal_form(&h, &[g], &r), poly(&[(0, &[0, 1], 1)]));
    }

    #[test]
    fn cofactors_reconstruct_the_input() {
        let r = Ranking::elimination_lex(2, 2);
        let fs = vec![
            poly(&[(0, &[1, 0], 2), (1, &[2, 0], -1), (1, &[0, 0], 1)]),
            poly(&[(1, &[1, 1], 1), (1, &[0, 1], -1), (1, &[0, 0], 2)]),
        ];
        let h = poly(&[(0, &[2, 3], 5), (1, &[3, 3], 1), (0, &[0, 1], -1)]);
        let (nf, steps) = normal_form_with_cofactors(&h, &fs, &r);
        let mut acc = nf.clone();
        for s in &steps {
            acc = acc.add(&fs[s.index].apply_shift(&s.theta).scale(&s.coeff));
        }
        assert_eq!(acc, h);
    }
}
