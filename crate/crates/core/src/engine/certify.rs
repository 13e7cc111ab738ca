//! Post-hoc checks on finished bases. Nothing here trusts the completion run.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Field;
use crate::diffpoly::{normal_form, DiffPoly, RankedPoly, Ranking, ShiftMonomial, WorkBudget};

use super::{difference_powers, s_polynomial, BasisResult, JanetBasis, JanetElement};

/// Every difference-power prolongation of every element J-reduces to zero, and the
/// recorded difference powers match a fresh partition.
pub fn completion<K: Field>(janet: &[JanetElement<K>], r: &Ranking) -> bool {
    let polys: Vec<DiffPoly<K>> = janet.iter().map(|e| e.pol.clone()).collect();
    let basis = JanetBasis::new(&polys, r);
    let lms: Vec<ShiftMonomial> = basis.polys().iter().map(|p| p.lm().unwrap().clone()).collect();
    if difference_powers(&lms, r.shift_priority())
        != janet.iter().map(|e| e.dp.clone()).collect::<Vec<_>>()
    {
        return false;
    }
    basis.polys().iter().enumerate().all(|(i, g)| {
        basis.difference_powers(i).iter().all(|y| {
            let shifted = g.shifted(&y.as_shift(r.num_shifts()), r);
            basis
                .normal_form(shifted, r, false, &mut WorkBudget::unlimited())
                .expect("unlimited budget")
                .is_zero()
        })
    })
}

/// All S-polynomials of pairs on a common indeterminate reduce to zero.
pub fn s_polynomials_vanish<K: Field>(gb: &[DiffPoly<K>], r: &Ranking) -> bool {
    let ranked: Vec<RankedPoly<K>> = gb.iter().map(|g| RankedPoly::from_poly(g, r)).collect();
    for j in 0..ranked.len() {
        for i in 0..j {
            if let Some(s) = s_polynomial(&ranked[i], &ranked[j], r) {
                if !normal_form(&s.to_poly(), gb, r).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

pub fn contains_all<K: Field>(fs: &[DiffPoly<K>], gb: &[DiffPoly<K>], r: &Ranking) -> bool {
    fs.iter().all(|f| normal_form(f, gb, r).is_zero())
}

/// `g = NF(g, GB ∖ {g})` for every element, up to the normalization scalar.
pub fn auto_reduced<K: Field>(gb: &[DiffPoly<K>], r: &Ranking) -> bool {
    (0..gb.len()).all(|i| {
        let others: Vec<DiffPoly<K>> = gb
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        normal_form(&gb[i], &others, r) == gb[i]
    })
}

/// Random shifts of random elements, each of total degree at most `max_degree`,
/// reduce to zero.
pub fn shift_stable<K: Field>(
    gb: &[DiffPoly<K>],
    r: &Ranking,
    seed: u64,
    samples: usize,
    max_degree: u32,
) -> bool {
    if gb.is_empty() {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = r.num_shifts();
    (0..samples).all(|_| {
        let g = &gb[rng.gen_range(0..gb.len())];
        let mut theta = vec![0u32; n];
        let total = rng.gen_range(0..=max_degree);
        for _ in 0..total {
            if n > 0 {
                theta[rng.gen_range(0..n)] += 1;
            }
        }
        normal_form(&g.apply_shift(&theta), gb, r).is_zero()
    })
}

/// Largest number of (element, multiplier) reductors found for any of `monomials`.
pub fn max_reductors<K: Field>(
    janet: &[JanetElement<K>],
    r: &Ranking,
    monomials: impl IntoIterator<Item = ShiftMonomial>,
) -> usize {
    let polys: Vec<DiffPoly<K>> = janet.iter().map(|e| e.pol.clone()).collect();
    let basis = JanetBasis::new(&polys, r);
    monomials
        .into_iter()
        .map(|w| basis.reductors(&w).len())
        .max()
        .unwrap_or(0)
}

/// Every monomial occurring in the Janet-like basis, its prolongations by difference
/// powers, and all shifts of those up to `margin` in each shift.
pub fn probe_monomials<K: Field>(
    janet: &[JanetElement<K>],
    r: &Ranking,
    margin: u32,
) -> BTreeSet<ShiftMonomial> {
    let n = r.num_shifts();
    let mut base: BTreeSet<ShiftMonomial> = BTreeSet::new();
    for e in janet {
        for (m, _) in e.pol.terms() {
            base.insert(m.clone());
            for y in &e.dp {
                base.insert(m.shifted(&y.as_shift(n)));
            }
        }
    }
    let mut out = BTreeSet::new();
    let mut theta = vec![0u32; n];
    loop {
        for m in &base {
            out.insert(m.shifted(&theta));
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            theta[i] += 1;
            if theta[i] <= margin {
                break;
            }
            theta[i] = 0;
            i += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub completion: bool,
    pub s_polynomials: bool,
    pub membership: bool,
    pub auto_reduced: bool,
    pub shift_stable: bool,
    pub cardinality: bool,
    pub unique_reductors: bool,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.completion
            && self.s_polynomials
            && self.membership
            && self.auto_reduced
            && self.shift_stable
            && self.cardinality
            && self.unique_reductors
    }
}

/// Runs every check on a finished result for the input `fs`.
pub fn certify<K: Field>(fs: &[DiffPoly<K>], res: &BasisResult<K>, r: &Ranking) -> Certificate {
    let gb = &res.reduced_gb;
    Certificate {
        completion: completion(&res.janet_like, r),
        s_polynomials: s_polynomials_vanish(gb, r),
        membership: contains_all(fs, gb, r),
        auto_reduced: auto_reduced(gb, r),
        shift_stable: shift_stable(gb, r, 0x5eed, 16, 3),
        cardinality: gb.len() <= res.janet_like.len(),
        unique_reductors: max_reductors(
            &res.janet_like,
            r,
            probe_monomials(&res.janet_like, r, 2),
        ) <= 1,
    }
}
