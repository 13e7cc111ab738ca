use crate::algebra::Field;
use crate::diffpoly::{
    first_divisor, reduce_with, DiffPoly, RankKey, RankedPoly, Ranking, WorkBudget,
};

use super::{canonical, check_input, EngineError};

/// S-polynomial of two polynomials whose leading monomials share an indeterminate:
/// both are lifted to the lcm of their leading shifts and subtracted after monic scaling.
pub fn s_polynomial<K: Field>(
    f: &RankedPoly<K>,
    g: &RankedPoly<K>,
    r: &Ranking,
) -> Option<RankedPoly<K>> {
    let (lf, lg) = (f.lm()?, g.lm()?);
    let l = lf.lcm(lg)?;
    let a = f.shifted(&lf.quotient(&l)?, r).monic();
    let b = g.shifted(&lg.quotient(&l)?, r).monic();
    Some(a.sub_scaled(&K::one(), &b))
}

fn ordinary_nf<K: Field>(
    h: RankedPoly<K>,
    basis: &[RankedPoly<K>],
    r: &Ranking,
    budget: &mut WorkBudget,
) -> Result<RankedPoly<K>, EngineError> {
    let refs: Vec<&RankedPoly<K>> = basis.iter().collect();
    Ok(reduce_with(h, &refs, r, |m| first_divisor(&refs, m), false, budget, None)?)
}

/// Reduced Gröbner basis from any generating set of leading monomials: drops elements
/// whose leading monomial is a proper shift of another's, then reduces every tail.
pub fn interreduce<K: Field>(ps: Vec<RankedPoly<K>>, r: &Ranking) -> Vec<RankedPoly<K>> {
    let mut ps: Vec<RankedPoly<K>> = ps.into_iter().filter(|p| !p.is_zero()).collect();
    ps.sort_by(|a, b| a.lead_key().cmp(&b.lead_key()));
    let mut min: Vec<RankedPoly<K>> = Vec::new();
    for p in ps {
        if !min.iter().any(|q| q.lm().unwrap().divides(p.lm().unwrap())) {
            min.push(p);
        }
    }
    let mut out = Vec::with_capacity(min.len());
    for i in 0..min.len() {
        let others: Vec<&RankedPoly<K>> = min
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q)
            .collect();
        let nf = reduce_with(
            min[i].clone(),
            &others,
            r,
            |m| first_divisor(&others, m),
            false,
            &mut WorkBudget::unlimited(),
            None,
        )
        .expect("unlimited budget");
        out.push(nf.monic());
    }
    out
}

/// Plain Buchberger completion with no criteria, returning the reduced Gröbner basis.
pub fn buchberger_oracle<K: Field>(
    fs: &[DiffPoly<K>],
    r: &Ranking,
    budget: u64,
) -> Result<Vec<DiffPoly<K>>, EngineError> {
    check_input(fs, r)?;
    let mut budget = WorkBudget::new(budget);
    let mut g: Vec<RankedPoly<K>> = Vec::new();
    for f in fs.iter().filter(|f| !f.is_zero()) {
        let h = ordinary_nf(RankedPoly::from_poly(f, r), &g, r, &mut budget)?;
        if !h.is_zero() {
            g.push(h.monic());
        }
    }
    // Pairs on a common indeterminate, processed lowest lcm first.
    let lcm_key = |g: &[RankedPoly<K>], i: usize, j: usize| {
        let l = g[i].lm()?.lcm(g[j].lm()?)?;
        Some(r.key(&l))
    };
    let mut pairs: Vec<(RankKey, usize, usize)> = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            if let Some(k) = lcm_key(&g, i, j) {
                pairs.push((k, i, j));
            }
        }
    }
    while !pairs.is_empty() {
        budget.tick()?;
        let at = (0..pairs.len()).min_by(|&a, &b| pairs[a].cmp(&pairs[b])).unwrap();
        let (_, i, j) = pairs.swap_remove(at);
        let s = s_polynomial(&g[i], &g[j], r).expect("same indeterminate");
        let h = ordinary_nf(s, &g, r, &mut budget)?;
        if !h.is_zero() {
            g.push(h.monic());
            let k = g.len() - 1;
            for i in 0..k {
                if let Some(key) = lcm_key(&g, i, k) {
                    pairs.push((key, i, k));
                }
            }
        }
    }
    Ok(canonical(interreduce(g, r))
        .iter()
        .map(|p| p.to_poly())
        .collect())
}
