use serde::{Deserialize, Serialize};

use crate::diffpoly::ShiftMonomial;

/// A difference power `θ_i^s`, stored as (shift index, exponent).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Power {
    pub shift: usize,
    pub exp: u32,
}

impl Power {
    pub fn as_shift(&self, nshifts: usize) -> Vec<u32> {
        let mut v = vec![0; nshifts];
        v[self.shift] = self.exp;
        v
    }
}

/// Difference powers of every monomial in `lms` with respect to the whole set.
///
/// `order` lists shift indices from highest to lowest priority; groups are formed by
/// equal degrees in the higher-priority shifts. Monomials on different indeterminates
/// never interact.
pub fn difference_powers(lms: &[ShiftMonomial], order: &[usize]) -> Vec<Vec<Power>> {
    lms.iter()
        .map(|u| {
            let same: Vec<&ShiftMonomial> = lms.iter().filter(|v| v.indet == u.indet).collect();
            powers_of(u, &same, order)
        })
        .collect()
}

fn powers_of(u: &ShiftMonomial, lms: &[&ShiftMonomial], order: &[usize]) -> Vec<Power> {
    let mut out = Vec::new();
    for (q, &i) in order.iter().enumerate() {
        let group = lms
            .iter()
            .filter(|v| order[..q].iter().all(|&j| v.mu[j] == u.mu[j]));
        let di = u.mu[i];
        let mut step: Option<u32> = None;
        for v in group {
            if v.mu[i] > di {
                let d = v.mu[i] - di;
                step = Some(step.map_or(d, |s| s.min(d)));
            }
        }
        if let Some(s) = step {
            out.push(Power { shift: i, exp: s });
        }
    }
    out
}

/// True when `theta` lies in the Janet-like multiplicative set, i.e. no difference power
/// divides it.
pub fn is_janet_multiplier(theta: &[u32], dp: &[Power]) -> bool {
    dp.iter().all(|p| theta[p.shift] < p.exp)
}
