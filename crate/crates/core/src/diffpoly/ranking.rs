use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::monomial::{IndetId, ShiftMonomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankingKind {
    /// Total shift degree first, then indeterminate priority.
    Orderly,
    /// Indeterminate priority first.
    Elimination,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftOrder {
    Lex,
    GradedLex,
}

/// Sort key of a monomial; larger keys rank higher.
pub type RankKey = SmallVec<[u32; 8]>;

/// Translation-invariant total order on shift monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ranking {
    kind: RankingKind,
    shift_order: ShiftOrder,
    /// `indet_weight[k]` is larger for higher-priority indeterminates.
    indet_weight: Vec<u32>,
    /// Shift indices from highest to lowest priority.
    shift_priority: Vec<usize>,
}

impl Ranking {
    /// `indet_priority` and `shift_priority` list items from highest to lowest priority.
    pub fn new(
        kind: RankingKind,
        shift_order: ShiftOrder,
        indet_priority: &[IndetId],
        shift_priority: Vec<usize>,
    ) -> Self {
        let m = indet_priority.len();
        let mut indet_weight = vec![0; m];
        for (pos, id) in indet_priority.iter().enumerate() {
            indet_weight[id.index()] = (m - pos) as u32;
        }
        Ranking {
            kind,
            shift_order,
            indet_weight,
            shift_priority,
        }
    }

    /// Elimination ranking with lex shift order, using declaration order for both lists.
    pub fn elimination_lex(num_indets: usize, num_shifts: usize) -> Self {
        let ids: Vec<IndetId> = (0..num_indets as u16).map(IndetId).collect();
        Ranking::new(
            RankingKind::Elimination,
            ShiftOrder::Lex,
            &ids,
            (0..num_shifts).collect(),
        )
    }

    pub fn kind(&self) -> RankingKind {
        self.kind
    }

    pub fn shift_order(&self) -> ShiftOrder {
        self.shift_order
    }

    pub fn num_shifts(&self) -> usize {
        self.shift_priority.len()
    }

    pub fn num_indets(&self) -> usize {
        self.indet_weight.len()
    }

    pub fn shift_priority(&self) -> &[usize] {
        &self.shift_priority
    }

    /// Indeterminates from highest to lowest priority.
    pub fn indet_priority(&self) -> Vec<IndetId> {
        let mut ids: Vec<IndetId> = (0..self.indet_weight.len() as u16).map(IndetId).collect();
        ids.sort_by_key(|id| std::cmp::Reverse(self.indet_weight[id.index()]));
        ids
    }

    pub fn key(&self, m: &ShiftMonomial) -> RankKey {
        let mut key = RankKey::new();
        let w = self.indet_weight[m.indet.index()];
        let total = m.total_degree();
        match (self.kind, self.shift_order) {
            (RankingKind::Elimination, ShiftOrder::Lex) => key.push(w),
            (RankingKind::Elimination, ShiftOrder::GradedLex) => {
                key.push(w);
                key.push(total);
            }
            (RankingKind::Orderly, _) => {
                key.push(total);
                key.push(w);
            }
        }
        key.extend(self.shift_priority.iter().map(|&i| m.mu[i]));
        key
    }

    pub fn cmp(&self, a: &ShiftMonomial, b: &ShiftMonomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(k: u16, mu: &[u32]) -> ShiftMonomial {
        ShiftMonomial::new(IndetId(k), mu)
    }

    fn rankings() -> Vec<Ranking> {
        let ids = [IndetId(1), IndetId(0), IndetId(2)];
        let mut out = Vec::new();
        for kind in [RankingKind::Orderly, RankingKind::Elimination] {
            for order in [ShiftOrder::Lex, ShiftOrder::GradedLex] {
                out.push(Ranking::new(kind, order, &ids, vec![1, 0]));
            }
        }
        out
    }

    #[test]
    fn lex_prefers_first_shift() {
        let r = Ranking::elimination_lex(1, 2);
        assert_eq!(r.cmp(&mono(0, &[1, 0]), &mono(0, &[0, 5])), Ordering::Greater);
    }

    #[test]
    fn elimination_dominates_any_shift() {
        let r = Ranking::elimination_lex(2, 2);
        assert_eq!(r.cmp(&mono(0, &[0, 0]), &mono(1, &[9, 9])), Ordering::Greater);
    }

    fn arb_mono() -> impl Strategy<Value = ShiftMonomial> {
        (0u16..3, prop::collection::vec(0u32..6, 2)).prop_map(|(k, mu)| mono(k, &mu))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2500))]

        #[test]
        fn ranking_axioms(a in arb_mono(), b in arb_mono(), i in 0usize..2) {
            let mut theta = [0u32; 2];
            theta[i] = 1;
            for r in rankings() {
                let ab = r.cmp(&a, &b);
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                prop_assert_eq!(r.cmp(&a.shifted(&theta), &b.shifted(&theta)), ab);
                prop_assert_eq!(r.cmp(&a.shifted(&theta), &a), Ordering::Greater);
                if r.kind() == RankingKind::Elimination && a.indet != b.indet {
                    let wa = r.indet_priority().iter().position(|&x| x == a.indet);
                    let wb = r.indet_priority().iter().position(|&x| x == b.indet);
                    prop_assert_eq!(ab, wb.cmp(&wa));
                }
            }
        }
    }
}
