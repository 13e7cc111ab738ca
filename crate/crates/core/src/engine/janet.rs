use crate::algebra::Field;
use crate::diffpoly::{
    reduce_with, DiffPoly, RankedPoly, Ranking, Shift, ShiftMonomial, WorkBudget,
};

use super::oracle::interreduce;
use super::partition::{difference_powers, is_janet_multiplier, Power};
use super::{
    canonical, check_input, power_shift, BasisResult, Criterion, EngineError, EngineOptions,
    EngineStats, JanetElement, TraceEvent,
};

/// A fixed set of polynomials together with its Janet-like partition.
#[derive(Clone, Debug)]
pub struct JanetBasis<K> {
    polys: Vec<RankedPoly<K>>,
    dps: Vec<Vec<Power>>,
}

impl<K: Field> JanetBasis<K> {
    pub fn new(polys: &[DiffPoly<K>], r: &Ranking) -> Self {
        let polys: Vec<RankedPoly<K>> = polys
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| RankedPoly::from_poly(p, r))
            .collect();
        let lms: Vec<ShiftMonomial> = polys.iter().map(|p| p.lm().unwrap().clone()).collect();
        let dps = difference_powers(&lms, r.shift_priority());
        JanetBasis { polys, dps }
    }

    pub fn polys(&self) -> &[RankedPoly<K>] {
        &self.polys
    }

    pub fn difference_powers(&self, i: usize) -> &[Power] {
        &self.dps[i]
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Every `(i, θ)` with `θ ∈ J(polys[i])` and `θ ∘ lm(polys[i]) = w`.
    pub fn reductors(&self, w: &ShiftMonomial) -> Vec<(usize, Shift)> {
        self.polys
            .iter()
            .enumerate()
            .filter_map(|(i, p)| {
                let theta = p.lm()?.quotient(w)?;
                is_janet_multiplier(&theta, &self.dps[i]).then_some((i, theta))
            })
            .collect()
    }

    pub fn find(&self, w: &ShiftMonomial) -> Option<(usize, Shift)> {
        find_reductor(self.polys.iter().map(|p| p.lm().unwrap()), &self.dps, w)
    }

    pub fn normal_form(
        &self,
        h: RankedPoly<K>,
        r: &Ranking,
        head_only: bool,
        budget: &mut WorkBudget,
    ) -> Result<RankedPoly<K>, EngineError> {
        let refs: Vec<&RankedPoly<K>> = self.polys.iter().collect();
        Ok(reduce_with(h, &refs, r, |w| self.find(w), head_only, budget, None)?)
    }
}

fn find_reductor<'a>(
    lms: impl Iterator<Item = &'a ShiftMonomial>,
    dps: &[Vec<Power>],
    w: &ShiftMonomial,
) -> Option<(usize, Shift)> {
    for (i, lm) in lms.enumerate() {
        if let Some(theta) = lm.quotient(w) {
            if is_janet_multiplier(&theta, &dps[i]) {
                return Some((i, theta));
            }
        }
    }
    None
}

/// J-normal form of `h` modulo `basis` (head only or full).
pub fn j_normal_form<K: Field>(
    h: &DiffPoly<K>,
    basis: &[DiffPoly<K>],
    r: &Ranking,
    head_only: bool,
) -> DiffPoly<K> {
    JanetBasis::new(basis, r)
        .normal_form(
            RankedPoly::from_poly(h, r),
            r,
            head_only,
            &mut WorkBudget::unlimited(),
        )
        .expect("unlimited budget")
        .to_poly()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ancestor {
    pub id: usize,
    pub lm: ShiftMonomial,
}

/// Where a prolongation came from: `power ∘ pol(parent)` while the parent had `parent_idx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Origin {
    pub parent: usize,
    pub parent_idx: usize,
    pub power: Power,
}

/// `{pol, anc, dp}` with bookkeeping for identity and insertion order.
#[derive(Clone, Debug)]
pub struct Triple<K> {
    pub id: usize,
    pub pol: RankedPoly<K>,
    pub anc: Ancestor,
    pub dp: Vec<Power>,
    pub idx: usize,
    pub origin: Option<Origin>,
}

impl<K: Field> Triple<K> {
    /// `{f, f, ∅}`.
    pub fn fresh(id: usize, pol: RankedPoly<K>) -> Self {
        let lm = pol.lm().expect("nonzero").clone();
        Triple {
            id,
            pol,
            anc: Ancestor { id, lm },
            dp: Vec::new(),
            idx: 0,
            origin: None,
        }
    }

    fn lm(&self) -> &ShiftMonomial {
        self.pol.lm().expect("nonzero")
    }
}

struct Run<'a, K> {
    r: &'a Ranking,
    nshifts: usize,
    criteria: [bool; 4],
    t: Vec<Triple<K>>,
    dps: Vec<Vec<Power>>,
    next_id: usize,
    next_idx: usize,
    budget: WorkBudget,
    stats: EngineStats,
    trace: Option<Vec<TraceEvent>>,
}

impl<'a, K: Field> Run<'a, K> {
    fn new(r: &'a Ranking, opts: &EngineOptions, coprime: bool) -> Self {
        let mut criteria = opts.criteria;
        criteria[3] &= coprime;
        Run {
            r,
            nshifts: r.num_shifts(),
            criteria,
            t: Vec::new(),
            dps: Vec::new(),
            next_id: 0,
            next_idx: 0,
            budget: WorkBudget::new(opts.budget),
            stats: EngineStats {
                coprime_enabled: criteria[3],
                ..EngineStats::default()
            },
            trace: opts.trace.then(Vec::new),
        }
    }

    fn log(&mut self, e: impl FnOnce(&Self) -> TraceEvent) {
        if self.trace.is_some() {
            let ev = e(self);
            if let Some(t) = &mut self.trace {
                t.push(ev);
            }
        }
    }

    fn fmt_lm(&self, m: &ShiftMonomial) -> String {
        format!("{m:?}")
    }

    fn refresh(&mut self) {
        let lms: Vec<ShiftMonomial> = self.t.iter().map(|t| t.lm().clone()).collect();
        self.dps = difference_powers(&lms, self.r.shift_priority());
        for (t, dp) in self.t.iter_mut().zip(&self.dps) {
            t.dp.retain(|y| dp.contains(y));
        }
    }

    fn find(&self, w: &ShiftMonomial) -> Option<(usize, Shift)> {
        find_reductor(self.t.iter().map(|t| t.lm()), &self.dps, w)
    }

    fn insert(&mut self, mut p: Triple<K>) {
        p.idx = self.next_idx;
        self.next_idx += 1;
        self.log(|s| TraceEvent::Insert {
            id: p.id,
            idx: p.idx,
            lm: s.fmt_lm(p.lm()),
            anc: p.anc.id,
        });
        self.t.push(p);
        self.refresh();
    }

    fn new_id(&mut self) -> usize {
        let id = self.next_id;
        self.next_id += 1;
        id
    }

    /// Position in T of the element `p` was prolonged from, if that prolongation is
    /// still current.
    fn current_parent(&self, p: &Triple<K>) -> Option<usize> {
        let o = p.origin.as_ref()?;
        let i = self
            .t
            .iter()
            .position(|t| t.id == o.parent && t.idx == o.parent_idx)?;
        self.dps[i].contains(&o.power).then_some(i)
    }

    fn check_criteria(&self, p: &Triple<K>, g: usize, f: usize) -> Option<Criterion> {
        let lp = p.lm();
        let ap = &p.anc.lm;
        let ag = &self.t[g].anc.lm;
        if self.criteria[0] && c1(ap, ag, lp) {
            return Some(Criterion::C1);
        }
        if self.criteria[1] && c2(ap, ag, self.t.iter().map(|t| t.lm())) {
            return Some(Criterion::C2);
        }
        if self.criteria[2] {
            let f_idx = self.t[f].idx;
            let earlier = self
                .t
                .iter()
                .zip(&self.dps)
                .filter(|(t, _)| t.idx < f_idx)
                .map(|(t, dp)| (t.lm(), &t.anc.lm, dp.as_slice()));
            if c3(ap, lp, earlier) {
                return Some(Criterion::C3);
            }
        }
        if self.criteria[3] && c4(ap, ag, lp) {
            return Some(Criterion::C4);
        }
        None
    }

    /// `HNF_J(p, T)`; `None` stands for zero.
    fn head_normal_form(&mut self, p: &Triple<K>) -> Result<Option<RankedPoly<K>>, EngineError> {
        let lm = p.lm();
        let Some((g, _)) = self.find(lm) else {
            return Ok(Some(p.pol.clone()));
        };
        if lm != &p.anc.lm {
            if let Some(f) = self.current_parent(p) {
                self.stats.criteria_checks += 1;
                if let Some(c) = self.check_criteria(p, g, f) {
                    self.stats.criteria_hits[c.index()] += 1;
                    self.log(|_| TraceEvent::Criterion { id: p.id, which: c });
                    return Ok(None);
                }
            }
        }
        let before = self.budget.used;
        let refs: Vec<&RankedPoly<K>> = self.t.iter().map(|t| &t.pol).collect();
        let t = &self.t;
        let dps = &self.dps;
        let h = reduce_with(
            p.pol.clone(),
            &refs,
            self.r,
            |w| find_reductor(t.iter().map(|t| t.lm()), dps, w),
            true,
            &mut self.budget,
            None,
        )?;
        self.stats.head_reductions += self.budget.used - before;
        Ok((!h.is_zero()).then_some(h))
    }

    fn head_reduce(&mut self, q: Vec<Triple<K>>) -> Result<Vec<Triple<K>>, EngineError> {
        let mut s = q;
        s.sort_by(|a, b| a.pol.lead_key().cmp(&b.pol.lead_key()).then(a.id.cmp(&b.id)));
        s.reverse();
        let mut out = Vec::with_capacity(s.len());
        while let Some(p) = s.pop() {
            match self.head_normal_form(&p)? {
                Some(h) => {
                    if h.lm() != p.pol.lm() {
                        let id = self.new_id();
                        self.log(|s| TraceEvent::Wrap {
                            id,
                            lm: s.fmt_lm(h.lm().unwrap()),
                        });
                        out.push(Triple::fresh(id, h));
                    } else {
                        out.push(p);
                    }
                }
                None => {
                    self.stats.zero_reductions += 1;
                    self.log(|_| TraceEvent::Vanish { id: p.id });
                    if p.lm() == &p.anc.lm {
                        let before = s.len();
                        let mut purged = Vec::new();
                        s.retain(|q| {
                            let keep = q.anc.id != p.anc.id;
                            if !keep {
                                purged.push(q.id);
                            }
                            keep
                        });
                        self.stats.purged += (before - s.len()) as u64;
                        for id in purged {
                            self.log(|_| TraceEvent::Purge { id });
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn complete(&mut self, mut q: Vec<Triple<K>>) -> Result<(), EngineError> {
        q = self.head_reduce(q)?;
        while !q.is_empty() {
            self.stats.iterations += 1;
            self.stats.max_queue = self.stats.max_queue.max(q.len());
            self.budget.tick()?;
            let at = (0..q.len())
                .min_by(|&a, &b| {
                    q[a].pol
                        .lead_key()
                        .cmp(&q[b].pol.lead_key())
                        .then(q[a].id.cmp(&q[b].id))
                })
                .unwrap();
            let p = q.swap_remove(at);
            self.log(|s| TraceEvent::Select {
                id: p.id,
                lm: s.fmt_lm(p.lm()),
            });
            if p.anc.id == p.id {
                let lm = p.lm().clone();
                let (back, keep): (Vec<_>, Vec<_>) = std::mem::take(&mut self.t)
                    .into_iter()
                    .partition(|t| lm.strictly_divides(t.lm()));
                self.t = keep;
                if !back.is_empty() {
                    self.refresh();
                }
                for b in back {
                    self.stats.moved_back += 1;
                    self.log(|s| TraceEvent::MoveBack {
                        id: b.id,
                        lm: s.fmt_lm(b.lm()),
                    });
                    q.push(b);
                }
            }
            let before = self.budget.used;
            let refs: Vec<&RankedPoly<K>> = self.t.iter().map(|t| &t.pol).collect();
            let (t, dps) = (&self.t, &self.dps);
            let h = reduce_with(
                p.pol.clone(),
                &refs,
                self.r,
                |w| find_reductor(t.iter().map(|t| t.lm()), dps, w),
                false,
                &mut self.budget,
                None,
            )?;
            self.stats.tail_reductions += self.budget.used - before;
            if h.is_zero() {
                self.stats.zero_reductions += 1;
                self.log(|_| TraceEvent::Vanish { id: p.id });
            } else if h.lm() != p.pol.lm() {
                let id = self.new_id();
                self.log(|s| TraceEvent::Wrap {
                    id,
                    lm: s.fmt_lm(h.lm().unwrap()),
                });
                q.push(Triple::fresh(id, h));
            } else {
                self.insert(Triple { pol: h, ..p });
                for i in 0..self.t.len() {
                    let cur = self.dps[i].clone();
                    let new: Vec<Power> = cur
                        .iter()
                        .filter(|y| !self.t[i].dp.contains(y))
                        .copied()
                        .collect();
                    if new.is_empty() {
                        continue;
                    }
                    for y in &new {
                        let parent = &self.t[i];
                        let pol = parent.pol.shifted(&power_shift(y, self.nshifts), self.r);
                        let tr = Triple {
                            id: 0,
                            anc: parent.anc.clone(),
                            dp: Vec::new(),
                            idx: 0,
                            origin: Some(Origin {
                                parent: parent.id,
                                parent_idx: parent.idx,
                                power: *y,
                            }),
                            pol,
                        };
                        let id = self.new_id();
                        self.stats.prolongations += 1;
                        self.log(|s| TraceEvent::Prolong {
                            parent: s.t[i].id,
                            power: format!("{}^{}", y.shift, y.exp),
                            lm: s.fmt_lm(tr.lm()),
                        });
                        q.push(Triple { id, ..tr });
                    }
                    let dp = &mut self.t[i].dp;
                    dp.extend(new);
                    dp.sort();
                }
            }
            q = self.head_reduce(q)?;
        }
        Ok(())
    }
}

/// `lcm(lm(anc p), lm(anc g)) ⊏ lm(pol p)`.
pub fn c1(anc_p: &ShiftMonomial, anc_g: &ShiftMonomial, lm_p: &ShiftMonomial) -> bool {
    anc_p.lcm(anc_g).is_some_and(|l| l.strictly_divides(lm_p))
}

/// Some basis leading monomial `u` has both `lcm(u, lm(anc p))` and `lcm(u, lm(anc g))`
/// strictly dividing `lcm(lm(anc p), lm(anc g))`.
pub fn c2<'a>(
    anc_p: &ShiftMonomial,
    anc_g: &ShiftMonomial,
    mut basis: impl Iterator<Item = &'a ShiftMonomial>,
) -> bool {
    let Some(l) = anc_p.lcm(anc_g) else {
        return false;
    };
    basis.any(|u| {
        u.lcm(anc_p).is_some_and(|x| x.strictly_divides(&l))
            && u.lcm(anc_g).is_some_and(|x| x.strictly_divides(&l))
    })
}

/// Some earlier element `(lm, lm(anc), DP)` reaches `lm(pol p)` by one of its difference
/// powers and `lcm(lm(anc p), its ancestor) ⊏ lm(pol p)`.
pub fn c3<'a>(
    anc_p: &ShiftMonomial,
    lm_p: &ShiftMonomial,
    mut earlier: impl Iterator<Item = (&'a ShiftMonomial, &'a ShiftMonomial, &'a [Power])>,
) -> bool {
    let n = lm_p.mu.len();
    earlier.any(|(lm, anc, dp)| {
        dp.iter().any(|y| &lm.shifted(&y.as_shift(n)) == lm_p)
            && anc_p.lcm(anc).is_some_and(|x| x.strictly_divides(lm_p))
    })
}

/// Co-prime ancestors whose product is `lm(pol p)`.
pub fn c4(anc_p: &ShiftMonomial, anc_g: &ShiftMonomial, lm_p: &ShiftMonomial) -> bool {
    anc_p.indet == anc_g.indet
        && shifts_coprime(&anc_p.mu, &anc_g.mu)
        && &anc_p.shifted(&anc_g.mu) == lm_p
}

/// `lcm(θ, ϑ) = θϑ`: no shift occurs in both.
pub fn shifts_coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Janet-like completion of `fs` followed by extraction of the reduced Gröbner basis.
pub fn groebner_basis<K: Field>(
    fs: &[DiffPoly<K>],
    r: &Ranking,
    opts: &EngineOptions,
) -> Result<BasisResult<K>, EngineError> {
    check_input(fs, r)?;
    let input: Vec<RankedPoly<K>> = fs
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| RankedPoly::from_poly(f, r))
        .collect();
    let coprime = single_indet(fs) && fs.iter().all(|f| f.terms().all(|(_, c)| c.is_parameter_free()));
    let mut run = Run::new(r, opts, coprime);
    if input.is_empty() {
        return Ok(BasisResult {
            janet_like: Vec::new(),
            reduced_gb: Vec::new(),
            stats: run.stats,
            trace: run.trace.unwrap_or_default(),
        });
    }
    let first = (0..input.len())
        .min_by(|&a, &b| input[a].lead_key().cmp(&input[b].lead_key()))
        .unwrap();
    let mut q = Vec::new();
    for (i, p) in input.into_iter().enumerate() {
        let id = run.new_id();
        debug_assert_eq!(id, i);
        let tr = Triple::fresh(id, p);
        if i == first {
            run.insert(tr);
        } else {
            q.push(tr);
        }
    }
    run.complete(q)?;
    run.stats.work = run.budget.used;

    let mut order: Vec<usize> = (0..run.t.len()).collect();
    order.sort_by(|&a, &b| run.t[b].pol.lead_key().cmp(&run.t[a].pol.lead_key()));
    let janet_like = order
        .iter()
        .map(|&i| JanetElement {
            pol: run.t[i].pol.normalized().to_poly(),
            dp: run.dps[i].clone(),
            is_ancestor: run.t[i].anc.id == run.t[i].id,
        })
        .collect();
    let reduced = interreduce(run.t.iter().map(|t| t.pol.clone()).collect(), r);
    Ok(BasisResult {
        janet_like,
        reduced_gb: canonical(reduced).iter().map(|p| p.to_poly()).collect(),
        stats: run.stats,
        trace: run.trace.unwrap_or_default(),
    })
}

fn single_indet<K: Field>(fs: &[DiffPoly<K>]) -> bool {
    let mut ids: Vec<_> = fs.iter().flat_map(|f| f.indets()).collect();
    ids.sort();
    ids.dedup();
    ids.len() <= 1
}

/// One HeadReduce pass of `q` modulo the basis `t`, with every criterion switched by
/// `opts`. Returns the surviving triples and the statistics of the pass.
pub fn head_reduce_queue<K: Field>(
    q: Vec<Triple<K>>,
    t: Vec<Triple<K>>,
    r: &Ranking,
    opts: &EngineOptions,
) -> Result<(Vec<Triple<K>>, EngineStats), EngineError> {
    let mut run = Run::new(r, opts, false);
    run.next_id = q.iter().chain(&t).map(|x| x.id + 1).max().unwrap_or(0);
    run.next_idx = t.iter().map(|x| x.idx + 1).max().unwrap_or(0);
    run.t = t;
    run.refresh();
    let out = run.head_reduce(q)?;
    Ok((out, run.stats))
}
