use diffscheme::diffpoly::{normal_form, RankedPoly, Ranking};
use diffscheme::engine::random::{random_system, random_system_with, Shape};
use diffscheme::engine::{
    self, buchberger_oracle, c1, c4, certify, groebner_basis, head_reduce_queue, j_normal_form,
    shifts_coprime, Criterion, EngineError, EngineOptions, JanetBasis, Triple,
};
use diffscheme::parser::parse_system;
use diffscheme::{IndetId, QPoly, Rational, ShiftMonomial};

const LAPLACE: &str = "
params h;
shifts Sx Sy;
indets u_x > u_y > u;
ranking lex;
eq: (Sx*Sy^2 - Sx)(u_y) + (Sx^2*Sy - Sy)(u_x);
eq: 2*h*Sx(u_x) - (Sx^2 - 1)(u);
eq: 2*h*Sy(u_y) - (Sy^2 - 1)(u);
";

fn m(k: u16, mu: &[u32]) -> ShiftMonomial {
    ShiftMonomial::new(IndetId(k), mu)
}

fn q(terms: &[(u16, &[u32], i64)]) -> QPoly {
    QPoly::from_terms(
        terms
            .iter()
            .map(|&(k, mu, c)| (m(k, mu), Rational::from_integer(c.into()))),
    )
}

#[test]
fn single_indeterminate_is_its_own_basis() {
    let r = Ranking::elimination_lex(1, 1);
    let f = q(&[(0, &[0], 1)]);
    let res = groebner_basis(std::slice::from_ref(&f), &r, &EngineOptions::default()).unwrap();
    assert_eq!(res.reduced_gb, vec![f.clone()]);
    assert_eq!(buchberger_oracle(&[f], &r, 1000).unwrap().len(), 1);
}

#[test]
fn empty_input_gives_empty_basis() {
    let r = Ranking::elimination_lex(1, 2);
    let res = groebner_basis::<Rational>(&[], &r, &EngineOptions::default()).unwrap();
    assert!(res.reduced_gb.is_empty() && res.janet_like.is_empty());
    let zero = groebner_basis(&[QPoly::zero()], &r, &EngineOptions::default()).unwrap();
    assert!(zero.reduced_gb.is_empty());
}

#[test]
fn mismatched_shift_count_is_rejected() {
    let r = Ranking::elimination_lex(1, 2);
    let f = q(&[(0, &[1], 1)]);
    assert_eq!(
        groebner_basis(&[f], &r, &EngineOptions::default()).unwrap_err(),
        EngineError::ShiftArity { expected: 2, found: 1 }
    );
}

#[test]
fn laplace_basis_contains_the_five_point_relation() {
    let s = parse_system(LAPLACE).unwrap();
    let r = s.ranking();
    let res = groebner_basis(&s.equations, &r, &EngineOptions::default()).unwrap();
    assert_eq!(res.reduced_gb.len(), 5);
    let shown: Vec<String> = res
        .reduced_gb
        .iter()
        .map(|g| g.display(&s.names(), &r))
        .collect();
    assert!(shown.contains(
        &"Sx^4*Sy^2(u) + Sx^2*Sy^4(u) - 4*Sx^2*Sy^2(u) + Sx^2(u) + Sy^2(u)".to_string()
    ));
    assert_eq!(buchberger_oracle(&s.equations, &r, 1_000_000).unwrap(), res.reduced_gb);
    assert!(certify::certify(&s.equations, &res, &r).passed());
}

#[test]
fn laplace_basis_is_independent_of_criteria() {
    let s = parse_system(LAPLACE).unwrap();
    let r = s.ranking();
    let all = groebner_basis(&s.equations, &r, &EngineOptions::default()).unwrap();
    let none = groebner_basis(&s.equations, &r, &EngineOptions::no_criteria()).unwrap();
    assert_eq!(all.reduced_gb, none.reduced_gb);
}

#[test]
fn j_normal_form_of_basis_element_vanishes() {
    let s = parse_system(LAPLACE).unwrap();
    let r = s.ranking();
    let res = groebner_basis(&s.equations, &r, &EngineOptions::default()).unwrap();
    let basis: Vec<_> = res.janet_like.iter().map(|e| e.pol.clone()).collect();
    for g in &basis {
        assert!(j_normal_form(g, &basis, &r, true).is_zero());
    }
}

#[test]
fn janet_reduction_uses_the_partition() {
    // lms (0,2) and (2,0): θ1²∘(0,2) = (2,2) must be reduced through the (2,0) element.
    let r = Ranking::elimination_lex(1, 2);
    let a = q(&[(0, &[0, 2], 1), (0, &[0, 0], 1)]);
    let b = q(&[(0, &[2, 0], 1), (0, &[0, 0], -1)]);
    let basis = JanetBasis::new(&[a.clone(), b.clone()], &r);
    let w = m(0, &[2, 2]);
    let found = basis.reductors(&w);
    assert_eq!(found.len(), 1);
    let lm_b = RankedPoly::from_poly(&b, &r).lm().unwrap().clone();
    assert_eq!(basis.polys()[found[0].0].lm(), Some(&lm_b));
    for x in 0..6u32 {
        for y in 0..6u32 {
            let w = m(0, &[x, y]);
            let brute = [&a, &b]
                .iter()
                .enumerate()
                .filter(|(i, _)| {
                    let lm = basis.polys()[*i].lm().unwrap();
                    lm.quotient(&w).is_some_and(|t| {
                        engine::is_janet_multiplier(&t, basis.difference_powers(*i))
                    })
                })
                .count();
            assert_eq!(basis.reductors(&w).len(), brute);
            assert!(brute <= 1);
        }
    }
}

#[test]
fn criterion_predicates() {
    assert!(c1(&m(0, &[1, 0]), &m(0, &[0, 1]), &m(0, &[2, 1])));
    assert!(!c1(&m(0, &[1, 0]), &m(0, &[0, 1]), &m(0, &[1, 1])));
    assert!(shifts_coprime(&[1, 0], &[0, 1]));
    assert!(!shifts_coprime(&[1, 1], &[0, 1]));
    assert!(c4(&m(0, &[1, 0]), &m(0, &[0, 1]), &m(0, &[1, 1])));
}

#[test]
fn head_reduce_purges_descendants_of_a_vanishing_ancestor() {
    let r = Ranking::elimination_lex(1, 1);
    let rk = |p: &QPoly| RankedPoly::from_poly(p, &r);
    let t = vec![Triple::fresh(0, rk(&q(&[(0, &[1], 1), (0, &[0], 1)])))];
    let doomed = Triple::fresh(1, rk(&q(&[(0, &[2], 1), (0, &[1], 1)])));
    let mut child = Triple::fresh(2, rk(&q(&[(0, &[3], 1), (0, &[2], 1)])));
    child.anc = doomed.anc.clone();
    let (out, stats) =
        head_reduce_queue(vec![doomed, child], t.clone(), &r, &EngineOptions::default()).unwrap();
    assert!(out.is_empty());
    assert_eq!(stats.purged, 1);
    let (none, _) = head_reduce_queue(Vec::new(), t, &r, &EngineOptions::default()).unwrap();
    assert!(none.is_empty());
}

#[test]
fn runs_are_deterministic() {
    let s = parse_system(LAPLACE).unwrap();
    let r = s.ranking();
    let opts = EngineOptions {
        trace: true,
        ..EngineOptions::default()
    };
    let a = groebner_basis(&s.equations, &r, &opts).unwrap();
    let b = groebner_basis(&s.equations, &r, &opts).unwrap();
    assert_eq!(a.reduced_gb, b.reduced_gb);
    assert_eq!(a.trace, b.trace);
    assert_eq!(a.stats, b.stats);
}

#[test]
fn budget_is_enforced() {
    let s = parse_system(LAPLACE).unwrap();
    let opts = EngineOptions {
        budget: 3,
        ..EngineOptions::default()
    };
    assert_eq!(
        groebner_basis(&s.equations, &s.ranking(), &opts).unwrap_err(),
        EngineError::BudgetExceeded { limit: 3 }
    );
}

fn all_configs() -> Vec<EngineOptions> {
    let mut v = vec![EngineOptions::default(), EngineOptions::no_criteria()];
    v.extend(Criterion::ALL.map(|c| EngineOptions::default().without(c)));
    v
}

fn cross_check(sys: &engine::random::RandomSystem) -> [u64; 4] {
    let oracle = buchberger_oracle(&sys.equations, &sys.ranking, 10_000_000).unwrap();
    let mut hits = [0; 4];
    for opts in all_configs() {
        let res = groebner_basis(&sys.equations, &sys.ranking, &opts).unwrap();
        assert_eq!(res.reduced_gb, oracle, "seed {} {:?}", sys.seed, opts.criteria);
        let cert = certify::certify(&sys.equations, &res, &sys.ranking);
        assert!(cert.passed(), "seed {} {:?}", sys.seed, cert);
        for (h, x) in hits.iter_mut().zip(res.stats.criteria_hits) {
            *h += x;
        }
    }
    hits
}

#[test]
fn random_systems_agree_with_oracle() {
    for seed in 1000..1040 {
        cross_check(&random_system(seed));
    }
}

#[test]
fn three_shift_systems_exercise_chain_criteria() {
    let shape = Shape {
        shifts: 3,
        indets: 2,
        generators: 4,
        degree: 5,
        terms: 3,
        coeff: 2,
    };
    let mut hits = [0; 4];
    for seed in 0..60 {
        let h = cross_check(&random_system_with(seed, shape));
        for (a, b) in hits.iter_mut().zip(h) {
            *a += b;
        }
    }
    assert!(hits[0] > 0 && hits[1] > 0, "criteria never fired: {hits:?}");
}

#[test]
fn ordinary_nf_of_inputs_vanishes() {
    for seed in 0..20 {
        let sys = random_system(seed);
        let res = groebner_basis(&sys.equations, &sys.ranking, &EngineOptions::default()).unwrap();
        for f in &sys.equations {
            assert!(normal_form(f, &res.reduced_gb, &sys.ranking).is_zero());
        }
    }
}
