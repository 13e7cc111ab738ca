use diffscheme::diffpoly::normal_form;
use diffscheme::engine::{certify::certify, EngineOptions, TraceEvent};
use diffscheme::parser::parse_system;
use diffscheme::schemegen::*;
use diffscheme::{Coeff, IndetId};

fn opts() -> EngineOptions {
    EngineOptions::default()
}

fn check_golden(spec: &ProblemSpec, name: &str) -> Generated {
    let g = generate_scheme(spec).unwrap();
    let want = &golden(name).unwrap()[0];
    assert!(scheme_equiv(&g.scheme, want), "{name}: got {}, want {}", g.scheme, want);
    g
}

#[test]
fn relation_templates() {
    let s = parse_system("params h tau; shifts St Sx; indets d > u; eq: 0;").unwrap();
    let (names, r) = (s.names(), s.ranking());
    let x = Axis::new(1, "h");
    let t = Axis::new(0, "tau");
    let show = |rule, axis: &Axis| {
        discretize_relation(IndetId(0), IndetId(1), rule, axis, 2)
            .unwrap()
            .display(&names, &r)
    };
    assert_eq!(show(Rule::Midpoint, &x), "2*h*Sx(d) - Sx^2(u) + u");
    assert_eq!(show(Rule::Trapezoid, &x), "h/2*Sx(d) + h/2*d - Sx(u) + u");
    assert_eq!(show(Rule::ExplicitEuler, &t), "tau*d - St(u) + u");
    assert!(matches!(
        discretize_relation(IndetId(0), IndetId(1), Rule::Midpoint, &Axis::new(2, "h"), 2),
        Err(SchemeError::UnknownAxis(2))
    ));
}

#[test]
fn lax_average_needs_the_primitive_term() {
    let x = Axis::new(1, "h");
    let euler =
        discretize_relation(IndetId(0), IndetId(1), Rule::ExplicitEuler, &Axis::new(0, "tau"), 2)
            .unwrap();
    let s = parse_system("params h tau; shifts St Sx; indets d > u; eq: 0;").unwrap();
    let avg = lax_substitute(&euler, IndetId(1), &x, 2).unwrap();
    assert_eq!(
        avg.display(&s.names(), &s.ranking()),
        "tau*Sx(d) - St*Sx(u) + 1/2*Sx^2(u) + 1/2*u"
    );
    let no_u = discretize_relation(IndetId(0), IndetId(0), Rule::ExplicitEuler, &x, 2).unwrap();
    assert!(matches!(
        lax_substitute(&no_u, IndetId(1), &x, 2),
        Err(SchemeError::MissingLaxTerm)
    ));
}

#[test]
fn linear_problems_match_reference_schemes() {
    check_golden(&laplace(Rule::Midpoint), "laplace");
    check_golden(&laplace(Rule::Trapezoid), "laplace-trapezoid");
    check_golden(&heat(Rule::Trapezoid), "heat");
    check_golden(&wave(Rule::Trapezoid), "wave");
    check_golden(&advection(), "advection");
    check_golden(&burgers_ftfs(), "burgers-ftfs");
}

#[test]
fn midpoint_heat_is_crank_nicolson_in_double_nodes() {
    let g = generate_scheme(&heat(Rule::Midpoint)).unwrap();
    let doubled = parse_system(
        "params h tau alpha; shifts Sx St; indets u; eq: \
         alpha*tau*(St + 1)*(Sx^2 - 1)^2(u) + 8*h^2*Sx^2*(St - 1)(u);",
    )
    .unwrap();
    let want = Scheme::new(doubled.equations[0].clone(), doubled.names(), doubled.ranking());
    assert!(scheme_equiv(&g.scheme, &want), "{}", g.scheme);
}

#[test]
fn schemes_lie_in_their_ideal() {
    for spec in [laplace(Rule::Midpoint), heat(Rule::Trapezoid), wave(Rule::Trapezoid), advection(), burgers_ftfs()] {
        let g = generate_scheme(&spec).unwrap();
        let r = g.system.ranking();
        assert!(normal_form(&g.scheme.poly, &g.basis.reduced_gb, &r).is_zero(), "{}", spec.name);
        assert!(certify(&g.system.equations, &g.basis, &r).passed(), "{}", spec.name);
    }
}

#[test]
fn criteria_do_not_change_schemes() {
    for spec in [heat(Rule::Trapezoid), wave(Rule::Trapezoid), advection()] {
        let on = generate_with(&spec, &opts()).unwrap();
        let off = generate_with(&spec, &EngineOptions::no_criteria()).unwrap();
        assert_eq!(on.basis.reduced_gb, off.basis.reduced_gb, "{}", spec.name);
        assert_eq!(on.scheme, off.scheme);
    }
}

#[test]
fn advection_trace_matches_hand_run() {
    let spec = advection();
    let s = spec.system().unwrap();
    let traced = EngineOptions {
        trace: true,
        ..opts()
    };
    let res = diffscheme::engine::groebner_basis(&s.equations, &s.ranking(), &traced).unwrap();
    let lm = |s: &str| s.to_string();
    assert_eq!(
        res.trace,
        vec![
            TraceEvent::Insert { id: 2, idx: 0, lm: lm("y1[0, 1]"), anc: 2 },
            TraceEvent::Select { id: 0, lm: lm("y0[0, 0]") },
            TraceEvent::Insert { id: 0, idx: 1, lm: lm("y0[0, 0]"), anc: 0 },
            TraceEvent::Wrap { id: 3, lm: lm("y2[1, 1]") },
            TraceEvent::Select { id: 3, lm: lm("y2[1, 1]") },
            TraceEvent::Insert { id: 3, idx: 2, lm: lm("y2[1, 1]"), anc: 3 },
        ]
    );
    assert_eq!(res.stats.head_reductions, 2);
    assert_eq!(res.stats.prolongations, 0);
}

#[test]
fn burgers_variants_form_seven_classes() {
    let vs = burgers_variants(&opts()).unwrap();
    let codes: Vec<String> = vs.iter().map(|v| v.code()).collect();
    assert_eq!(codes, ["mmm", "mmt", "mtm", "mtt", "tmm", "tmt", "ttm", "ttt"]);
    let schemes: Vec<&Scheme> = vs.iter().map(|v| v.scheme()).collect();
    assert_eq!(
        distinct_classes(&schemes),
        vec![vec![0], vec![1], vec![2], vec![3], vec![4], vec![5, 6], vec![7]]
    );
    let fixture = [1, 2, 3, 4, 5, 6, 6, 7];
    for (v, k) in vs.iter().zip(fixture) {
        let want = &golden(&format!("burgers-lax-{k}")).unwrap()[0];
        assert!(scheme_equiv(v.scheme(), want), "{} vs fixture {k}", v.code());
    }
}

#[test]
fn conservative_schemes_telescope() {
    let vs = burgers_variants(&opts()).unwrap();
    for v in &vs {
        assert!(telescopes(v.scheme(), 1, "u", &["f"]), "{}", v.code());
    }
    let ftfs = generate_scheme(&burgers_ftfs()).unwrap();
    assert!(telescopes(&ftfs.scheme, 1, "u", &["f"]));
    let lw = lax_wendroff([Rule::Midpoint; 6], &opts()).unwrap();
    assert!(telescopes(&lw.corrector, 1, "u", &["fb", "ub"]));
    let leaky = parse_system("params h; shifts St Sx; indets u > f; eq: St(u) - u + Sx(f);").unwrap();
    let s = Scheme::new(leaky.equations[0].clone(), leaky.names(), leaky.ranking());
    assert!(!telescopes(&s, 1, "u", &["f"]));
}

#[test]
fn lax_wendroff_pair() {
    let lw = lax_wendroff([Rule::Midpoint; 6], &opts()).unwrap();
    let g = golden("lax-wendroff").unwrap();
    assert!(scheme_equiv(&lw.predictor, &g[0]), "{}", lw.predictor);
    assert!(scheme_equiv(&lw.corrector, &g[1]), "{}", lw.corrector);
    let r = lw.generated.system.ranking();
    assert!(certify(&lw.generated.system.equations, &lw.generated.basis, &r).passed());
}

#[test]
fn godunov_is_a_product_of_upwind_factors() {
    let p = godunov_compose(&godunov(), &opts()).unwrap();
    let g = golden("godunov").unwrap();
    let want = ProductScheme {
        factors: [g[0].clone(), g[1].clone()],
    };
    assert!(p.equiv(&want), "{p}");
    let swapped = ProductScheme {
        factors: [g[1].clone(), g[0].clone()],
    };
    assert!(p.equiv(&swapped));
    assert!(!scheme_equiv(&p.factors[0], &p.factors[1]));
}

#[test]
fn identical_branches_give_a_square() {
    let mut spec = godunov();
    for e in &mut spec.equations {
        if let Equation::Factored(a, b) = e {
            *b = a.clone();
        }
    }
    let p = godunov_compose(&spec, &opts()).unwrap();
    assert!(scheme_equiv(&p.factors[0], &p.factors[1]));
    assert_eq!(p.factors[0].poly, p.factors[1].poly);
}

#[test]
fn factored_equation_is_rejected_by_plain_generation() {
    assert!(matches!(generate_scheme(&godunov()), Err(SchemeError::BadRules(_))));
}

#[test]
fn canned_problems_parse_rule_codes() {
    assert!(problem("burgers-lax", Some("mtm")).is_ok());
    assert!(matches!(problem("burgers-lax", Some("mt")), Err(SchemeError::BadRules(_))));
    assert!(matches!(problem("advection", Some("m")), Err(SchemeError::BadRules(_))));
    assert!(matches!(problem("nope", None), Err(SchemeError::UnknownProblem(_))));
    for name in PROBLEMS {
        problem(name, None).unwrap();
    }
}

#[test]
fn stencil_and_substitution() {
    let g = generate_scheme(&advection()).unwrap();
    let nodes = g.scheme.stencil();
    assert_eq!(nodes.len(), 3);
    assert!(nodes.iter().all(|n| n.indet == "u"));
    let values = [("h", Coeff::from(1)), ("tau", Coeff::from(1)), ("nu", Coeff::from(1))].into();
    // ν τ = h collapses the Lax scheme to a pure shift.
    assert_eq!(g.scheme.substitute(&values).display(), "St*Sx(u) - u");
}
