use diffscheme::engine::EngineOptions;
use diffscheme::numerics::*;
use diffscheme::schemegen::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const T_END: f64 = 2.0 / 3.0;

fn lax_scheme() -> Scheme {
    generate_scheme(&burgers_lax([Rule::Midpoint; 3])).unwrap().scheme
}

fn godunov_scheme() -> ProductScheme {
    godunov_compose(&godunov(), &EngineOptions::default()).unwrap()
}

fn ic() -> RiemannIC<f64> {
    RiemannIC::new(0.8, 0.2)
}

fn run(update: &StencilUpdate<f64>, cells: usize, courant: f64) -> Solution<f64> {
    simulate(update, &ic(), &GridConfig::unit(cells, courant, T_END)).unwrap()
}

fn tap(u: &LinearUpdate<f64>, field: Field, level: usize, dx: i32) -> f64 {
    u.taps
        .iter()
        .filter(|t| t.field == field && t.level == level && t.dx == dx)
        .map(|t| t.coeff)
        .sum()
}

#[test]
fn exact_solution() {
    assert!((ic().shock_at(T_END) - 5.0 / 6.0).abs() < 1e-15);
    assert_eq!(exact_riemann(0.8, 0.2, 0.5, T_END), 0.8);
    assert_eq!(exact_riemann(0.8, 0.2, 0.9, T_END), 0.2);
    assert_eq!(exact_riemann(0.8, 0.2, 0.25, 0.0), 0.8);
    assert_eq!(exact_riemann(0.8, 0.2, 0.75, 0.0), 0.2);
    assert_eq!(exact_riemann(0.8, 0.2, 0.5, 0.0), 0.5);
    assert_eq!(exact_riemann(0.75, 0.25, 0.75, 0.5), 0.5);
}

#[test]
fn exact_shock_moves_at_the_rankine_hugoniot_speed() {
    let x: Vec<f64> = (0..2000).map(|j| (j as f64 + 0.5) / 2000.0).collect();
    let at = |t: f64| {
        let u: Vec<f64> = x.iter().map(|&x| ic().exact(x, t)).collect();
        shock_position(&x, &u, 0.5)
    };
    let speed = (at(0.6) - at(0.2)) / 0.4;
    assert!((speed - 0.5).abs() < 2.0 / 2000.0 / 0.4, "{speed}");
}

#[test]
fn godunov_flux_upwinds() {
    assert_eq!(godunov_flux(0.8, 0.2), burgers_flux(0.8));
    assert_eq!(godunov_flux(0.2, 0.8), burgers_flux(0.2));
    assert_eq!(godunov_flux(-0.2, -0.8), burgers_flux(-0.8));
    assert_eq!(godunov_flux(-0.5, 0.5), 0.0);
    assert_eq!(godunov_flux(-0.8, -0.2), burgers_flux(-0.2));
}

#[test]
fn lax_scheme_compiles_to_the_averaged_update() {
    let (h, tau, nu) = (0.1, 0.05, 0.01);
    let StencilUpdate::Linear(u) = compile_update(&lax_scheme(), &[("h", h), ("tau", tau), ("nu", nu)]).unwrap()
    else {
        panic!("linear update expected")
    };
    let close = |a: f64, b: f64| (a - b).abs() < 1e-15;
    assert_eq!(u.levels, 1);
    assert!(u.sweep.is_none());
    assert!(close(tap(&u, Field::U, 0, -1), 0.5) && close(tap(&u, Field::U, 0, 1), 0.5));
    assert!(close(tap(&u, Field::F, 0, 1), -tau / (2.0 * h)));
    assert!(close(tap(&u, Field::F, 0, -1), tau / (2.0 * h)));
    assert!(close(tap(&u, Field::U, 0, 2), nu * tau / (4.0 * h * h)));
    assert!(close(tap(&u, Field::U, 0, 0), -2.0 * nu * tau / (4.0 * h * h)));
}

#[test]
fn wave_scheme_is_three_level() {
    let s = generate_scheme(&wave(Rule::Trapezoid)).unwrap().scheme;
    let StencilUpdate::Linear(u) = compile_update(&s, &[("h", 0.1)]).unwrap() else {
        panic!()
    };
    assert_eq!(u.levels, 2);
    assert_eq!(u.taps.len(), 3);
    assert_eq!(tap(&u, Field::U, 0, 1), 1.0);
    assert_eq!(tap(&u, Field::U, 0, -1), 1.0);
    assert_eq!(tap(&u, Field::U, 1, 0), -1.0);
}

#[test]
fn implicit_schemes_are_rejected() {
    let s = generate_scheme(&heat(Rule::Trapezoid)).unwrap().scheme;
    let err = compile_update(&s, &[("h", 0.1), ("tau", 0.01), ("alpha", 1.0)]).unwrap_err();
    match err {
        NumericsError::NotExplicit { nodes } => assert_eq!(nodes.len(), 3),
        e => panic!("{e}"),
    }
    let lw = lax_wendroff([Rule::Midpoint; 6], &EngineOptions::default()).unwrap();
    assert!(matches!(
        compile_update::<f64>(&lw.predictor, &[("h", 0.1), ("tau", 0.01), ("nu", 0.0)]),
        Err(NumericsError::UnsupportedIndet(_))
    ));
    assert!(matches!(
        compile_update::<f64>(&lax_scheme(), &[("h", 0.1)]),
        Err(NumericsError::UnboundParameter(_))
    ));
}

#[test]
fn content_removal_makes_viscous_free_variants_explicit() {
    let p = [("h", 0.01), ("tau", 0.005), ("nu", 0.0)];
    let vs = burgers_variants(&EngineOptions::default()).unwrap();
    let lax = compile_update(vs[0].scheme(), &p).unwrap();
    for v in &vs {
        let u = compile_update(v.scheme(), &p).unwrap();
        let StencilUpdate::Linear(l) = &u else { panic!() };
        match v.code().as_str() {
            "mmm" | "mmt" | "mtm" | "mtt" => assert_eq!(u, lax, "{}", v.code()),
            _ => assert_eq!(l.sweep, Some((-1, -1.0)), "{}", v.code()),
        }
    }
}

#[test]
fn amplification_separates_stable_variants() {
    let g = GridConfig::unit(200, 0.9, T_END);
    let p = g.params(0.0);
    for v in burgers_variants(&EngineOptions::default()).unwrap() {
        let a = amplification(v.scheme(), &p, 0.8, 400).unwrap();
        if v.code().starts_with('m') {
            assert!(a <= 1.0 + 1e-12, "{} {a}", v.code());
        } else {
            assert!(a.is_infinite(), "{} {a}", v.code());
        }
    }
}

#[test]
fn constant_state_is_preserved() {
    let flat = RiemannIC::new(0.5, 0.5);
    let g = GridConfig::unit(50, 0.9, 0.2);
    let p = g.params(0.0);
    let ftfs = generate_scheme(&burgers_ftfs()).unwrap().scheme;
    for u in [
        compile_update(&lax_scheme(), &p).unwrap(),
        compile_update(&ftfs, &p).unwrap(),
        compile_godunov(&godunov_scheme(), &p).unwrap(),
    ] {
        let s = simulate(&u, &flat, &g).unwrap();
        assert!(s.u.iter().all(|&v| v == 0.5));
        assert_eq!(s.metrics.l1, 0.0);
    }
}

#[test]
fn godunov_captures_the_shock() {
    for courant in [0.9, 0.1] {
        let g = GridConfig::unit(200, courant, T_END);
        let god = run(&compile_godunov(&godunov_scheme(), &g.params(0.0)).unwrap(), 200, courant);
        let lax = run(&compile_update(&lax_scheme(), &g.params(0.0)).unwrap(), 200, courant);
        let m = &god.metrics;
        assert!((m.shock_pos - 5.0 / 6.0).abs() <= 2.0 * g.h(), "{m:?}");
        assert!(m.width <= 3, "{m:?}");
        assert!(m.max_abs <= 1.0);
        assert!(m.l1 < lax.metrics.l1, "{m:?} vs {:?}", lax.metrics);
        assert!(lax.metrics.max_abs <= 1.0);
    }
}

#[test]
fn godunov_shock_error_shrinks_with_resolution() {
    let mut last = f64::INFINITY;
    for cells in [100, 200, 400] {
        let g = GridConfig::unit(cells, 0.9, T_END);
        let s = run(&compile_godunov(&godunov_scheme(), &g.params(0.0)).unwrap(), cells, 0.9);
        let err = (s.metrics.shock_pos - 5.0 / 6.0).abs();
        assert!(err <= last + g.h(), "{cells}: {err} after {last}");
        last = err;
    }
}

#[test]
fn ftfs_blows_up() {
    let ftfs = generate_scheme(&burgers_ftfs()).unwrap().scheme;
    for courant in [0.9, 0.1] {
        let mut g = GridConfig::unit(200, courant, 1.0);
        g.t_end = 1e4 * courant * g.h();
        let u = compile_update(&ftfs, &g.params(0.0)).unwrap();
        match simulate(&u, &ic(), &g) {
            Err(NumericsError::BlowUp { step, .. }) => assert!(step <= 10_000),
            Ok(s) => assert!(s.metrics.max_abs > 1e3, "{:?}", s.metrics),
            Err(e) => panic!("{e}"),
        }
    }
}

fn periodic(cells: usize, courant: f64, t_end: f64) -> GridConfig<f64> {
    GridConfig {
        boundary: Boundary::Periodic,
        ..GridConfig::unit(cells, courant, t_end)
    }
}

#[test]
fn periodic_runs_conserve_the_total() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let data: Vec<f64> = (0..64).map(|_| rng.gen_range(0.1..0.9)).collect();
    let g = periodic(64, 0.5, 0.5);
    let lax = compile_update(&lax_scheme(), &g.params(0.001)).unwrap();
    let r = conservation_check(&lax, &g, &data).unwrap();
    assert!(r.passed() && r.steps > 0, "{r:?}");
    let flat = conservation_check(&lax, &g, &[0.25; 64]).unwrap();
    assert_eq!(flat.max_drift, 0.0);
    let short = periodic(64, 0.5, 0.05);
    let ftfs = generate_scheme(&burgers_ftfs()).unwrap().scheme;
    let r = conservation_check(&compile_update(&ftfs, &short.params(0.0)).unwrap(), &short, &data).unwrap();
    assert!(r.passed(), "{r:?}");
    let god = compile_godunov(&godunov_scheme(), &g.params(0.0)).unwrap();
    assert!(conservation_check(&god, &g, &data).unwrap().passed());
}

#[test]
fn sweeps_need_a_fixed_boundary() {
    let v = generate_scheme(&burgers_lax([Rule::Trapezoid, Rule::Midpoint, Rule::Trapezoid])).unwrap();
    let g = periodic(16, 0.5, 0.1);
    let u = compile_update(&v.scheme, &g.params(0.0)).unwrap();
    assert_eq!(
        conservation_check(&u, &g, &[0.5; 16]).unwrap_err(),
        NumericsError::SweepNeedsBoundary
    );
}

#[test]
fn grid_validation() {
    let ok = GridConfig::unit(200, 0.9, T_END);
    assert!(ok.validate().is_ok());
    assert_eq!(ok.steps(), 149);
    assert!((ok.tau() * 149.0 - T_END).abs() < 1e-15);
    assert!(GridConfig::unit(3, 0.9, 1.0).validate().is_err());
    assert!(GridConfig::unit(10, 0.0, 1.0).validate().is_err());
    assert!(GridConfig::unit(10, 0.5, -1.0).validate().is_err());
}

#[test]
fn quadratic_solutions_are_reproduced_exactly() {
    let laplace = generate_scheme(&laplace(Rule::Midpoint)).unwrap().scheme;
    let setup = ConsistencySetup {
        ratios: vec![1.0, 1.0],
        base: vec![0.3, 0.2],
        params: Box::new(|h| vec![("h".into(), h)]),
        fields: vec![("u".into(), Box::new(|p: &[f64]| p[0] * p[0] - p[1] * p[1]))],
        unit: vec![("u".into(), Box::new(|p: &[f64]| p[0] * p[0] / 2.0))],
    };
    let r = consistency_order(&laplace, &setup, &[0.1, 0.05, 0.025]).unwrap();
    assert!(r.exact, "{r:?}");
    let wave = generate_scheme(&wave(Rule::Trapezoid)).unwrap().scheme;
    let setup = ConsistencySetup {
        ratios: vec![1.0, 1.0],
        base: vec![0.4, 0.1],
        params: Box::new(|h| vec![("h".into(), h)]),
        fields: vec![("u".into(), Box::new(|p: &[f64]| (p[0] + p[1]).powi(2)))],
        unit: vec![("u".into(), Box::new(|p: &[f64]| p[1] * p[1] / 2.0))],
    };
    assert!(consistency_order(&wave, &setup, &[0.1, 0.05, 0.025]).unwrap().exact);
    let smooth = ConsistencySetup {
        ratios: vec![1.0, 1.0],
        base: vec![0.3, 0.2],
        params: Box::new(|h| vec![("h".into(), h)]),
        fields: vec![("u".into(), Box::new(|p: &[f64]| p[0].exp() * p[1].sin()))],
        unit: vec![("u".into(), Box::new(|p: &[f64]| p[0] * p[0] / 2.0))],
    };
    let r = consistency_order(&laplace, &smooth, &[0.02, 0.01, 0.005]).unwrap();
    assert!(!r.exact && (r.order().unwrap() - 2.0).abs() < 0.1, "{r:?}");
}

/// `u = f = e^{−νt} sin(x − t)` solves `u_t + f_x = ν u_xx`; coordinates are `(t, x)`.
fn travelling(nu: f64) -> FieldFn<'static, f64> {
    Box::new(move |p: &[f64]| (-nu * p[0]).exp() * (p[1] - p[0]).sin())
}

fn burgers_setup(names: &[&str], nu: f64) -> ConsistencySetup<'static, f64> {
    let c = 0.5;
    ConsistencySetup {
        ratios: vec![c, 1.0],
        base: vec![0.1, 0.7],
        params: Box::new(move |h| vec![("h".into(), h), ("tau".into(), c * h), ("nu".into(), nu)]),
        fields: names.iter().map(|n| (n.to_string(), travelling(nu))).collect(),
        unit: names
            .iter()
            .filter(|n| n.starts_with('u'))
            .map(|n| (n.to_string(), Box::new(|p: &[f64]| p[0]) as FieldFn<f64>))
            .collect(),
    }
}

const HS: [f64; 4] = [0.04, 0.02, 0.01, 0.005];

#[test]
fn lax_advection_is_first_order() {
    let s = generate_scheme(&advection()).unwrap().scheme;
    let setup = ConsistencySetup {
        ratios: vec![0.5, 1.0],
        base: vec![0.1, 0.7],
        params: Box::new(|h| vec![("h".into(), h), ("tau".into(), 0.5 * h), ("nu".into(), 1.0)]),
        fields: vec![("u".into(), Box::new(|p: &[f64]| (p[1] - p[0]).sin()))],
        unit: vec![("u".into(), Box::new(|p: &[f64]| p[0]))],
    };
    let r = consistency_order(&s, &setup, &HS).unwrap();
    assert!(r.order().unwrap() >= 0.9, "{r:?}");
}

#[test]
fn generated_burgers_schemes_are_consistent() {
    for v in burgers_variants(&EngineOptions::default()).unwrap() {
        let r = consistency_order(v.scheme(), &burgers_setup(&["u", "f"], 0.3), &HS).unwrap();
        assert!(r.order().unwrap() >= 0.9, "{} {r:?}", v.code());
    }
    for f in godunov_scheme().factors {
        let r = consistency_order(&f, &burgers_setup(&["u", "f"], 0.0), &HS).unwrap();
        assert!(r.order().unwrap() >= 0.9, "{f} {r:?}");
    }
}

#[test]
fn lax_wendroff_pairs_are_consistent() {
    for rules in [[Rule::Midpoint; 6], [Rule::Trapezoid; 6]] {
        let lw = lax_wendroff(rules, &EngineOptions::default()).unwrap();
        for s in [&lw.predictor, &lw.corrector] {
            let r = consistency_order(s, &burgers_setup(&["u", "f", "ub", "fb"], 0.3), &HS).unwrap();
            assert!(r.order().unwrap() >= 0.9, "{s} {r:?}");
        }
    }
    let mid = lax_wendroff([Rule::Midpoint; 6], &EngineOptions::default()).unwrap();
    let trap = lax_wendroff([Rule::Trapezoid; 6], &EngineOptions::default()).unwrap();
    assert!(!scheme_equiv(&mid.predictor, &trap.predictor) || !scheme_equiv(&mid.corrector, &trap.corrector));
}
