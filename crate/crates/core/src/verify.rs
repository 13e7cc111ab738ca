//! Self-checks shared by the `verify` subcommand and the acceptance target.
//!
//! Each suite returns a list of [`Check`]s. A check fails when its predicate fails or when
//! it exceeds its time limit.

use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Coeff, Param, ParamMonomial, ParamPoly, Rational};
use crate::diffpoly::{normal_form, IndetId, ShiftMonomial};
use crate::engine::certify::certify;
use crate::engine::random::random_system;
use crate::engine::{buchberger_oracle, groebner_basis, Criterion, EngineOptions};
use crate::numerics::{
    self, compile_godunov, compile_update, simulate, Boundary, ConsistencySetup, GridConfig,
    NumericsError, RiemannIC, StencilUpdate,
};
use crate::schemegen::{
    self, branch_specs, burgers_variants, distinct_classes, generate_with, golden, lax_wendroff,
    scheme_equiv, Generated, ProblemSpec, ProductScheme, Rule, Scheme,
};
use crate::QPoly;

pub const DEFAULT_SEED: u64 = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

fn timed(id: &str, limit_ms: u128, f: impl FnOnce() -> Result<String, String>) -> Check {
    let start = Instant::now();
    let out = f();
    let millis = start.elapsed().as_millis();
    let (passed, mut detail) = match out {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if passed && millis > limit_ms {
        detail = format!("{detail}; took {millis} ms, limit {limit_ms} ms");
    }
    Check {
        id: id.to_string(),
        passed: passed && millis <= limit_ms,
        detail,
        millis,
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> Result<Vec<Scheme>, String> {
    golden(name).map_err(|e| e.to_string())
}

fn generate(spec: &ProblemSpec, opts: &EngineOptions) -> Result<Generated, String> {
    generate_with(spec, opts).map_err(|e| format!("{}: {e}", spec.name))
}

fn matches_fixture(g: &Generated, name: &str) -> Result<String, String> {
    let want = &fixture(name)?[0];
    ensure(scheme_equiv(&g.scheme, want), || {
        format!("{name}: generated {} differs from {}", g.scheme, want)
    })?;
    Ok(g.scheme.display())
}

/// Generated schemes against the bundled fixtures, with a certificate for every basis.
pub fn golden_suite(opts: &EngineOptions) -> Report {
    let mut runs: Vec<(String, Generated)> = Vec::new();
    let mut checks = Vec::new();
    let mut keep = |label: &str, g: &Generated| runs.push((label.to_string(), g.clone()));

    checks.push(timed("laplace", 1000, || {
        let g = generate(&schemegen::laplace(Rule::Midpoint), opts)?;
        let want = &fixture("laplace")?[0];
        let names = schemegen::laplace(Rule::Midpoint).names();
        let hit = g
            .basis
            .reduced_gb
            .iter()
            .any(|p| scheme_equiv(&Scheme::new(p.clone(), names.clone(), g.scheme.ranking.clone()), want));
        keep("laplace", &g);
        ensure(hit, || "no reduced-basis element matches".into())?;
        Ok(format!("{} in a {}-element basis", g.scheme, g.basis.reduced_gb.len()))
    }));
    for (id, spec) in [
        ("heat", schemegen::heat(Rule::Trapezoid)),
        ("wave", schemegen::wave(Rule::Trapezoid)),
        ("advection", schemegen::advection()),
    ] {
        checks.push(timed(id, 1000, || {
            let g = generate(&spec, opts)?;
            keep(id, &g);
            matches_fixture(&g, id)
        }));
    }
    checks.push(timed("burgers", 10_000, || {
        let ftfs = generate(&schemegen::burgers_ftfs(), opts)?;
        keep("burgers-ftfs", &ftfs);
        matches_fixture(&ftfs, "burgers-ftfs")?;
        let vs = burgers_variants(opts).map_err(|e| e.to_string())?;
        for v in &vs {
            keep(&format!("burgers-lax-{}", v.code()), &v.generated);
        }
        matches_fixture(&vs[0].generated, "burgers-lax-1")?;
        let schemes: Vec<&Scheme> = vs.iter().map(|v| v.scheme()).collect();
        let classes = distinct_classes(&schemes);
        ensure(classes.len() == 7, || format!("{} distinct schemes", classes.len()))?;
        let dup: Vec<&Vec<usize>> = classes.iter().filter(|c| c.len() > 1).collect();
        let twice: Vec<String> = dup.iter().flat_map(|c| c.iter().map(|&i| vs[i].code())).collect();
        ensure(twice == ["tmt", "ttm"], || format!("duplicated: {twice:?}"))?;
        let mut table = Vec::new();
        for k in 1..=7 {
            let want = &fixture(&format!("burgers-lax-{k}"))?[0];
            let codes: Vec<String> = vs
                .iter()
                .filter(|v| scheme_equiv(v.scheme(), want))
                .map(|v| v.code())
                .collect();
            ensure(!codes.is_empty(), || format!("fixture {k} is not generated"))?;
            table.push(format!("{k}={}", codes.join("/")));
        }
        Ok(format!("7 classes; fixtures {}", table.join(" ")))
    }));
    checks.push(timed("lax-wendroff", 10_000, || {
        let lw = lax_wendroff([Rule::Midpoint; 6], opts).map_err(|e| e.to_string())?;
        keep("lax-wendroff", &lw.generated);
        let g = fixture("lax-wendroff")?;
        ensure(scheme_equiv(&lw.predictor, &g[0]), || format!("predictor {}", lw.predictor))?;
        ensure(scheme_equiv(&lw.corrector, &g[1]), || format!("corrector {}", lw.corrector))?;
        Ok(format!("predictor {}; corrector {}", lw.predictor, lw.corrector))
    }));
    checks.push(timed("godunov", 5000, || {
        let mut factors = Vec::new();
        for (i, s) in branch_specs(&schemegen::godunov())
            .map_err(|e| e.to_string())?
            .iter()
            .enumerate()
        {
            let g = generate(s, opts)?;
            keep(&format!("godunov-branch-{i}"), &g);
            factors.push(g.scheme);
        }
        let p = schemegen::godunov_compose(&schemegen::godunov(), opts).map_err(|e| e.to_string())?;
        let g = fixture("godunov")?;
        let want = ProductScheme {
            factors: [g[0].clone(), g[1].clone()],
        };
        ensure(p.equiv(&want), || format!("{p}"))?;
        Ok(p.to_string())
    }));
    checks.push(timed("certificates", 60_000, || {
        let failed: Vec<String> = runs
            .iter()
            .filter_map(|(label, g)| {
                let c = certify(&g.system.equations, &g.basis, &g.system.ranking());
                (!c.passed()).then(|| format!("{label}: {c:?}"))
            })
            .collect();
        ensure(failed.is_empty(), || failed.join("; "))?;
        Ok(format!("{} runs certified", runs.len()))
    }));
    Report {
        suite: "golden".into(),
        checks,
    }
}

fn oracle_configs() -> Vec<(String, EngineOptions)> {
    let mut v = vec![
        ("all criteria".to_string(), EngineOptions::default()),
        ("no criteria".to_string(), EngineOptions::no_criteria()),
    ];
    for c in Criterion::ALL {
        v.push((format!("without {c:?}"), EngineOptions::default().without(c)));
    }
    v
}

/// `count` random systems from `seed` on; every engine configuration against the oracle.
pub fn oracle_suite(count: u64, seed: u64) -> Report {
    let configs = oracle_configs();
    let start = Instant::now();
    let per_system: Vec<Result<Vec<bool>, String>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let sys = random_system(seed.wrapping_add(i));
            let oracle = buchberger_oracle(&sys.equations, &sys.ranking, 10_000_000)
                .map_err(|e| format!("seed {}: oracle {e}", sys.seed))?;
            configs
                .iter()
                .map(|(_, o)| {
                    groebner_basis(&sys.equations, &sys.ranking, o)
                        .map(|r| r.reduced_gb == oracle)
                        .map_err(|e| format!("seed {}: {e}", sys.seed))
                })
                .collect()
        })
        .collect();
    let millis = start.elapsed().as_millis();
    let checks = configs
        .iter()
        .enumerate()
        .map(|(k, (label, _))| {
            let mut bad = Vec::new();
            for (i, r) in per_system.iter().enumerate() {
                match r {
                    Ok(v) if v[k] => {}
                    Ok(_) => bad.push(format!("seed {}", seed.wrapping_add(i as u64))),
                    Err(e) => bad.push(e.clone()),
                }
            }
            Check {
                id: format!("oracle/{label}"),
                passed: bad.is_empty() && millis <= 60_000,
                detail: if bad.is_empty() {
                    format!("{count} systems agree")
                } else {
                    format!("{} mismatches: {}", bad.len(), bad.join(", "))
                },
                millis,
            }
        })
        .collect();
    Report {
        suite: "oracle".into(),
        checks,
    }
}

pub const RIEMANN: (f64, f64) = (0.8, 0.2);
pub const T_END: f64 = 2.0 / 3.0;
pub const CELLS: usize = 200;

/// A named Burgers scheme for the simulation matrix.
pub enum Runnable {
    Linear(Scheme),
    Godunov(ProductScheme),
}

impl Runnable {
    pub fn compile(&self, params: &[(&str, f64)]) -> Result<StencilUpdate<f64>, NumericsError> {
        match self {
            Runnable::Linear(s) => compile_update(s, params),
            Runnable::Godunov(p) => compile_godunov(p, params),
        }
    }
}

/// Canned schemes the `simulate` subcommand accepts: `lax`, `ftfs`, `godunov`, and
/// `lax-<rules>` for any three-letter `m`/`t` rule string.
pub fn runnable(name: &str, opts: &EngineOptions) -> Result<Runnable, schemegen::SchemeError> {
    let linear = |spec: ProblemSpec| generate_with(&spec, opts).map(|g| Runnable::Linear(g.scheme));
    match name {
        "lax" => linear(schemegen::burgers_lax([Rule::Midpoint; 3])),
        "ftfs" => linear(schemegen::burgers_ftfs()),
        "godunov" => schemegen::godunov_compose(&schemegen::godunov(), opts).map(Runnable::Godunov),
        other => match other.strip_prefix("lax-") {
            Some(rules) => linear(schemegen::problem("burgers-lax", Some(rules))?),
            None => Err(schemegen::SchemeError::UnknownProblem(other.to_string())),
        },
    }
}

fn riemann_run(
    scheme: &Runnable,
    courant: f64,
) -> Result<numerics::Solution<f64>, NumericsError> {
    let g = GridConfig::unit(CELLS, courant, T_END);
    let u = scheme.compile(&g.params(0.0))?;
    simulate(&u, &RiemannIC::new(RIEMANN.0, RIEMANN.1), &g)
}

/// The Riemann-problem matrix at both Courant numbers.
pub fn numerics_suite(opts: &EngineOptions) -> Report {
    let mut checks = Vec::new();
    let setup = || -> Result<(Vec<(String, Runnable)>, Runnable), String> {
        let vs = burgers_variants(opts).map_err(|e| e.to_string())?;
        let schemes: Vec<&Scheme> = vs.iter().map(|v| v.scheme()).collect();
        let mut named = vec![("lax".to_string(), Runnable::Linear(vs[0].scheme().clone()))];
        for class in distinct_classes(&schemes) {
            let codes: Vec<String> = class.iter().map(|&i| vs[i].code()).collect();
            named.push((
                format!("variant {}", codes.join("/")),
                Runnable::Linear(vs[class[0]].scheme().clone()),
            ));
        }
        let god = schemegen::godunov_compose(&schemegen::godunov(), opts).map_err(|e| e.to_string())?;
        named.push(("godunov".into(), Runnable::Godunov(god)));
        let ftfs = generate(&schemegen::burgers_ftfs(), opts)?;
        Ok((named, Runnable::Linear(ftfs.scheme)))
    };
    let (named, ftfs) = match setup() {
        Ok(x) => x,
        Err(e) => {
            checks.push(Check {
                id: "setup".into(),
                passed: false,
                detail: e,
                millis: 0,
            });
            return Report {
                suite: "numerics".into(),
                checks,
            };
        }
    };
    for courant in [0.9, 0.1] {
        let results: Vec<(String, Check, Option<numerics::Metrics<f64>>)> = named
            .par_iter()
            .map(|(name, s)| {
                let mut metrics = None;
                let check = timed(&format!("stable/C={courant}/{name}"), 5000, || {
                    let sol = riemann_run(s, courant).map_err(|e| e.to_string())?;
                    let m = sol.metrics;
                    metrics = Some(m.clone());
                    ensure(m.max_abs <= 1.0, || format!("max|u| = {}", m.max_abs))?;
                    Ok(format!(
                        "max|u| = {:.4}, L1 = {:.5}, shock at {:.4}",
                        m.max_abs, m.l1, m.shock_pos
                    ))
                });
                (name.clone(), check, metrics)
            })
            .collect();
        let metric = |n: &str| {
            results
                .iter()
                .find(|(name, _, _)| name == n)
                .and_then(|(_, _, m)| m.clone())
        };
        let (god, lax) = (metric("godunov"), metric("lax"));
        checks.extend(results.into_iter().map(|(_, c, _)| c));
        checks.push(timed(&format!("shock/C={courant}"), 5000, || {
            let (Some(god), Some(lax)) = (god, lax) else {
                return Err("godunov or lax run failed".into());
            };
            let h = 1.0 / CELLS as f64;
            let exact = 0.5 + (RIEMANN.0 + RIEMANN.1) / 2.0 * T_END;
            let off = (god.shock_pos - exact).abs();
            ensure(off <= 2.0 * h, || format!("shock off by {off:.5}"))?;
            ensure(god.l1 < lax.l1, || format!("L1 {} >= lax {}", god.l1, lax.l1))?;
            Ok(format!(
                "shock at {:.5} (exact {exact:.5}), L1 {:.5} < lax {:.5}",
                god.shock_pos, god.l1, lax.l1
            ))
        }));
        checks.push(timed(&format!("blow-up/C={courant}/ftfs"), 5000, || {
            let mut g = GridConfig::unit(CELLS, courant, T_END);
            g.t_end = 1e4 * courant * g.h();
            let u = ftfs.compile(&g.params(0.0)).map_err(|e| e.to_string())?;
            match simulate(&u, &RiemannIC::new(RIEMANN.0, RIEMANN.1), &g) {
                Err(NumericsError::BlowUp { step, .. }) if step <= 10_000 => {
                    Ok(format!("non-finite at step {step}"))
                }
                Ok(s) if s.metrics.max_abs > 1e3 => Ok(format!("max|u| = {:e}", s.metrics.max_abs)),
                Ok(s) => Err(format!("stayed bounded, max|u| = {}", s.metrics.max_abs)),
                Err(e) => Err(e.to_string()),
            }
        }));
    }
    Report {
        suite: "numerics".into(),
        checks,
    }
}

fn random_param_poly(rng: &mut ChaCha8Rng) -> ParamPoly {
    let names = ["h", "tau", "nu"];
    ParamPoly::from_terms((0..rng.gen_range(1..4)).map(|_| {
        let m = ParamMonomial::from_factors(
            names
                .iter()
                .map(|n| (Param::new(n), rng.gen_range(0..3)))
                .collect(),
        );
        (m, Rational::from_integer(rng.gen_range(-3i64..=3).into()))
    }))
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Coeff {
    let n = random_param_poly(rng);
    let d = random_param_poly(rng);
    if d.is_zero() {
        Coeff::from_poly(n)
    } else {
        Coeff::new(n, d).expect("nonzero denominator")
    }
}

fn random_monomial(rng: &mut ChaCha8Rng, indets: usize, shifts: usize) -> ShiftMonomial {
    let mu: Vec<u32> = (0..shifts).map(|_| rng.gen_range(0..4)).collect();
    ShiftMonomial::new(IndetId(rng.gen_range(0..indets) as u16), &mu)
}

fn random_poly(rng: &mut ChaCha8Rng, indets: usize, shifts: usize) -> QPoly {
    QPoly::from_terms((0..rng.gen_range(1..5)).map(|_| {
        (
            random_monomial(rng, indets, shifts),
            Rational::from_integer(rng.gen_range(-4i64..=4).into()),
        )
    }))
}

fn field_axioms(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = 200;
    for i in 0..cases {
        let (a, b, c) = (random_coeff(&mut rng), random_coeff(&mut rng), random_coeff(&mut rng));
        let add = |x: &Coeff, y: &Coeff| x.clone() + y;
        let mul = |x: &Coeff, y: &Coeff| x.clone() * y;
        let ok = add(&add(&a, &b), &c) == add(&a, &add(&b, &c))
            && mul(&mul(&a, &b), &c) == mul(&a, &mul(&b, &c))
            && mul(&a, &add(&b, &c)) == add(&mul(&a, &b), &mul(&a, &c))
            && add(&a, &b) == add(&b, &a)
            && mul(&a, &b) == mul(&b, &a)
            && (a.clone() - &a).is_zero()
            && mul(&a, &Coeff::one()) == a
            && (a.is_zero() || mul(&a, &a.inverse().expect("nonzero")).is_one());
        ensure(ok, || format!("case {i}: a = {a}, b = {b}, c = {c}"))?;
    }
    Ok(format!("{cases} triples"))
}

fn ranking_axioms(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = 0;
    for s in 0..40 {
        let r = random_system(seed.wrapping_add(s)).ranking;
        let (m, n) = (r.num_indets(), r.num_shifts());
        for _ in 0..50 {
            let (a, b, c) = (
                random_monomial(&mut rng, m, n),
                random_monomial(&mut rng, m, n),
                random_monomial(&mut rng, m, n),
            );
            let theta: Vec<u32> = (0..n).map(|_| rng.gen_range(0..3)).collect();
            let shift = |x: &ShiftMonomial| {
                let mu: Vec<u32> = x.mu.iter().zip(&theta).map(|(a, b)| a + b).collect();
                ShiftMonomial::new(x.indet, &mu)
            };
            use std::cmp::Ordering::*;
            let ok = r.cmp(&a, &b) == r.cmp(&b, &a).reverse()
                && (r.cmp(&a, &b) != Equal || a == b)
                && !(r.cmp(&a, &b) == Less && r.cmp(&b, &c) == Less && r.cmp(&a, &c) != Less)
                && r.cmp(&a, &shift(&a)) != Greater
                && r.cmp(&shift(&a), &shift(&b)) == r.cmp(&a, &b);
            ensure(ok, || format!("ranking {s}: {a:?}, {b:?}, {c:?}, θ = {theta:?}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} monomial triples over 40 rankings"))
}

fn nf_properties(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut unique = 0;
    for s in 0..30 {
        let sys = random_system(seed.wrapping_add(1000 + s));
        let r = &sys.ranking;
        let res = groebner_basis(&sys.equations, r, &EngineOptions::default()).map_err(|e| e.to_string())?;
        let gb = &res.reduced_gb;
        let (m, n) = (r.num_indets(), r.num_shifts());
        for _ in 0..5 {
            let p = random_poly(&mut rng, m, n);
            let q = random_poly(&mut rng, m, n);
            let c = Rational::from_integer(rng.gen_range(-3i64..=3).into());
            let np = normal_form(&p, gb, r);
            let nq = normal_form(&q, gb, r);
            ensure(normal_form(&np, gb, r) == np, || format!("system {s}: NF not idempotent"))?;
            ensure(
                normal_form(&p.add(&q.scale(&c)), gb, r) == np.add(&nq.scale(&c)),
                || format!("system {s}: NF not linear"),
            )?;
        }
        let cert = certify(&sys.equations, &res, r);
        ensure(cert.unique_reductors, || format!("system {s}: several Janet reductors"))?;
        unique += 1;
    }
    Ok(format!("30 systems, 150 polynomial pairs; {unique} with unique reductors"))
}

fn conservation(seed: u64, opts: &EngineOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = 64;
    let data: Vec<f64> = (0..cells).map(|_| rng.gen_range(0.1..0.9)).collect();
    let g = GridConfig {
        boundary: Boundary::Periodic,
        ..GridConfig::unit(cells, 0.5, 0.25)
    };
    let mut worst = Vec::new();
    for name in ["lax", "ftfs", "godunov"] {
        let s = runnable(name, opts).map_err(|e| e.to_string())?;
        let u = s.compile(&g.params(0.0)).map_err(|e| e.to_string())?;
        for init in [data.clone(), vec![0.5; cells]] {
            let r = numerics::conservation_check(&u, &g, &init).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("{name}: drift {} > {}", r.max_drift, r.bound))?;
        }
        let r = numerics::conservation_check(&u, &g, &data).map_err(|e| e.to_string())?;
        worst.push(format!("{name} {:.1e}", r.max_drift));
    }
    Ok(format!("max drift {}", worst.join(", ")))
}

fn quadratic_consistency(opts: &EngineOptions) -> Result<String, String> {
    let hs = [0.1, 0.05, 0.025];
    let laplace = generate(&schemegen::laplace(Rule::Midpoint), opts)?.scheme;
    let setup = ConsistencySetup {
        ratios: vec![1.0, 1.0],
        base: vec![0.3, 0.2],
        params: Box::new(|h| vec![("h".into(), h)]),
        fields: vec![("u".into(), Box::new(|p: &[f64]| p[0] * p[0] - p[1] * p[1]))],
        unit: vec![("u".into(), Box::new(|p: &[f64]| p[0] * p[0] / 2.0))],
    };
    let r = numerics::consistency_order(&laplace, &setup, &hs).map_err(|e| e.to_string())?;
    ensure(r.exact, || format!("laplace residuals {:?}", r.residuals))?;
    let wave = generate(&schemegen::wave(Rule::Trapezoid), opts)?.scheme;
    let setup = ConsistencySetup {
        ratios: vec![1.0, 1.0],
        base: vec![0.4, 0.1],
        params: Box::new(|h| vec![("h".into(), h)]),
        fields: vec![("u".into(), Box::new(|p: &[f64]| (p[0] + p[1]).powi(2)))],
        unit: vec![("u".into(), Box::new(|p: &[f64]| p[1] * p[1] / 2.0))],
    };
    let r = numerics::consistency_order(&wave, &setup, &hs).map_err(|e| e.to_string())?;
    ensure(r.exact, || format!("wave residuals {:?}", r.residuals))?;
    Ok("laplace on x²−y² and wave on (x+t)² are exact".into())
}

/// Seeded property checks over the algebra, the rankings, normal forms and the numerics.
pub fn property_suite(seed: u64, opts: &EngineOptions) -> Report {
    let checks = vec![
        timed("field-axioms", 60_000, || field_axioms(seed)),
        timed("ranking-axioms", 60_000, || ranking_axioms(seed)),
        timed("normal-forms", 60_000, || nf_properties(seed)),
        timed("conservation", 60_000, || conservation(seed, opts)),
        timed("consistency", 60_000, || quadratic_consistency(opts)),
    ];
    Report {
        suite: "properties".into(),
        checks,
    }
}

/// Outcome of one numbered acceptance criterion, folded from the checks that back it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub number: u32,
    pub passed: bool,
    pub checks: usize,
    pub failed: Vec<String>,
    /// Slowest backing check.
    pub millis: u128,
}

const GOLDEN_CRITERIA: &[(u32, &[&str])] = &[
    (1, &["laplace"]),
    (2, &["heat", "wave", "advection"]),
    (3, &["burgers"]),
    (4, &["lax-wendroff"]),
    (5, &["godunov"]),
    (7, &["certificates"]),
];

/// Numbered criteria covered by the given reports, in order.
pub fn criteria(reports: &[Report]) -> Vec<CriterionResult> {
    let mut groups: Vec<(u32, Vec<&Check>)> = Vec::new();
    for r in reports {
        match r.suite.as_str() {
            "golden" => {
                for (n, ids) in GOLDEN_CRITERIA {
                    groups.push((*n, ids.iter().filter_map(|id| r.get(id)).collect()));
                }
            }
            "oracle" => groups.push((6, r.checks.iter().collect())),
            "numerics" => groups.push((8, r.checks.iter().collect())),
            "properties" => groups.push((9, r.checks.iter().collect())),
            _ => {}
        }
    }
    groups.sort_by_key(|(n, _)| *n);
    groups
        .into_iter()
        .map(|(number, checks)| CriterionResult {
            number,
            passed: !checks.is_empty() && checks.iter().all(|c| c.passed),
            checks: checks.len(),
            failed: checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| format!("{}: {}", c.id, c.detail))
                .collect(),
            millis: checks.iter().map(|c| c.millis).max().unwrap_or(0),
        })
        .collect()
}
