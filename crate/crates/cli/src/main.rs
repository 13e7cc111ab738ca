//! `diffscheme`: Gröbner bases of difference systems, scheme generation, Burgers runs and
//! self-verification.
//!
//! Exit codes: 0 success, 1 runtime failure (I/O, unstable run, failed verification),
//! 2 usage or parse error, 3 reduction budget exceeded.

mod artifact;
mod dump;

/// `println!` that reports write errors instead of panicking.
macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        writeln!(std::io::stdout().lock(), $($t)*)?
    }};
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use diffscheme::engine::{buchberger_oracle, groebner_basis, Criterion, EngineError, EngineOptions};
use diffscheme::numerics::{simulate, GridConfig, Metrics, NumericsError, RiemannIC};
use diffscheme::parser::{parse_system, print_system, ParseError, RankingSpec};
use diffscheme::schemegen::{
    self, branch_specs, generate_with, godunov_compose, Equation, Scheme, SchemeError, PROBLEMS,
};
use diffscheme::verify::{self, Report, Runnable};

use artifact::RunManifest;
use dump::{basis_dump, listing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "diffscheme", version, about = "Difference Gröbner bases and finite-difference schemes")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Maximum number of elementary reductions per basis computation.
    #[arg(long, global = true, env = "DIFFSCHEME_BUDGET")]
    budget: Option<u64>,
    /// Worker threads for parallel suites.
    #[arg(long, global = true, env = "DIFFSCHEME_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Janet-like and reduced Gröbner bases of a `.dps` system.
    Gb(GbArgs),
    /// Generate a finite-difference scheme for a canned problem.
    Scheme(SchemeArgs),
    /// Run a Burgers scheme on a Riemann problem and write a CSV.
    Simulate(SimulateArgs),
    /// Run the built-in verification suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GbArgs {
    input: PathBuf,
    /// Directory for the basis files; defaults to the input's directory.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Override the ranking declared in the file.
    #[arg(long, value_parser = ["lex", "grlex", "orderly"])]
    ranking: Option<String>,
    /// Criteria to switch off, e.g. `--no-criteria 1,3`.
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u8).range(1..=4))]
    no_criteria: Vec<u8>,
    /// Cross-check the reduced basis against a plain Buchberger completion.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct SchemeArgs {
    #[arg(long, required_unless_present = "list")]
    problem: Option<String>,
    /// One `m` (midpoint) or `t` (trapezoid) per integral relation.
    #[arg(long)]
    rules: Option<String>,
    #[arg(long, conflicts_with = "problem")]
    list: bool,
    /// Also write the scheme, the basis files and a manifest here.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// `lax`, `ftfs`, `godunov`, `lax-<rules>`, or a `.dps` file holding one scheme.
    #[arg(long)]
    scheme: String,
    #[arg(long, default_value_t = 200)]
    cells: usize,
    #[arg(long, default_value_t = 0.9)]
    courant: f64,
    #[arg(long, default_value_t = verify::T_END)]
    t_end: f64,
    #[arg(long, default_value_t = verify::RIEMANN.0)]
    u_left: f64,
    #[arg(long, default_value_t = verify::RIEMANN.1)]
    u_right: f64,
    #[arg(long, default_value_t = 0.0)]
    nu: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Golden,
    Oracle,
    Numerics,
    Properties,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Random systems in the oracle suite.
    #[arg(long, default_value_t = 100)]
    count: u64,
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let error = e.into();
        let code = classify(&error);
        Failure { code, error }
    }
}

fn classify(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause
            .downcast_ref::<std::io::Error>()
            .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
        {
            return 0;
        }
        if cause.is::<ParseError>() {
            return 2;
        }
        if let Some(EngineError::BudgetExceeded { .. }) = cause.downcast_ref::<EngineError>() {
            return 3;
        }
        match cause.downcast_ref::<SchemeError>() {
            Some(SchemeError::Parse(_) | SchemeError::UnknownProblem(_) | SchemeError::BadRules(_)) => return 2,
            Some(SchemeError::Engine(EngineError::BudgetExceeded { .. })) => return 3,
            _ => {}
        }
    }
    1
}

type Outcome = Result<ExitCode, Failure>;

fn engine_options(cli: &Cli) -> EngineOptions {
    let mut o = EngineOptions::default();
    if let Some(b) = cli.budget {
        o.budget = b;
    }
    o
}

fn print_json(v: &impl Serialize) -> anyhow::Result<()> {
    outln!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "system".into())
}

fn cmd_gb(cli: &Cli, a: &GbArgs) -> Outcome {
    let text = std::fs::read_to_string(&a.input)
        .with_context(|| format!("reading {}", a.input.display()))?;
    let mut src = parse_system(&text).with_context(|| a.input.display().to_string())?;
    if let Some(k) = &a.ranking {
        src.ranking = RankingSpec::from_keyword(k).expect("validated by clap");
    }
    let r = src.ranking();
    let mut opts = engine_options(cli);
    for &c in &a.no_criteria {
        opts = opts.without(Criterion::ALL[c as usize - 1]);
    }
    let res = groebner_basis(&src.equations, &r, &opts)?;
    let oracle_agrees = if a.oracle {
        Some(buchberger_oracle(&src.equations, &r, opts.budget)? == res.reduced_gb)
    } else {
        None
    };

    let dir = a
        .out_dir
        .clone()
        .or_else(|| a.input.parent().map(Path::to_path_buf))
        .unwrap_or_default();
    let base = stem(&a.input);
    let dump = basis_dump(&res, &src, &r);
    let files = vec![
        (
            dir.join(format!("{base}.janet.dps")),
            listing(&src, res.janet_like.iter().map(|e| e.pol.clone())).into_bytes(),
        ),
        (
            dir.join(format!("{base}.gb.dps")),
            listing(&src, res.reduced_gb.iter().cloned()).into_bytes(),
        ),
        (dir.join(format!("{base}.basis.json")), serde_json::to_vec_pretty(&dump)?),
    ];
    let mut m = RunManifest::new("gb");
    m.input(a.input.display().to_string(), text.as_bytes())
        .flag("ranking", src.ranking)
        .flag("criteria", format!("{:?}", opts.criteria))
        .flag("budget", opts.budget)
        .flag("oracle", a.oracle);
    m.engine_stats = Some(res.stats.clone());
    m.write(&files, &dir.join(format!("{base}.manifest.json")))?;

    match cli.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                basis: &'a dump::BasisDump,
                oracle_agrees: Option<bool>,
                files: Vec<String>,
            }
            print_json(&Out {
                basis: &dump,
                oracle_agrees,
                files: files.iter().map(|(p, _)| p.display().to_string()).collect(),
            })?;
        }
        Format::Text => {
            outln!(
                "{} janet-like, {} reduced ({} head reductions, {} prolongations)",
                res.janet_like.len(),
                res.reduced_gb.len(),
                res.stats.head_reductions,
                res.stats.prolongations
            );
            for p in &dump.reduced_gb {
                outln!("  {p}");
            }
            if let Some(ok) = oracle_agrees {
                outln!("oracle: {}", if ok { "agrees" } else { "DIFFERS" });
            }
            for (p, _) in &files {
                outln!("wrote {}", p.display());
            }
        }
    }
    match oracle_agrees {
        Some(false) => Ok(ExitCode::FAILURE),
        _ => Ok(ExitCode::SUCCESS),
    }
}

fn cmd_scheme(cli: &Cli, a: &SchemeArgs) -> Outcome {
    if a.list {
        match cli.format {
            Format::Json => print_json(&PROBLEMS)?,
            Format::Text => {
                for name in PROBLEMS {
                    outln!("{name}");
                }
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    let name = a.problem.as_deref().expect("required unless --list");
    let spec = schemegen::problem(name, a.rules.as_deref())?;
    let opts = engine_options(cli);
    let factored = spec.equations.iter().any(|e| matches!(e, Equation::Factored(..)));
    // One generated run per branch for factored problems, otherwise a single run.
    let (display, runs) = if factored {
        let product = godunov_compose(&spec, &opts)?;
        let mut runs = Vec::new();
        for (i, s) in branch_specs(&spec)?.iter().enumerate() {
            runs.push((format!("{}.branch{i}", spec.name), generate_with(s, &opts)?));
        }
        (product.to_string(), runs)
    } else {
        let g = generate_with(&spec, &opts)?;
        (g.scheme.display(), vec![(spec.name.clone(), g)])
    };
    let dumps: Vec<(&str, dump::BasisDump)> = runs
        .iter()
        .map(|(label, g)| (label.as_str(), basis_dump(&g.basis, &g.system, &g.system.ranking())))
        .collect();
    match cli.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Run<'a> {
                label: &'a str,
                basis: &'a dump::BasisDump,
            }
            #[derive(Serialize)]
            struct Out<'a> {
                problem: &'a str,
                scheme: &'a str,
                runs: Vec<Run<'a>>,
            }
            print_json(&Out {
                problem: &spec.name,
                scheme: &display,
                runs: dumps.iter().map(|(label, basis)| Run { label, basis }).collect(),
            })?;
        }
        Format::Text => {
            outln!("{display}");
            for (label, d) in &dumps {
                outln!("# {label}: reduced basis ({} elements)", d.reduced_gb.len());
                for p in &d.reduced_gb {
                    outln!("#   {p}");
                }
            }
        }
    }
    if let Some(dir) = &a.out_dir {
        let mut m = RunManifest::new("scheme");
        let mut files = Vec::new();
        for ((label, g), (_, d)) in runs.iter().zip(&dumps) {
            let system = print_system(&g.system);
            m.input(format!("problem:{label}"), system.as_bytes());
            files.push((dir.join(format!("{label}.system.dps")), system.into_bytes()));
            files.push((dir.join(format!("{label}.basis.json")), serde_json::to_vec_pretty(d)?));
        }
        files.push((dir.join(format!("{}.scheme.txt", spec.name)), format!("{display}\n").into_bytes()));
        m.flag("problem", name)
            .flag("rules", a.rules.as_deref().unwrap_or("-"))
            .flag("budget", opts.budget);
        if let [(_, g)] = runs.as_slice() {
            m.engine_stats = Some(g.basis.stats.clone());
        }
        m.write(&files, &dir.join(format!("{}.manifest.json", spec.name)))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn load_runnable(cli: &Cli, name: &str) -> anyhow::Result<(Runnable, Vec<u8>)> {
    if name.ends_with(".dps") {
        let text = std::fs::read_to_string(name).with_context(|| format!("reading {name}"))?;
        let src = parse_system(&text).with_context(|| name.to_string())?;
        let [eq] = src.equations.as_slice() else {
            bail!("{name}: expected exactly one equation, found {}", src.equations.len());
        };
        let s = Scheme::new(eq.clone(), src.names(), src.ranking());
        return Ok((Runnable::Linear(s), text.into_bytes()));
    }
    let r = verify::runnable(name, &engine_options(cli))?;
    let canonical = match &r {
        Runnable::Linear(s) => s.display(),
        Runnable::Godunov(p) => p.to_string(),
    };
    Ok((r, canonical.into_bytes()))
}

#[derive(Serialize)]
struct MetricsOut {
    l1: f64,
    linf: f64,
    shock_pos: f64,
    max_abs: f64,
    width: usize,
    steps: usize,
}

impl From<&Metrics<f64>> for MetricsOut {
    fn from(m: &Metrics<f64>) -> Self {
        MetricsOut {
            l1: m.l1,
            linf: m.linf,
            shock_pos: m.shock_pos,
            max_abs: m.max_abs,
            width: m.width,
            steps: m.steps,
        }
    }
}

fn cmd_simulate(cli: &Cli, a: &SimulateArgs) -> Outcome {
    let (scheme, canonical) = load_runnable(cli, &a.scheme)?;
    let g = GridConfig::unit(a.cells, a.courant, a.t_end);
    g.validate().map_err(|e| Failure {
        code: 2,
        error: anyhow!(e),
    })?;
    let update = scheme.compile(&g.params(a.nu))?;
    let sol = match simulate(&update, &RiemannIC::new(a.u_left, a.u_right), &g) {
        Err(NumericsError::BlowUp { step, max_abs }) => {
            eprintln!("error: solution blew up at step {step} (max|u| before: {max_abs:e})");
            return Ok(ExitCode::FAILURE);
        }
        other => other?,
    };

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["x", "u_numeric", "u_exact"])?;
    for ((x, u), e) in sol.x.iter().zip(&sol.u).zip(&sol.exact) {
        w.serialize((x, u, e))?;
    }
    let table = w.into_inner().map_err(|e| anyhow!(e.to_string()))?;
    let metrics = MetricsOut::from(&sol.metrics);
    let mut mw = csv::Writer::from_writer(Vec::new());
    mw.serialize(&metrics)?;
    let metrics_csv = mw.into_inner().map_err(|e| anyhow!(e.to_string()))?;

    let metrics_path = PathBuf::from(format!("{}.metrics", a.out.display()));
    let files = vec![(a.out.clone(), table), (metrics_path, metrics_csv)];
    let mut m = RunManifest::new("simulate");
    m.input(a.scheme.clone(), &canonical)
        .flag("cells", a.cells)
        .flag("courant", a.courant)
        .flag("t_end", a.t_end)
        .flag("u_left", a.u_left)
        .flag("u_right", a.u_right)
        .flag("nu", a.nu);
    m.write(&files, &PathBuf::from(format!("{}.manifest.json", a.out.display())))?;

    match cli.format {
        Format::Json => print_json(&metrics)?,
        Format::Text => outln!(
            "L1 = {:e}, Linf = {:e}, shock_pos = {}, max_abs = {}, steps = {}",
            metrics.l1, metrics.linf, metrics.shock_pos, metrics.max_abs, metrics.steps
        ),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs) -> Outcome {
    let opts = engine_options(cli);
    let want = |s: Suite| a.suite == s || a.suite == Suite::All;
    let mut reports: Vec<Report> = Vec::new();
    if want(Suite::Golden) {
        reports.push(verify::golden_suite(&opts));
    }
    if want(Suite::Oracle) {
        reports.push(verify::oracle_suite(a.count, a.seed));
    }
    if want(Suite::Numerics) {
        reports.push(verify::numerics_suite(&opts));
    }
    if want(Suite::Properties) {
        reports.push(verify::property_suite(a.seed, &opts));
    }
    let criteria = verify::criteria(&reports);
    let passed = reports.iter().all(Report::passed);
    match cli.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                passed: bool,
                criteria: &'a [verify::CriterionResult],
                reports: &'a [Report],
            }
            print_json(&Out {
                passed,
                criteria: &criteria,
                reports: &reports,
            })?;
        }
        Format::Text => {
            for r in &reports {
                for c in &r.checks {
                    let mark = if c.passed { "PASS" } else { "FAIL" };
                    outln!("{mark} {}/{} ({} ms): {}", r.suite, c.id, c.millis, c.detail);
                }
            }
            for c in &criteria {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                outln!("criterion {}: {mark}", c.number);
            }
        }
    }
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn run(cli: &Cli) -> Outcome {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    match &cli.command {
        Command::Gb(a) => cmd_gb(cli, a),
        Command::Scheme(a) => cmd_scheme(cli, a),
        Command::Simulate(a) => cmd_simulate(cli, a),
        Command::Verify(a) => cmd_verify(cli, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure { code: 0, .. }) => ExitCode::SUCCESS,
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
