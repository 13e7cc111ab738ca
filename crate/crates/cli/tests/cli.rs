use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_diffscheme"));
    c.env_remove("DIFFSCHEME_BUDGET").env_remove("DIFFSCHEME_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn systems() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../systems")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn without_timestamp(path: &Path) -> Value {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("timestamp");
    v
}

#[test]
fn gb_writes_basis_files_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let input = systems().join("laplace.dps");
    let out = dir.path().to_str().unwrap();
    let o = run(&["gb", input.to_str().unwrap(), "--out-dir", out, "--oracle"]);
    assert!(o.status.success(), "{o:?}");
    assert!(stdout(&o).contains("oracle: agrees"));
    let gb = std::fs::read_to_string(dir.path().join("laplace.gb.dps")).unwrap();
    assert_eq!(gb.matches("eq:").count(), 5);
    assert!(gb.contains("eq: Sx^4*Sy^2(u) + Sx^2*Sy^4(u) - 4*Sx^2*Sy^2(u) + Sx^2(u) + Sy^2(u);"));
    let basis: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("laplace.basis.json")).unwrap()).unwrap();
    assert_eq!(basis["reduced_gb"].as_array().unwrap().len(), 5);
    assert!(basis["janet_like"][0]["difference_powers"].is_array());

    let manifest = dir.path().join("laplace.manifest.json");
    let first = without_timestamp(&manifest);
    assert_eq!(first["subcommand"], "gb");
    assert_eq!(first["outputs"].as_array().unwrap().len(), 3);
    assert_eq!(first["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    let o = run(&["gb", input.to_str().unwrap(), "--out-dir", out, "--oracle"]);
    assert!(o.status.success());
    assert_eq!(without_timestamp(&manifest), first);
}

#[test]
fn gb_parses_the_reduced_basis_it_writes() {
    let dir = tempfile::tempdir().unwrap();
    let input = systems().join("heat.dps");
    let out = dir.path().to_str().unwrap();
    assert!(run(&["gb", input.to_str().unwrap(), "--out-dir", out]).status.success());
    let gb = dir.path().join("heat.gb.dps");
    let o = run(&["--format", "json", "gb", gb.to_str().unwrap(), "--out-dir", out]);
    assert!(o.status.success(), "{o:?}");
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let again: Vec<&str> = v["basis"]["reduced_gb"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.as_str().unwrap())
        .collect();
    let text = std::fs::read_to_string(&gb).unwrap();
    for p in &again {
        assert!(text.contains(p), "{p} missing from {text}");
    }
}

#[test]
fn gb_on_an_empty_system_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "empty.dps", "shifts Sx;\nindets u;\nranking lex;\n");
    let o = run(&["--format", "json", "gb", p.to_str().unwrap()]);
    assert!(o.status.success(), "{o:?}");
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["basis"]["reduced_gb"], Value::Array(vec![]));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let nl = write(dir.path(), "nl.dps", "shifts Sx;\nindets u;\nranking lex;\neq: u*Sx(u);\n");
    let o = run(&["gb", nl.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nonlinear"));

    let lw = systems().join("lax-wendroff.dps");
    let out = dir.path().to_str().unwrap();
    let o = run(&["--budget", "10", "gb", lw.to_str().unwrap(), "--out-dir", out]);
    assert_eq!(o.status.code(), Some(3));
    let o = bin()
        .env("DIFFSCHEME_BUDGET", "3")
        .args(["scheme", "--problem", "laplace"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));

    assert_eq!(run(&["scheme", "--problem", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["scheme", "--problem", "burgers-lax", "--rules", "mx"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["gb", "/nonexistent/x.dps"]).status.code(), Some(1));
}

#[test]
fn scheme_list_and_display() {
    let o = run(&["scheme", "--list"]);
    let names: Vec<&str> = std::str::from_utf8(&o.stdout).unwrap().lines().collect();
    assert_eq!(
        names,
        ["laplace", "heat", "wave", "advection", "burgers-ftfs", "burgers-lax", "lax-wendroff", "godunov"]
    );
    let o = run(&["--format", "json", "scheme", "--problem", "wave"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["scheme"], "Sx^2*St(u) - Sx*St^2(u) - Sx(u) + St(u)");
    assert_eq!(v["runs"].as_array().unwrap().len(), 1);
}

#[test]
fn scheme_composes_factored_problems() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["scheme", "--problem", "godunov", "--out-dir", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{o:?}");
    let first = stdout(&o).lines().next().unwrap().to_string();
    assert!(first.starts_with('(') && first.contains(") * ("), "{first}");
    for f in ["godunov.branch0.system.dps", "godunov.branch1.basis.json", "godunov.scheme.txt"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let m = without_timestamp(&dir.path().join("godunov.manifest.json"));
    assert_eq!(m["inputs"].as_array().unwrap().len(), 2);
}

#[test]
fn simulate_writes_deterministic_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("g.csv");
    let args = ["simulate", "--scheme", "godunov", "--out", csv.to_str().unwrap()];
    assert!(run(&args).status.success());
    let a = std::fs::read(&csv).unwrap();
    assert!(run(&args).status.success());
    assert_eq!(std::fs::read(&csv).unwrap(), a);

    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,u_numeric,u_exact"));
    assert_eq!(lines.count(), 200);
    let metrics = std::fs::read_to_string(dir.path().join("g.csv.metrics")).unwrap();
    let mut m = metrics.lines();
    assert_eq!(m.next(), Some("l1,linf,shock_pos,max_abs,width,steps"));
    let row: Vec<f64> = m.next().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    assert!((row[2] - 5.0 / 6.0).abs() <= 2.0 / 200.0, "{row:?}");
    assert!(row[3] <= 1.0);
    assert!(dir.path().join("g.csv.manifest.json").exists());
}

#[test]
fn simulate_reports_blow_up_and_accepts_scheme_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t.csv");
    let o = run(&["simulate", "--scheme", "lax-ttt", "--out", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("blew up"));
    assert!(!csv.exists());

    let scheme = write(
        dir.path(),
        "upwind.dps",
        "params h tau;\nshifts St Sx;\nindets u > f;\nranking lex;\n\
         eq: h*St*Sx(u) - h*Sx(u) + tau*Sx(f) - tau*f;\n",
    );
    let csv = dir.path().join("u.csv");
    let o = run(&[
        "--format",
        "json",
        "simulate",
        "--scheme",
        scheme.to_str().unwrap(),
        "--courant",
        "0.5",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{o:?}");
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["max_abs"].as_f64().unwrap() <= 1.0);
}

#[test]
fn verify_oracle_is_reproducible() {
    let args = ["--format", "json", "verify", "oracle", "--count", "8", "--seed", "11"];
    let strip = |o: Output| {
        assert!(o.status.success(), "{o:?}");
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        for r in v["reports"].as_array_mut().unwrap() {
            for c in r["checks"].as_array_mut().unwrap() {
                c.as_object_mut().unwrap().remove("millis");
            }
        }
        v["criteria"][0].as_object_mut().unwrap().remove("millis");
        v
    };
    let a = strip(run(&args));
    let b = strip(bin().env("DIFFSCHEME_THREADS", "1").args(args).output().unwrap());
    assert_eq!(a, b);
    assert_eq!(a["criteria"][0]["number"], 6);
    assert_eq!(a["passed"], true);
}

#[test]
fn verify_golden_passes() {
    let o = run(&["verify", "golden"]);
    assert!(o.status.success(), "{o:?}");
    let text = stdout(&o);
    for n in [1, 2, 3, 4, 5, 7] {
        assert!(text.contains(&format!("criterion {n}: PASS")), "{text}");
    }
}
