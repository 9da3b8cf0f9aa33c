use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn lfqas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lfqas")).args(args).env_remove("LFQAS_SEED").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn term_lines(text: &str) -> usize {
    text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')).count()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

/// Small search and training settings so pipelines finish in seconds.
const QUICK: &[&str] =
    &["--samples", "200", "--l-min", "2", "--l-max", "3", "--restarts", "4", "--max-iters", "60"];

#[test]
fn hamiltonian_command_writes_benchmarks() {
    let o = lfqas(&["hamiltonian", "--kind", "ising", "--n", "6"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(term_lines(&stdout(&o)), 11);

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("cluster.txt");
    let o = lfqas(&["hamiltonian", "--kind", "cluster", "--n", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(term_lines(&text), 3);
    assert!(text.contains("-1.0 XZI") && text.contains("-1.0 ZXZ") && text.contains("-1.0 IZX"), "{text}");

    let o = lfqas(&["hamiltonian", "--kind", "scrambled", "--n", "6"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--seed"));
    let o = lfqas(&["hamiltonian", "--kind", "scrambled", "--n", "6", "--seed", "4"]);
    assert_eq!(code(&o), 0);
    assert!((300..=800).contains(&term_lines(&stdout(&o))));
    assert_eq!(code(&lfqas(&["hamiltonian", "--kind", "ising", "--n", "1"])), 2);
}

#[test]
fn score_command_on_toy_inputs() {
    let dir = TempDir::new().unwrap();
    let ham = write(&dir, "h.txt", "-1.0 Z\n");
    let ry = write(&dir, "ry.json", r#"{"n_qubits": 1, "layers": [{"label": "ry", "gates": [{"kind": "ry", "qubits": [0], "param": 0}]}]}"#);
    let rz = write(&dir, "rz.json", r#"{"n_qubits": 1, "layers": [{"label": "rz", "gates": [{"kind": "rz", "qubits": [0], "param": 0}]}]}"#);

    let o = lfqas(&["score", "--circuit", &ry, "--hamiltonian", &ham, "--samples", "1000", "--seed", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let (rf, se) = (v["rf"].as_f64().unwrap(), v["stderr"].as_f64().unwrap());
    assert!((rf - 1.0).abs() <= 3.0 * se, "{v}");
    for key in ["sigma", "sigma0", "n_samples", "seed"] {
        assert!(v.get(key).is_some());
    }

    let o = lfqas(&["score", "--circuit", &rz, "--hamiltonian", &ham]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rf"].as_f64().unwrap(), 0.0);

    let missing = dir.path().join("nope.json");
    let o = lfqas(&["score", "--circuit", missing.to_str().unwrap(), "--hamiltonian", &ham]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("nope.json"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&lfqas(&["score", "--bogus"])), 2);
    assert_eq!(code(&lfqas(&["frobnicate"])), 2);
    assert_eq!(code(&lfqas(&["oracle-check", "--n-trials", "0"])), 2);
    assert_eq!(code(&lfqas(&["search", "--kind", "ising", "--n", "4", "--delta", "1.5"])), 2);
    assert_eq!(code(&lfqas(&["search", "--kind", "ising", "--n", "4", "--workers", "0"])), 2);
    assert_eq!(code(&lfqas(&["search", "--n", "4"])), 2);

    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "-1.0 ZZ\nabc ZZ\n");
    let o = lfqas(&["layers", "--hamiltonian", &bad]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn help_documents_every_flag() {
    let expected: &[(&str, &[&str])] = &[
        ("hamiltonian", &["--kind", "--n", "--seed", "--depth", "--out"]),
        ("layers", &["--hamiltonian", "--kind", "--gate-set", "--out"]),
        ("score", &["--circuit", "--samples", "--seed", "--ham-seed"]),
        ("search", &["--delta", "--window", "--epsilon", "--l-min", "--l-max", "--samples", "--trace", "--log", "--timeout-secs"]),
        ("eliminate", &["--circuit", "--elimination-ratio", "--elimination-rounds", "--tol-drop"]),
        ("train", &["--lr", "--max-iters", "--restarts", "--tol", "--train-seed", "--curve"]),
        ("pipeline", &["--skip-train", "--replay", "--out-dir", "--gate-set", "--timeout-secs", "--workers"]),
        ("oracle-check", &["--n-trials", "--samples", "--seed"]),
    ];
    for (cmd, flags) in expected {
        let o = lfqas(&[cmd, "--help"]);
        assert_eq!(code(&o), 0);
        let text = stdout(&o);
        for f in *flags {
            assert!(text.contains(f), "{cmd} --help lacks {f}");
        }
    }
}

#[test]
fn layers_command_reports_pool() {
    let o = lfqas(&["layers", "--kind", "cluster", "--n", "6"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["first_pairs"], serde_json::json!([[0, 1], [2, 3], [4, 5]]));
    assert_eq!(v["templates"].as_array().unwrap().len(), 11);
}

#[test]
fn stage_commands_chain() {
    let dir = TempDir::new().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_owned();
    let ham = ["--kind", "ising", "--n", "4"];
    let mut args = vec!["search"];
    args.extend(ham);
    args.extend(["--samples", "200", "--l-min", "2", "--l-max", "3"]);
    let (circuit, trace, log) = (p("c.json"), p("trace.csv"), p("log.json"));
    args.extend(["--out", &circuit, "--trace", &trace, "--log", &log]);
    let o = lfqas(&args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let csv = fs::read_to_string(&trace).unwrap();
    assert!(csv.starts_with("step,index,label,rf,stderr_rf,alpha,score,penalized,chosen\n"));
    assert!(json(Path::new(&log))["steps"].as_array().unwrap().len() >= 2);

    let (pruned, etrace) = (p("pruned.json"), p("elim.csv"));
    let mut args = vec!["eliminate", "--circuit", &circuit];
    args.extend(ham);
    args.extend(["--samples", "200", "--out", &pruned, "--trace", &etrace]);
    let o = lfqas(&args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(fs::read_to_string(&etrace).unwrap().starts_with("round,layer,index,kind,qubits,rf,penalized,current_rf,removed\n"));

    let (result, curve) = (p("train.json"), p("curve.csv"));
    let mut args = vec!["train", "--circuit", &pruned];
    args.extend(ham);
    args.extend(["--restarts", "3", "--max-iters", "40", "--out", &result, "--curve", &curve]);
    let o = lfqas(&args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(Path::new(&result));
    assert_eq!(v["restarts"].as_array().unwrap().len(), 3);
    assert!(v["best_energy"].as_f64().unwrap() >= v["exact_energy"].as_f64().unwrap() - 1e-9);
    assert!(fs::read_to_string(&curve).unwrap().starts_with("restart,iteration,energy\n"));
}

fn pipeline(dir: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["pipeline", "--kind", "ising", "--n", "4", "--out-dir", dir.to_str().unwrap()];
    args.extend(QUICK);
    args.extend(extra);
    lfqas(&args)
}

#[test]
fn pipeline_writes_artifacts_and_replays_identically() {
    let root = TempDir::new().unwrap();
    let a = root.path().join("a");
    let o = pipeline(&a, &["--seed", "5"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for f in ["report.json", "circuit.json", "searched_circuit.json", "search_trace.csv", "elimination.csv", "training_curve.csv"] {
        assert!(a.join(f).exists(), "missing {f}");
    }
    let report = json(&a.join("report.json"));
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["status"], "ok");
    assert_eq!(report["phase"], "done");
    assert_eq!(report["config"]["search"]["seed"], 5);
    assert_eq!(report["config"]["train"]["seed"], 5);
    assert_eq!(report["hamiltonian"]["kind"], "ising");
    assert!(report["e_ratio"].as_f64().unwrap() > 0.0);
    assert!(report["timings"]["total_secs"].as_f64().unwrap() >= 0.0);
    assert_eq!(report["rf_history"].as_array().unwrap().len(), report["search"]["steps"].as_array().unwrap().len());

    let b = root.path().join("b");
    let o = lfqas(&["pipeline", "--replay", a.join("report.json").to_str().unwrap(), "--out-dir", b.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(fs::read(a.join("circuit.json")).unwrap(), fs::read(b.join("circuit.json")).unwrap());
    assert_eq!(fs::read(a.join("search_trace.csv")).unwrap(), fs::read(b.join("search_trace.csv")).unwrap());
    assert_eq!(fs::read(a.join("training_curve.csv")).unwrap(), fs::read(b.join("training_curve.csv")).unwrap());
}

#[test]
fn worker_count_does_not_change_results() {
    let root = TempDir::new().unwrap();
    let (one, four) = (root.path().join("one"), root.path().join("four"));
    assert_eq!(code(&pipeline(&one, &["--workers", "1"])), 0);
    assert_eq!(code(&pipeline(&four, &["--workers", "4"])), 0);
    for f in ["circuit.json", "search_trace.csv", "elimination.csv", "training_curve.csv"] {
        assert_eq!(fs::read(one.join(f)).unwrap(), fs::read(four.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn skip_train_omits_training() {
    let dir = TempDir::new().unwrap();
    let o = pipeline(dir.path(), &["--skip-train"]);
    assert_eq!(code(&o), 0);
    let report = json(&dir.path().join("report.json"));
    assert!(report["training"].is_null());
    assert!(report["gate_count"].as_u64().unwrap() > 0);
    assert!(!dir.path().join("training_curve.csv").exists());
}

#[test]
fn entangler_free_pool_is_reported() {
    let dir = TempDir::new().unwrap();
    let ham = write(&dir, "field.txt", "-1 ZII\n-1 IZI\n-1 IIZ\n");
    let out = dir.path().join("out");
    let o = lfqas(&["pipeline", "--hamiltonian", &ham, "--gate-set", "zz_ry", "--out-dir", out.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("rzz"), "{}", stderr(&o));
    let report = json(&out.join("report.json"));
    assert_eq!(report["status"], "failed");
    assert_eq!(report["phase"], "layers");
}

#[test]
fn expired_budget_marks_report_out_of_time() {
    let dir = TempDir::new().unwrap();
    let o = pipeline(dir.path(), &["--timeout-secs", "0"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("O.O.T."));
    assert_eq!(json(&dir.path().join("report.json"))["status"], "O.O.T.");
}

#[test]
fn seed_environment_variable_sets_default_seed() {
    let dir = TempDir::new().unwrap();
    let mut args = vec!["pipeline", "--kind", "ising", "--n", "4", "--skip-train", "--out-dir", dir.path().to_str().unwrap()];
    args.extend(QUICK);
    let o = Command::new(env!("CARGO_BIN_EXE_lfqas")).args(&args).env("LFQAS_SEED", "42").output().unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(json(&dir.path().join("report.json"))["config"]["search"]["seed"], 42);
}

#[test]
fn oracle_check_defaults_pass() {
    let o = lfqas(&["oracle-check"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n_trials"], 50);
    assert_eq!(v["failed"], 0);
}

#[test]
fn oracle_check_seed_sweep_stays_within_three_sigma() {
    let (mut trials, mut failed) = (0, 0);
    for seed in 0..100 {
        let o = lfqas(&["oracle-check", "--n-trials", "10", "--samples", "2000", "--seed", &seed.to_string()]);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        trials += v["n_trials"].as_u64().unwrap();
        failed += v["failed"].as_u64().unwrap();
    }
    assert!(failed as f64 / trials as f64 <= 0.01, "{failed} of {trials} trials outside 3 standard errors");
}
