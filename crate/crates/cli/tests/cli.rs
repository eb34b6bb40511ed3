use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cooprepair")).current_dir(dir).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn hadamard7(dir: &Path) {
    let out = run(dir, &["construct", "--kind", "hadamard", "--k", "3", "-o", "had7.json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn construct_hadamard_and_partition() {
    let dir = TempDir::new().unwrap();
    hadamard7(dir.path());
    let code_file: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("had7.json")).unwrap()).unwrap();
    assert_eq!((code_file["n"].as_u64(), code_file["k"].as_u64()), (Some(7), Some(3)));

    let out = run(dir.path(), &["construct", "--kind", "partition", "--q", "5", "--k", "4", "--r", "4", "--l", "2", "-o", "p.json"]);
    assert_eq!(code(&out), 0);
    let s = json(&out);
    assert_eq!((s["n"].as_u64(), s["k"].as_u64()), (Some(8), Some(4)));
    assert_eq!(s["rate"], "1/2");
}

#[test]
fn construct_without_output_prints_code() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["construct", "--kind", "product", "--r", "4", "--l", "2"]);
    assert_eq!(code(&out), 0);
    let c = cooprepair::LinearCode::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!((c.n(), c.k()), (9, 4));
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&run(dir.path(), &["construct", "--kind", "hadamard"])), 2);
    assert_eq!(code(&run(dir.path(), &["construct", "--kind", "unknown", "--k", "3"])), 2);
    assert_eq!(code(&run(dir.path(), &[])), 2);
    assert_eq!(code(&run(dir.path(), &["verify", "--code", "missing.json"])), 2);
    std::fs::write(dir.path().join("bad.json"), "{\"n\": 3}").unwrap();
    assert_eq!(code(&run(dir.path(), &["verify", "--code", "bad.json"])), 2);
    hadamard7(dir.path());
    assert_eq!(code(&run(dir.path(), &["repair", "--code", "had7.json", "--strategy", "peeling", "--erase", "0"])), 2);
    assert_eq!(code(&run(dir.path(), &["repair", "--code", "had7.json", "--strategy", "hadamard", "--erase", "9"])), 2);
    assert_eq!(code(&run(dir.path(), &["verify", "--code", "had7.json", "--locality"])), 2);
    assert_eq!(code(&run(dir.path(), &["simulate", "--code", "had7.json", "--strategy", "generic", "--l", "2"])), 2);
    assert_eq!(code(&run(dir.path(), &["--help"])), 0);
}

#[test]
fn verify_locality_and_consistency() {
    let dir = TempDir::new().unwrap();
    hadamard7(dir.path());
    let ok = run(dir.path(), &["verify", "--code", "had7.json", "--locality", "--l", "2", "--r", "3"]);
    assert_eq!(code(&ok), 0);
    assert_eq!(json(&ok)["locality"]["r_achieved"], 3);
    let fail = run(dir.path(), &["verify", "--code", "had7.json", "--locality", "--l", "2", "--r", "2"]);
    assert_eq!(code(&fail), 1);
    assert_eq!(json(&fail)["holds"], false);
    assert_eq!(code(&run(dir.path(), &["verify", "--code", "had7.json"])), 0);
}

#[test]
fn verify_bounds_round_trip_for_each_kind() {
    let dir = TempDir::new().unwrap();
    let kinds: &[(&[&str], &str, &str)] = &[
        (&["--kind", "hadamard", "--k", "3"], "3", "2"),
        (&["--kind", "mds", "--q", "7", "--n", "6", "--k", "3"], "3", "1"),
        (&["--kind", "partition", "--q", "5", "--k", "4", "--r", "4", "--l", "2"], "4", "2"),
        (&["--kind", "weakened", "--q", "5", "--groups", "2", "--s", "3", "--t", "1"], "3", "1"),
        (&["--kind", "product", "--r", "4", "--l", "2"], "4", "2"),
        (&["--kind", "concatenated", "--r", "6", "--l", "3"], "6", "3"),
        (&["--kind", "edge", "--named", "heawood"], "4", "2"),
        (&["--kind", "expander", "--named", "pg2-2", "--t", "2"], "2", "1"),
        (&["--kind", "zemor", "--named", "complete-4", "--local-dmin", "2"], "3", "1"),
    ];
    for (i, (args, r, l)) in kinds.iter().enumerate() {
        let file = format!("c{i}.json");
        let mut full = vec!["construct"];
        full.extend_from_slice(args);
        full.extend_from_slice(&["-o", &file]);
        assert_eq!(code(&run(dir.path(), &full)), 0, "{args:?}");
        let out = run(dir.path(), &["verify", "--code", &file, "--consistency", "--bounds", "--r", r, "--l", l]);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["violations"], serde_json::json!([]));
    }
}

#[test]
fn repair_hadamard_and_decode_failure() {
    let dir = TempDir::new().unwrap();
    hadamard7(dir.path());
    let out = run(dir.path(), &["repair", "--code", "had7.json", "--strategy", "hadamard", "--erase", "0,2"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["success"], true);
    assert!(r["contact_count"].as_u64().unwrap() <= 3);

    // A 6-cycle of the Heawood graph is a stopping set for peeling.
    let out = run(dir.path(), &["construct", "--kind", "edge", "--named", "heawood", "-o", "h.json"]);
    assert_eq!(code(&out), 0);
    let out = run(dir.path(), &["repair", "--code", "h.json", "--strategy", "peeling", "--erase", "0,1,2,3,4,5,6,7,8,9"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["success"], false);
}

#[test]
fn simulate_heawood_exhaustive() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&run(dir.path(), &["graph", "--named", "heawood", "-o", "heawood.edges"])), 0);
    assert_eq!(code(&run(dir.path(), &["construct", "--kind", "edge", "--file", "heawood.edges", "-o", "heawood.json"])), 0);
    let out = run(dir.path(), &["simulate", "--code", "heawood.json", "--strategy", "peeling", "--l", "5", "--exhaustive", "-o", "rep.json"]);
    assert_eq!(code(&out), 0);
    let rep = json(&out);
    assert_eq!(rep["patterns_checked"], 20349);
    assert_eq!(rep["successes"], 20349);
    assert_eq!(rep["max_contacts"], 10);
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("rep.json")).unwrap()).unwrap();
    assert_eq!(saved, rep);
}

#[test]
fn sampled_runs_print_and_reproduce_seed() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&run(dir.path(), &["construct", "--kind", "edge", "--named", "heawood", "-o", "h.json"])), 0);
    let args = ["simulate", "--code", "h.json", "--strategy", "peeling", "--l", "6", "--trials", "300"];
    let first = run(dir.path(), &args);
    assert_eq!(code(&first), 0);
    let rep = json(&first);
    let seed = rep["seed"].as_u64().expect("seed embedded");
    assert!(String::from_utf8_lossy(&first.stderr).contains(&format!("seed: {seed}")));
    let mut again: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    again.extend(["--seed".to_string(), seed.to_string()]);
    let again: Vec<&str> = again.iter().map(String::as_str).collect();
    assert_eq!(json(&run(dir.path(), &again)), rep);
}

#[test]
fn witness_reports_checks() {
    let dir = TempDir::new().unwrap();
    hadamard7(dir.path());
    let out = run(dir.path(), &["witness", "--code", "had7.json", "--r", "3", "--l", "2"]);
    assert_eq!(code(&out), 0);
    let t = json(&out);
    assert_eq!(t["singleton_check"], true);
    assert_eq!(t["t_check"], true);
    let out = run(dir.path(), &["witness", "--code", "had7.json", "--r", "1", "--l", "2"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn graph_diagnostics() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&run(dir.path(), &["graph", "--named", "heawood", "-o", "heawood.edges"])), 0);
    let out = run(dir.path(), &["graph", "--file", "heawood.edges", "--girth", "--lambda"]);
    assert_eq!(code(&out), 0);
    let g = json(&out);
    assert_eq!(g["girth"], 6);
    let second = g["spectral"]["second"].as_f64().unwrap();
    assert!((second - 2f64.sqrt()).abs() < 1e-9);

    let out = run(dir.path(), &["graph", "--named", "complete-4", "--lambda"]);
    assert!((json(&out)["spectral"]["lambda"].as_f64().unwrap() - 1.0).abs() < 1e-9);

    let out = run(dir.path(), &["graph", "--named", "pg2-2", "--expansion", "--s-max", "2"]);
    let e = json(&out);
    assert_eq!(e["expansion"]["exhaustive"], true);
    assert_eq!(e["expansion"]["epsilon_worst"], serde_json::json!([1, 6]));

    assert_eq!(code(&run(dir.path(), &["graph", "--named", "ring-5", "--expansion"])), 2);
    assert_eq!(code(&run(dir.path(), &["graph", "--named", "heawood", "--file", "x"])), 2);
}

#[test]
fn text_format_is_line_oriented() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["--format", "text", "graph", "--named", "heawood", "--girth"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "girth: 6"));
    assert!(text.lines().all(|l| l.contains(": ")));
}
