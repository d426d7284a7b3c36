use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn rigidity(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rigidity")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8"),
        String::from_utf8(out.stderr).expect("utf8"),
    )
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).expect("valid JSON output")
}

fn gen_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    assert_eq!(rigidity(&full).0, 0);
    path
}

#[test]
fn cauchy_5x5_is_maximally_border_rigid_at_n_minus_2() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = gen_to(dir.path(), "c5.json", &["cauchy", "--n", "5", "--seed", "3"]);
    let (code, out, _) = rigidity(&["rigidity", &c5, "--decider", "nm2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["result"], Value::Bool(true));
    assert_eq!(v["decider"], "nm2");
    assert_eq!(v["r"], 3);
}

#[test]
fn decider_false_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let s = gen_to(dir.path(), "s.json", &["sylvester", "--k", "2"]);
    let (code, out, _) = rigidity(&["rigidity", &s, "--decider", "r1"]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v["result"], Value::Bool(false));
    assert!(v["witness"].is_object());
}

#[test]
fn gen_rank_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = gen_to(dir.path(), "d.json", &["dft", "--n", "6"]);
    let (code, out, _) = rigidity(&["rank", &d]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["rank"], 6);
    let v = json(&std::fs::read_to_string(&d).unwrap());
    assert_eq!(v["conductor"], 6);
    let (_, out, _) = rigidity(&["gen", "dft", "--n", "6"]);
    assert_eq!(json(&out), v);
}

#[test]
fn minors_nonzero_check() {
    let dir = tempfile::tempdir().unwrap();
    let c = gen_to(dir.path(), "c.json", &["cauchy", "--n", "4"]);
    for size in 1..=4 {
        let (code, out, _) = rigidity(&["minors", &c, "--size", &size.to_string(), "--nonzero-check"]);
        assert_eq!(code, 0, "{out}");
    }
    let d = gen_to(dir.path(), "d.json", &["dft", "--n", "4"]);
    let (code, out, _) = rigidity(&["minors", &d, "--size", "2", "--nonzero-check"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["first_zero"]["rows"], serde_json::json!([1, 3]));
    let (code, out, _) = rigidity(&["minors", &d, "--size", "2"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["minors"].as_array().unwrap().len(), 36);
}

#[test]
fn interval_report_keys_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let d = gen_to(dir.path(), "d.json", &["dft", "--n", "4"]);
    let (code, out, _) = rigidity(&["rigidity", &d, "--r", "2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    for key in ["r", "lower", "upper", "witness_upper", "witness_lower", "decider"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["decider"], "interval");
    let (lo, hi) = (v["lower"].as_u64().unwrap(), v["upper"].as_u64().unwrap());
    assert!(lo <= hi && hi <= 4);
    assert_eq!(v["witness_upper"].as_array().unwrap().len() as u64, hi);
}

#[test]
fn circuit_build_eval_matches_gen() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("fft.json").to_string_lossy().into_owned();
    assert_eq!(rigidity(&["circuit", "build", "--kind", "dft", "--k", "3", "--out", &c]).0, 0);
    let (_, size, _) = rigidity(&["circuit", "size", &c]);
    assert_eq!(json(&size)["depth"], 3);
    let (code, eval, _) = rigidity(&["circuit", "eval", &c]);
    assert_eq!(code, 0);
    let (_, gen, _) = rigidity(&["gen", "dft", "--n", "8"]);
    assert_eq!(json(&eval), json(&gen));
    let (code, dot, _) = rigidity(&["circuit", "dot", &c]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("digraph"));
}

#[test]
fn factor_circuit_reproduces_low_rank_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    std::fs::write(&m, r#"{"n":3,"m":3,"entries":[["1","2","3"],["2","4","6"],["1","0","1"]]}"#).unwrap();
    let m = m.to_string_lossy().into_owned();
    let c = dir.path().join("c.json").to_string_lossy().into_owned();
    assert_eq!(rigidity(&["circuit", "build", "--kind", "factor", "--matrix", &m, "--out", &c]).0, 0);
    let (_, eval, _) = rigidity(&["circuit", "eval", &c]);
    let (_, orig, _) = rigidity(&["circuit", "eval", &{
        let n = dir.path().join("n.json").to_string_lossy().into_owned();
        rigidity(&["circuit", "build", "--kind", "naive", "--matrix", &m, "--out", &n]);
        n
    }]);
    assert_eq!(json(&eval), json(&orig));
    let (code, _, err) = rigidity(&["circuit", "build", "--kind", "factor", "--matrix", &m, "--r", "1"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn degrees_table() {
    let (code, out, _) = rigidity(&["degrees", "--max-n", "6"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,r,s,degree,agree"));
    assert!(out.lines().any(|l| l == "4,2,3,5,agree"));
    assert!(out.lines().any(|l| l == "3,1,0,6,agree"));
    assert!(lines.all(|l| l.ends_with(",agree")));
}

#[test]
fn equations_emit_and_check() {
    let (code, out, _) = rigidity(&["equations", "ee", "--check", "2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["check"]["vanishing"], Value::Bool(true));
    assert_eq!(v["n"], 3);

    let (code, out, _) = rigidity(&["equations", "ee", "--propagate", "2", "--check", "1"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["r"], 3);

    let (code, out, _) = rigidity(&["equations", "nm2", "--n", "4", "--support", "1,2;2,3;3,1", "--check", "2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["case"], "DistinctLines");
    assert_eq!(v["equations"].as_array().unwrap().len(), 1);

    let (code, out, _) = rigidity(&["equations", "cycle", "--n", "3", "--support", "1,1;2,2;3,3", "--check", "2"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["component"], Value::Bool(true));
}

#[test]
fn equation_round_trips_through_core_json() {
    let (_, out, _) = rigidity(&["equations", "s5"]);
    let v = json(&out);
    let p = rigidity::ideals::MinorPolynomial::from_json(&v["equations"][0]).unwrap();
    assert_eq!(p, rigidity::ideals::generators::s5_equation());
}

#[test]
fn equations_eval_at_a_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_to(dir.path(), "g.json", &["cauchy", "--n", "3", "--seed", "5"]);
    let (code, out, _) = rigidity(&["equations", "ee", "--eval", &g]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["all_vanish"], Value::Bool(false));
}

#[test]
fn dim_reports_expected() {
    let (code, out, _) = rigidity(&["dim", "--n", "4", "--r", "1", "--support", "1,1;2,2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["expected"], 9);
    assert_eq!(v["dimension"], 9);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(rigidity(&["frobnicate"]).0, 2);
    assert_eq!(rigidity(&["gen", "cauchy"]).0, 2);
    assert_eq!(rigidity(&["rank", "/nonexistent/m.json"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let (code, _, err) = rigidity(&["rank", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("malformed JSON"));
    let d = gen_to(dir.path(), "d.json", &["dft", "--n", "4"]);
    assert_eq!(rigidity(&["rigidity", &d, "--decider", "nm2", "--r", "1"]).0, 2);
    let big = gen_to(dir.path(), "big.json", &["sylvester", "--k", "3"]);
    let (code, _, err) = rigidity(&["rigidity", &big, "--decider", "r1"]);
    assert_eq!(code, 2, "guard violation: {err}");
    assert_eq!(rigidity(&["dim", "--n", "2", "--r", "1", "--support", "3,3"]).0, 2);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = rigidity(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("selftest"));
}

#[test]
fn selftest_subset() {
    let (code, out, _) = rigidity(&["selftest", "--only", "1,3"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.contains(" PASS ")).count(), 2);
}

#[test]
fn run_is_deterministic() {
    let argv = ["rigidity", "gen", "vandermonde", "--n", "4", "--seed", "9"];
    let mut a = Vec::new();
    let mut b = Vec::new();
    assert_eq!(rigidity_cli::run(argv, &mut a, &mut Vec::new()), 0);
    assert_eq!(rigidity_cli::run(argv, &mut b, &mut Vec::new()), 0);
    assert_eq!(a, b);
}
