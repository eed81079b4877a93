use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sparseconv"))
        .args(args)
        .env("SPARSECONV_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn bound_special_case_and_closed_form() {
    let o = run(&["bound", "--s", "1", "--f", "4", "--json"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["analytic"]["log2_alpha"], -1.0);

    let o = run(&["bound", "--s", "2", "--f", "2", "--n", "2", "--json"]);
    let v = json(&o);
    assert_eq!(v["analytic"]["log2_alpha"], -7.5);
    assert_eq!(v["analytic"]["log2_alpha_equal_sparsity"], -2.5);
    assert_eq!(v["compression_bound"]["n"], 3);
    assert_eq!(v["corollary"]["log2_alpha"], -9.25488750216347);

    let v = json(&run(&["bound", "--s", "3", "--f", "3", "--json"]));
    assert_eq!(v["compression_bound"]["m"], 5);
    assert_eq!(v["compression_bound"]["n"], 275);
    assert_eq!(v["corollary"]["log2_alpha"], -70.8748959207832);
}

#[test]
fn bound_text_golden() {
    let o = run(&["bound", "--s", "2", "--f", "2", "--n", "2"]);
    assert_eq!(
        stdout(&o),
        "s = 2, f = 2, n = 2\n\
         log2 alpha (closed form)     -7.5\n\
         log2 alpha (s = f form)      -2.5\n\
         n(m), m = 3                  3\n\
         universal log2 alpha         -9.25488750216347\n"
    );
}

#[test]
fn json_keys_sorted_and_no_negative_zero() {
    let text = stdout(&run(&["bound", "--s", "2", "--f", "2", "--n", "2", "--json"]));
    let top: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = top.clone();
    sorted.sort();
    assert_eq!(top, sorted);
    assert!(!text.contains("-0.0"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["bound", "--s", "0", "--f", "2"]).status.code(), Some(2));
    assert_eq!(run(&["bound", "--s", "2"]).status.code(), Some(2));
    assert_eq!(run(&["bound", "--s", "2", "--f", "2", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["gaussian", "--s", "4"]).status.code(), Some(2));
    assert_eq!(run(&["gaussian", "--s", "3", "--sigma", "1:2:0.3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["compress", "/nonexistent/input.json"]).status.code(), Some(2));
}

#[test]
fn bad_thread_env_is_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_sparseconv"))
        .args(["bound", "--s", "1", "--f", "1"])
        .env("SPARSECONV_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sharp_budget_exit_3() {
    let o = run(&["sharp", "--s", "6", "--f", "6", "--n", "30"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn sharp_examples() {
    let v = json(&run(&["sharp", "--s", "2", "--f", "2", "--n", "2", "--method", "exhaustive"]));
    assert!((v["alpha"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    assert_eq!(v["kind"], "sharp_exhaustive");
    assert!(v["witness_x"]["entries"].is_array());
    assert!((v["witness_value"].as_f64().unwrap() - 0.5).abs() < 1e-6);

    let v = json(&run(&["sharp", "--s", "1", "--f", "3", "--n", "4"]));
    assert!((v["alpha"].as_f64().unwrap() - 3f64.powf(-0.5)).abs() < 1e-6);
}

#[test]
fn sharp_alternating_reproducible() {
    let args = ["sharp", "--s", "2", "--f", "2", "--n", "3", "--method", "alternating", "--restarts", "64", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["upper_bound"], true);
}

#[test]
fn sharp_both_agree() {
    let o = run(&["sharp", "--s", "2", "--f", "2", "--n", "3", "--method", "both"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["agreement"]["within_tolerance"], true);
    assert!(v["agreement"]["difference"].as_f64().unwrap().abs() <= 1e-6);
}

#[test]
fn compress_point_sets() {
    let dir = tempfile::tempdir().unwrap();
    let geo = write(dir.path(), "geo.json", r#"{"group":{"type":"Z"},"points":[[0],[1],[2],[4]]}"#);
    let o = run(&["compress", &geo, "--strategy", "search"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["diameter"], 4);
    assert_eq!(v["konyagin_lev_bound"], 4.0);
    assert_eq!(v["map"]["verified"], true);
    assert_eq!(v["compression_bound"]["n"], 5);

    let ap = write(dir.path(), "ap.json", r#"{"group":{"type":"Z"},"points":[[0],[5],[10]]}"#);
    assert_eq!(json(&run(&["compress", &ap, "--strategy", "search"]))["diameter"], 2);

    let tight = run(&["compress", &geo, "--strategy", "search", "--n-max", "4"]);
    assert_eq!(tight.status.code(), Some(2));
}

#[test]
fn compress_lattice_pair() {
    let dir = tempfile::tempdir().unwrap();
    let pair = write(
        dir.path(),
        "pair.json",
        r#"{"x":{"group":{"type":"Zd","d":2},"entries":[
              {"point":[0,0],"re":1,"im":0},{"point":[3,-1],"re":0.5,"im":-0.2}]},
            "y":{"group":{"type":"Zd","d":2},"entries":[
              {"point":[1,1],"re":-0.3,"im":0.9},{"point":[0,7],"re":0.1,"im":0}]}}"#,
    );
    for strategy in ["base-expand", "search"] {
        let o = run(&["compress", &pair, "--strategy", strategy]);
        assert!(o.status.success(), "{strategy}");
        let v = json(&o);
        assert_eq!(v["norms_preserved"], true);
        assert_eq!(v["norms"].as_array().unwrap().len(), 4);
        assert_eq!(v["x_compressed"]["group"]["type"], "Z");
    }
}

#[test]
fn compress_rejects_torsion_and_duplicates() {
    let dir = tempfile::tempdir().unwrap();
    let cyc = write(dir.path(), "c.json", r#"{"group":{"type":"ZN","N":4},"points":[[0],[1]]}"#);
    let o = run(&["compress", &cyc]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("torsion"));

    let dup = write(
        dir.path(),
        "d.json",
        r#"{"x":{"group":{"type":"Z"},"entries":[{"point":[1],"re":1,"im":0},{"point":[1],"re":2,"im":0}]},
            "y":{"group":{"type":"Z"},"entries":[{"point":[0],"re":1,"im":0}]}}"#,
    );
    assert_eq!(run(&["compress", &dup]).status.code(), Some(2));
}

#[test]
fn gaussian_csv_golden() {
    let o = run(&["gaussian", "--s", "3,5", "--sigma", "1:2:0.5"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "s,sigma,log_ratio_nat,log2_ratio,precision\n\
         3,1,-0.521875400882458,-0.752907052815062,native\n\
         3,1.5,-0.930780882819772,-1.34283296379834,native\n\
         3,2,-1.09012369711896,-1.57271605178906,native\n\
         5,1,-0.536826998790704,-0.774477648970654,native\n\
         5,1.5,-1.09586306746309,-1.58099621292237,native\n\
         5,2,-1.67553822032179,-2.41729068127817,native\n"
    );
    let summary = String::from_utf8(o.stderr).unwrap();
    assert!(summary.lines().count() == 3 && summary.contains("yes"));
}

#[test]
fn gaussian_file_rows_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let oa = run(&["gaussian", "--s", "3,11,31", "--sigma", "1:20:0.5", "--out", a.to_str().unwrap()]);
    assert!(oa.status.success());
    let serial = Command::new(env!("CARGO_BIN_EXE_sparseconv"))
        .args(["gaussian", "--s", "3,11,31", "--sigma", "1:20:0.5", "--out", b.to_str().unwrap()])
        .env("SPARSECONV_THREADS", "1")
        .output()
        .unwrap();
    assert!(serial.status.success());
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text.lines().count(), 1 + 3 * 39);
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let summary = stdout(&oa);
    let tail = |t: &str| t.lines().skip(1).map(String::from).collect::<Vec<_>>();
    assert_eq!(tail(&summary), tail(&stdout(&serial)));
    assert!(summary.contains("# 11, "));
}

#[test]
fn gaussian_extended_rows() {
    let o = run(&["gaussian", "--s", "71", "--sigma", "35:35:1"]);
    let text = stdout(&o);
    assert!(text.lines().nth(1).unwrap().ends_with(",extended"));
}

#[test]
fn verify_suites_exit_0() {
    for suite in ["torsion", "young", "vandermonde"] {
        let o = run(&["verify", "--suite", suite]);
        assert!(o.status.success(), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).contains(&format!("suite {suite}: ")));
    }
    let o = run(&["verify", "--suite", "young"]);
    assert!(stdout(&o).contains("6000 checks, 0 failures"));
}

#[test]
fn verify_all_aggregates() {
    let o = run(&["verify", "--suite", "all", "--seed", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    for suite in ["young", "bernstein", "compression", "torsion", "vandermonde", "dimension"] {
        assert!(text.contains(&format!("suite {suite}: ")), "{suite}");
    }
    assert!(text.contains("verify all: 6 suites"));
    assert_eq!(text, stdout(&run(&["verify", "--suite", "all", "--seed", "3"])));
}
