use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use tfcert::certify::{Certificate, Verdict};
use tfcert::oracle::IndependenceReport;
use tfcert::reproduce::ReproReport;
use tfcert::windowsearch::SearchResult;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tfcert"))
}

fn write_config(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str], config: Option<&Path>) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    if let Some(c) = config {
        cmd.arg("--config").arg(c);
    }
    cmd.output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn report<T: serde::de::DeserializeOwned>(o: &Output) -> T {
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["schema"], 1);
    serde_json::from_value(doc["report"].clone()).unwrap()
}

const EXAMPLE1: &str = r#"{"schema":1,"dimension":1,
  "function":{"family":"example1","params":{"C":8,"omega":5}},
  "lambda":[[0,0],[1,1],[2,2],[3,3]]}"#;

#[test]
fn thm1_example1_certified() {
    let d = TempDir::new().unwrap();
    let c = write_config(&d, "c.json", EXAMPLE1);
    let o = run(&["certify", "thm1"], Some(&c));
    assert_eq!(code(&o), 0);
    let cert: Certificate = report(&o);
    assert_eq!(cert.verdict, Verdict::Certified);
    assert!((cert.radius - 0.375).abs() < 2e-9);
}

#[test]
fn thm1_single_point() {
    let d = TempDir::new().unwrap();
    let c = write_config(
        &d,
        "c.json",
        r#"{"function":{"family":"example1","params":{"C":2}},"lambda":[[0.5,1]]}"#,
    );
    assert_eq!(code(&run(&["certify", "thm1"], Some(&c))), 0);
}

#[test]
fn thm1_lambda_prime_reports_duplicate_times() {
    let d = TempDir::new().unwrap();
    let c = write_config(
        &d,
        "c.json",
        r#"{"function":{"family":"example1","params":{"C":20}},
            "lambda":[[0,0],[1,0],[0,1],[1.4142135623730951,1.4142135623730951]]}"#,
    );
    let o = run(&["certify", "thm1"], Some(&c));
    assert_eq!(code(&o), 3);
    let cert: Certificate = report(&o);
    assert!(cert.note.unwrap().contains("duplicate time"));
}

#[test]
fn gram_gaussian_pair() {
    let d = TempDir::new().unwrap();
    let c = write_config(
        &d,
        "c.json",
        r#"{"function":{"family":"gaussian"},"lambda":[[0,0],[1,0]]}"#,
    );
    let o = run(&["oracle", "gram"], Some(&c));
    assert_eq!(code(&o), 0);
    let r: IndependenceReport = report(&o);
    let exact = 1.0 - (-std::f64::consts::PI / 2.0).exp();
    assert!((r.sigma_min - exact).abs() < 1e-6, "{}", r.sigma_min);
}

#[test]
fn gram_disjoint_bumps() {
    let d = TempDir::new().unwrap();
    let c = write_config(
        &d,
        "c.json",
        r#"{"function":{"family":"bump","params":{"radius":0.4}},"lambda":[[-1,0],[1,0.5],[3,0]],
            "grid":{"half_width":8,"samples_per_axis":4097}}"#,
    );
    let o = run(&["oracle", "gram"], Some(&c));
    assert_eq!(code(&o), 0);
    let r: IndependenceReport = report(&o);
    assert!((r.relative_gap - 1.0).abs() < 1e-10, "{}", r.relative_gap);
}

#[test]
fn collocation_csv() {
    let d = TempDir::new().unwrap();
    let c = write_config(
        &d,
        "c.json",
        r#"{"function":{"family":"gaussian"},"lambda":[[0,0],[1,0],[0,1]]}"#,
    );
    let o = run(&["oracle", "collocation", "--format", "csv"], Some(&c));
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("row,col,re,im\n"));
}

#[test]
fn er_residual_small_lattice() {
    let d = TempDir::new().unwrap();
    let c = write_config(
        &d,
        "c.json",
        r#"{"lattice":{"half_width":1,"samples_per_axis":3}}"#,
    );
    let o = run(&["oracle", "er-residual", "--no-meta"], Some(&c));
    assert_eq!(code(&o), 0);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(
        doc["report"]["residuals"][0]["max_abs_residual"]
            .as_f64()
            .unwrap()
            < 1e-6
    );
    assert_eq!(doc["report"]["pass"], true);
}

#[test]
fn stft_identity_and_metaplectic() {
    let d = TempDir::new().unwrap();
    let c = write_config(
        &d,
        "c.json",
        r#"{"function":{"family":"gaussian"},"u":[0.7],"eta":[-0.4],
            "lattice":{"half_width":3,"samples_per_axis":9},"grid":{"half_width":8,"samples_per_axis":1024}}"#,
    );
    assert_eq!(code(&run(&["oracle", "stft-identity"], Some(&c))), 0);
    let m = write_config(
        &d,
        "m.json",
        r#"{"function":{"family":"gaussian"},"kind":"chirp_cov","r":0.3,"x":[0.5],"omega":[0.2]}"#,
    );
    let o = run(&["oracle", "metaplectic"], Some(&m));
    assert_eq!(code(&o), 0);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["report"]["residuals"].as_array().unwrap().len(), 2);
}

#[test]
fn input_errors_exit_one() {
    let d = TempDir::new().unwrap();
    let unknown = write_config(
        &d,
        "a.json",
        r#"{"function":{"family":"gaussian"},"lambda":[[0,0]],"bogus":1}"#,
    );
    assert_eq!(code(&run(&["certify", "thm1"], Some(&unknown))), 1);
    let short = write_config(
        &d,
        "b.json",
        r#"{"function":{"family":"gaussian"},"lambda":[[0]]}"#,
    );
    assert_eq!(code(&run(&["certify", "thm1"], Some(&short))), 1);
    let schema = write_config(
        &d,
        "c.json",
        r#"{"schema":2,"function":{"family":"gaussian"},"lambda":[[0,0]]}"#,
    );
    assert_eq!(code(&run(&["certify", "thm1"], Some(&schema))), 1);
    assert_eq!(
        code(&run(
            &["certify", "thm1"],
            Some(&d.path().join("missing.json"))
        )),
        1
    );
    assert_eq!(code(&run(&["certify", "thm1"], None)), 1);
    assert_eq!(code(&run(&["reproduce", "example3"], None)), 1);
    assert_eq!(code(&run(&["certify", "thm9"], None)), 1);
    let c = write_config(&d, "e.json", EXAMPLE1);
    assert_eq!(
        code(&run(&["certify", "thm1", "--format", "csv"], Some(&c))),
        1
    );
    let o = run(
        &["certify", "thm1", "--out", "/nonexistent/dir/x.json"],
        Some(&c),
    );
    assert_eq!(code(&o), 1);
}

#[test]
fn rigorous_refusal_exits_two() {
    let d = TempDir::new().unwrap();
    let c = write_config(
        &d,
        "c.json",
        r#"{"function":{"family":"gaussian"},"lambda":[[0,0],[1,0],[0,1]]}"#,
    );
    assert_eq!(code(&run(&["certify", "thm3"], Some(&c))), 0);
    assert_eq!(code(&run(&["certify", "thm3", "--rigorous"], Some(&c))), 2);
}

#[test]
fn window_search_deterministic_and_csv() {
    let d = TempDir::new().unwrap();
    let c = write_config(
        &d,
        "c.json",
        r#"{"function":{"family":"gaussian"},"R":2,"N":2,"degree":0,"budget":12}"#,
    );
    let a = run(&["window-search", "--seed", "5", "--no-meta"], Some(&c));
    let b = run(&["window-search", "--seed", "5", "--no-meta"], Some(&c));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let r: SearchResult = report(&a);
    assert!(r.achieved && r.evaluations <= 12);
    let csv = run(
        &["window-search", "--seed", "5", "--format", "csv"],
        Some(&c),
    );
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("evaluation,restart,width,c0,ratio,incumbent\n"));
    assert_eq!(text.lines().count(), 13);
}

#[test]
fn meta_block_and_out_file() {
    let d = TempDir::new().unwrap();
    let c = write_config(&d, "c.json", EXAMPLE1);
    let out = d.path().join("cert.json");
    let o = run(
        &["certify", "thm1", "--out", out.to_str().unwrap()],
        Some(&c),
    );
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["meta"]["tool"], "tfcert");
    let bare = run(&["certify", "thm1", "--no-meta"], Some(&c));
    let doc: Value = serde_json::from_slice(&bare.stdout).unwrap();
    assert!(doc.get("meta").is_none());
}

#[test]
fn reproduce_example1_reports_discrepancy() {
    let o = run(&["reproduce", "example1"], None);
    assert_eq!(code(&o), 0);
    let r: ReproReport = report(&o);
    assert!(r.items.iter().any(|i| i.discrepancy_expected && !i.agrees));
}

#[test]
fn reproduce_dilation_scan() {
    let o = run(&["reproduce", "dilation_scan", "--no-meta"], None);
    assert_eq!(code(&o), 0);
    let r: ReproReport = report(&o);
    assert_eq!(r.scan.len(), 20);
    assert!(r.scan.iter().all(|s| s.certified == s.expected));
}
