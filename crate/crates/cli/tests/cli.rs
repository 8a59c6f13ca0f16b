use std::process::{Command, Output};

use fibbraid::io::{MatrixJson, SearchReport};
use fibbraid::two_qubit::GateReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibbraid")).args(args).env_remove("FIBBRAID_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn basis_reports_the_block_split() {
    let o = run(&["basis", "6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "dim=13 blocks: q-spin0=5 q-spin1=8\n");
    assert_eq!(stdout(&run(&["basis", "3"])), "dim=3 blocks: q-spin0=1 q-spin1=2\n");
}

#[test]
fn empty_word_evaluates_to_identity() {
    let o = run(&["eval", "-n", "3", "--word", ""]);
    assert!(o.status.success());
    let m: MatrixJson = serde_json::from_str(&stdout(&o)).unwrap();
    let u = m.to_matrix().unwrap();
    assert_eq!(u, fibbraid::matrix::identity(3));
    assert_eq!(m.blocks.len(), 2);
}

#[test]
fn eval_against_a_target() {
    let o = run(&["eval", "-n", "3", "--word", "s1^7", "--target", "s1^-3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["epsilon"].as_f64().unwrap() < 1e-12);
    assert!(v["matrix"]["entries"].is_array());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["eval", "-n", "3", "--word", "s3"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "-n", "3", "--word", "s1^"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["search", "--max-length", "8"]).status.code(), Some(2));
    let guard = run(&["search", "--target", "not", "--max-length", "60", "--strategy", "exhaustive"]);
    assert_eq!(guard.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&guard.stderr).contains("error"));
}

#[test]
fn verify_passes() {
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().count() >= 15);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn search_output_does_not_depend_on_threads() {
    let args = ["search", "--target", "h", "--max-length", "18", "--weave", "2", "--endpoints", "2"];
    let base = run(&[&args[..], &["--threads", "1"]].concat());
    assert!(base.status.success());
    for t in ["2", "4"] {
        assert_eq!(run(&[&args[..], &["--threads", t]].concat()).stdout, base.stdout);
    }
    let env = Command::new(env!("CARGO_BIN_EXE_fibbraid")).args(args).env("FIBBRAID_THREADS", "3").output().unwrap();
    assert_eq!(env.stdout, base.stdout);
    let r: SearchReport = serde_json::from_str(&stdout(&base)).unwrap();
    assert_eq!((r.weave_start, r.weave_end), (Some(2), Some(2)));
    let mitm = run(&[&args[..], &["--strategy", "mitm"]].concat());
    let m: SearchReport = serde_json::from_str(&stdout(&mitm)).unwrap();
    assert_eq!(m.epsilon, r.epsilon);
}

#[test]
fn render_canonicalizes() {
    let a = run(&["render", "-n", "3", "--word", "s1^3 s1^4 s2 s2^-1 s2"]);
    let b = run(&["render", "-n", "3", "--word", "s1^-3 s2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let raw = run(&["render", "-n", "3", "--raw", "--word", "s1^3 s1^4"]);
    assert_ne!(raw.stdout, b.stdout);
    let svg = stdout(&run(&["render", "-n", "4", "--format", "svg", "--word", "s3 s1^-1"]));
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn gate_reports_parse() {
    let o = run(&["compile-cphase", "--m", "1", "--max-length", "12"]);
    assert!(o.status.success());
    let r: GateReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.total_length, r.stage_lengths.iter().sum::<u64>());
    let warn = run(&["compile-cphase", "--m", "5", "--max-length", "8"]);
    assert!(String::from_utf8_lossy(&warn.stderr).contains("divisible by 5"));

    let o = run(&["compile-cnot", "--injection", "s1 s2^3", "--not", "s1^2 s2^2 s1^-4"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r: GateReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.phases.len(), 2);
    // the injection weave must end in slot 3
    assert_eq!(run(&["compile-cnot", "--injection", "s1", "--not", "s1^2"]).status.code(), Some(2));
}

#[test]
fn sk_round_trips_its_net_file() {
    let dir = std::env::temp_dir().join(format!("fibbraid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let net = dir.join("net.json");
    let net = net.to_str().unwrap();
    let a = run(&["sk", "--target", "h", "--depth", "1", "--base-length", "10", "--save-net", net]);
    assert!(a.status.success());
    let b = run(&["sk", "--target", "h", "--depth", "1", "--net-file", net]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["trace"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(&dir).ok();
}
