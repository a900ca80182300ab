use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clusterlab")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = bin(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("clusterlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn s(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn somos4_numbers() {
    let out = stdout(&["seq", "somos4", "--count", "15"]);
    let got: Vec<&str> = out.lines().collect();
    assert_eq!(got, ["1", "1", "1", "1", "2", "3", "7", "23", "59", "314", "1529", "8209", "83313", "620297", "7869898"]);
}

#[test]
fn somos4_symbolic_terms_are_laurent() {
    let out = stdout(&["seq", "somos4", "--count", "6", "--symbolic"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[4], "1 * x1^-1*x2^1*x3^0*x4^1 + 1 * x1^-1*x2^0*x3^2*x4^0");
}

#[test]
fn markov_matrix_is_fixed_by_mutation_up_to_sign() {
    let m = file("markov.txt", "3 3\n0 2 -2\n-2 0 2\n2 -2 0\n");
    assert_eq!(stdout(&["mutate", "--matrix", s(&m), "--word", "1"]), "3 3\n0 -2 2\n2 0 -2\n-2 2 0\n");
    assert_eq!(stdout(&["mutate", "--quiver", s(&m), "--word", "1,2"]), "3 3\n0 2 -2\n-2 0 2\n2 -2 0\n");
    let class = stdout(&["explore", "--quiver", s(&m), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&class).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 1);
}

#[test]
fn a11_exchange_graph_is_a_pentagon() {
    let m = file("a11.txt", "2 2\n0 1\n-1 0\n");
    let out = stdout(&["explore", "--matrix", s(&m), "--exchange"]);
    assert!(out.starts_with("nodes: 5\nedges: 10\ntruncated: false\nregular of degree 2\n"), "{out}");
    let dot = stdout(&["explore", "--matrix", s(&m), "--exchange", "--format", "dot"]);
    assert!(dot.starts_with("graph") || dot.starts_with("digraph"), "{dot}");
}

#[test]
fn seed_files_round_trip_through_mutate() {
    let m = file("a11b.txt", "2 2\n0 1\n-1 0\n");
    let laurent = stdout(&["laurent", "--matrix", s(&m), "--word", "1", "--index", "1", "--denominators", "--positivity"]);
    assert_eq!(laurent, "x1: 1 * x1^-1*x2^1 + 1 * x1^-1*x2^0\n  denominator: [1, 0]\n  positive: true\n");

    let seed = file("a11.json", r#"{"m":2,"n":2,"matrix":[[0,1],[-1,0]],"cluster":["1 * x1^1*x2^0","1 * x1^0*x2^1"],"word":[]}"#);
    let after = stdout(&["mutate", "--seed", s(&seed), "--word", "1,2,1,2,1", "--format", "json"]);
    let next = file("a11-after.json", &after);
    let back = stdout(&["mutate", "--seed", s(&next), "--word", "1,2,1,2,1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&back).unwrap();
    assert_eq!(v["cluster"], serde_json::json!(["1 * x1^1*x2^0", "1 * x1^0*x2^1"]));
}

#[test]
fn a11_seed_file_explores_to_a_pentagon() {
    let seed = file("a11.seed", r#"{"m":2,"n":2,"matrix":[[0,1],[-1,0]],"cluster":["1 * x1^1*x2^0","1 * x1^0*x2^1"],"word":[]}"#);
    let out = stdout(&["explore", "--seed", s(&seed), "--max-nodes", "100", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 5);
    assert_eq!(v["truncated"], serde_json::json!(false));
}

#[test]
fn y_pattern_numeric_orbit() {
    let m = file("a11y.txt", "2 2\n0 1\n-1 0\n");
    let out = stdout(&["ypattern", "--matrix", s(&m), "--word", "1,2,1,2,1", "--values", "2,3/4"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "0: 2 | 3/4");
    assert_eq!(lines[1], "1: 1/2 | 1/2");
    assert_eq!(lines[5], "5: 3/4 | 2");
}

#[test]
fn total_positivity_tests() {
    let v = file("vandermonde.txt", "3 3\n1 1 1\n1 2 4\n1 3 9\n");
    let bad = file("bad.txt", "3 3\n2 1 1\n1 2 1\n1 1 2\n");
    for test in ["solid", "oracle"] {
        assert_eq!(stdout(&["tp", "--matrix", s(&v), "--test", test]), "pass\n");
        assert_eq!(stdout(&["tp", "--matrix", s(&bad), "--test", test]), "fail\n");
    }
    let dw = ["--test", "double-wiring", "--diagram", "2t,1T,2T,1t,2t,1T"];
    assert_eq!(stdout(&[&["tp", "--matrix", s(&v)][..], &dw].concat()), "pass\n");
    let two = file("two.txt", "2 4\n1 1 1 1\n1 2 3 4\n");
    assert_eq!(stdout(&["tp", "--matrix", s(&two), "--test", "triangulation", "--diagram", "4; 1-3"]), "pass\n");
}

#[test]
fn models_build_quivers() {
    let out = stdout(&["model", "triangulation", "6; 1-3, 1-4, 1-5"]);
    assert!(out.starts_with("9 3\n"), "{out}");
    let dot = stdout(&["model", "double-wiring", "2t,1T,2T,1t,2t,1T", "--format", "dot"]);
    assert!(dot.contains("digraph"));
    let json = stdout(&["model", "wiring", "1,2,1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["seed"]["n"], serde_json::json!(1));
}

#[test]
fn other_sequences() {
    assert_eq!(stdout(&["seq", "markov", "--depth", "1"]).lines().count(), 4);
    assert!(stdout(&["seq", "fermat", "--steps", "2"]).contains("5, -641"));
    assert_eq!(
        stdout(&["seq", "fordy-marsh", "--a", "1,-1,-1,1", "--count", "8"]),
        stdout(&["seq", "somos5", "--count", "8", "--symbolic"])
    );
    assert_eq!(stdout(&["seq", "somos5", "--count", "10"]).lines().collect::<Vec<_>>(), ["1", "1", "1", "1", "1", "2", "3", "5", "11", "37"]);
}

#[test]
fn exit_codes() {
    let m = file("a11c.txt", "2 2\n0 1\n-1 0\n");
    let garbage = file("garbage.txt", "2 2\n0 x\n");
    assert_eq!(bin(&["mutate", "--matrix", "/nonexistent", "--word", "1"]).status.code(), Some(1));
    assert_eq!(bin(&["mutate", "--matrix", s(&garbage), "--word", "1"]).status.code(), Some(1));
    assert_eq!(bin(&["mutate", "--matrix", s(&m), "--word", "1,x"]).status.code(), Some(1));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(1));
    let out = bin(&["mutate", "--matrix", s(&m), "--word", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    let not_skew = file("notskew.txt", "2 2\n0 1\n1 0\n");
    assert_eq!(bin(&["mutate", "--matrix", s(&not_skew), "--word", "1"]).status.code(), Some(2));
}
