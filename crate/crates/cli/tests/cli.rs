use std::process::{Command, Output};

const NS: &str = "(A2 -> A1) * (A4 -> A3)";
const A1: &str = "~(~((A1 -> A2) * (A3 -> A4)) * (A5 -> A6) * (A7 -> A8))";

fn hotkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hotkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_nonsignalling_channels() {
    let o = hotkit(&["analyze", "--term", NS]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("2 maximal chains"), "{text}");
    assert!(text.contains("2↛3"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn analyze_adapter_lists_inputs() {
    let o = hotkit(&["analyze", "--term", A1, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["io_split"]["inputs"], serde_json::json!([1, 3, 6, 8]));
    let text = stdout(&hotkit(&["analyze", "--term", A1]));
    assert!(text.contains("inputs        1, 3, 6, 8"), "{text}");
}

#[test]
fn chain_types_are_marked_causally_ordered() {
    let text = stdout(&hotkit(&["analyze", "--term", "A2 -> A1"]));
    assert!(text.contains("causally ordered (comb)"), "{text}");
    let text = stdout(&hotkit(&["analyze", "--term", NS]));
    assert!(text.contains("not causally ordered"), "{text}");
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["analyze", "--term", A1, "--json"],
        vec!["analyze", "--term", NS],
        vec!["normal-form", "--term", A1],
        vec!["enumerate-types", "--n", "3", "--json"],
    ] {
        let a = hotkit(&args);
        let b = hotkit(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn hasse_of_process_matrices() {
    let o = hotkit(&["hasse", "--term", "~(~(A1->A2)*~(A3->A4))", "--dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    // ∅ < {2,4} < {1,2,3,4}, labels 2,4 then 1,3
    assert_eq!(dot.matches(" -> ").count(), 2, "{dot}");
    assert!(dot.contains("label=\"2,4\""));
    assert!(dot.contains("label=\"1,3\""));
}

#[test]
fn signalling_json_schema() {
    let o = hotkit(&["signalling", "--term", NS, "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 4);
    let p23 = pairs.iter().find(|p| p["i"] == 2 && p["j"] == 3).unwrap();
    assert_eq!(p23["signals"], false);
    assert_eq!(p23["pair_rank"], 0);
}

#[test]
fn function_file_input() {
    let dir = std::env::temp_dir().join(format!("hotkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f.json");
    // A2 -> A1: everything except s_1 = 0, s_2 = 1
    std::fs::write(&path, r#"{"n": 2, "support": ["00", "10", "11"]}"#).unwrap();
    let o = hotkit(&["parse", "--fn", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("1 - p{1} + p{1,2}"));
    let a = hotkit(&["analyze", "--fn", path.to_str().unwrap()]);
    assert!(stdout(&a).contains("causally ordered (comb)"));
    std::fs::write(&path, r#"{"n": 2, "support": ["10"]}"#).unwrap();
    assert_eq!(hotkit(&["parse", "--fn", path.to_str().unwrap()]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn enumerate_regular_counts() {
    let o = hotkit(&["enumerate-regular", "--n", "4", "--outputs", "1,3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 50);
    assert_eq!(v["chain_type_count"], 14);
    assert_eq!(v["basic_strings"].as_array().unwrap().len(), 6);
}

#[test]
fn validation_errors_exit_one() {
    assert_eq!(hotkit(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(hotkit(&["analyze", "--term", "(A1 -> "]).status.code(), Some(1));
    assert_eq!(hotkit(&["analyze", "--term", "A1 * A1"]).status.code(), Some(1));
    assert_eq!(hotkit(&["analyze"]).status.code(), Some(1));
    assert_eq!(hotkit(&["verify", "--suite", "nope"]).status.code(), Some(1));
    assert_eq!(hotkit(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_small_suites() {
    let o = hotkit(&["verify", "--suite", "counts,normal-form-goldens", "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 2, "{text}");
}

#[test]
fn choi_single_term() {
    let o = hotkit(&["choi-verify", "--term", "A2 -> A1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = hotkit(&["choi-verify", "--term", "A2 -> A1", "--dims", "2,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(hotkit(&["choi-verify", "--term", "A2 -> A1", "--dims", "2"]).status.code(), Some(1));
}
