use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphheight"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

#[test]
fn height_of_a_family() {
    let o = run(&["height", "--family", "star:6", "--json", "--no-timing"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["baseHeight"], 2);
    assert_eq!(v["cells"]["total"], 3);
    assert!(v.get("timingMs").is_none());
    assert_eq!(v["reference"]["matches"], true);
}

#[test]
fn height_of_a_file() {
    let f = temp(r#"{"vertices":["a","b"],"edges":[["e1","a","b"],["e2","a","b"],["e3","a","b"]]}"#);
    let o = run(&["height", f.path().to_str().unwrap(), "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["baseHeight"], 1);
    assert!(v["timingMs"].is_number());
}

#[test]
fn input_errors_exit_2() {
    let bad = temp(r#"{"vertices":["a"],"edges":[["e","a","b"]]}"#);
    assert_eq!(run(&["height", bad.path().to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["height", "--family", "star:2"]).status.code(), Some(2));
    assert_eq!(run(&["height"]).status.code(), Some(2));
    assert_eq!(run(&["height", "/nonexistent.json"]).status.code(), Some(2));
    let scheme = temp(r#"{"variant":"FlipMarks","m":2}"#);
    let o = run(&["construct", "--family", "star:3", "--scheme", scheme.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unreachable_target_exits_3() {
    let o = run(&["construct", "--family", "xn:4", "--target", "5"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn construct_plans_and_reports() {
    let o = run(&["construct", "--family", "xn:4", "--target", "9", "--json", "--oracle"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["scheme"]["scheme"]["variant"], "MarksWithSequence");
    assert_eq!(v["scheme"]["scheme"]["m"], 2);
    assert_eq!(v["scheme"]["height"], 9);
    assert_eq!(v["oracle"]["agree"], true);

    let o = run(&["construct", "--family", "circle", "--target", "inf", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["scheme"]["height"], "inf");
}

#[test]
fn construct_from_scheme_file() {
    let s = temp(r#"{"variant":"PinnedMarks","edge":"e1","m":2}"#);
    let o = run(&["construct", "--family", "star:5", "--scheme", s.path().to_str().unwrap(), "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["scheme"]["height"], 6);
}

#[test]
fn oracle_flags_the_lollipop() {
    let o = run(&["oracle", "--family", "lollipop", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["engine"], 3);
    assert_eq!(v["chainSearch"], 3);
    assert_eq!(v["publishedClaim"]["value"], 4);
    assert_eq!(v["publishedClaim"]["matches"], false);
}

#[test]
fn oracle_bound_exits_4() {
    let o = run(&["oracle", "--family", "xn:8"]);
    assert_eq!(o.status.code(), Some(4));
    let o = run(&["search", "--p", "2", "--vmax", "7"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn orbits_dot_is_stable() {
    let a = stdout(&run(&["orbits", "--family", "star:3", "--dot"]));
    let b = stdout(&run(&["orbits", "--family", "star:3", "--dot"]));
    assert_eq!(a, b);
    assert!(a.starts_with("digraph"));
    assert!(a.contains("c0 -> c2;"));
}

#[test]
fn search_finds_star() {
    let o = run(&["search", "--p", "2", "--vmax", "4", "--emax", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness"]["edges"].as_array().unwrap().len(), 3);
    assert_eq!(v["witness"]["vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn dynamics_certificate() {
    let f = temp(r#"{"points":[["0","0"],["1/2","1/4"],["1","1"]]}"#);
    let o = run(&["dynamics", "--pl", f.path().to_str().unwrap(), "--n", "5", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["certificate"]["points"].as_array().unwrap().len(), 5);
    let bad = temp(r#"{"points":[["0","0"],["1/2","3/4"],["1","1/2"]]}"#);
    assert_eq!(run(&["dynamics", "--pl", bad.path().to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_paper_passes_with_flag() {
    let o = run(&["verify-paper"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("flagged-discrepancy"));
    assert!(!text.contains("MISMATCH"));
}
