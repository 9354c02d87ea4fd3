use std::path::PathBuf;
use std::process::{Command, Output};

use hallkit_cli::report::Report;

fn quiver(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../quivers");
    root.join(name).display().to_string()
}

fn hallkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hallkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn green_on_a2_exits_zero() {
    let o = hallkit(&["green", "--quiver", &quiver("a2.q"), "--primes", "2,3", "--max-total-dim", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("verdict: ok"));
}

#[test]
fn cc_of_s2_on_a3() {
    let o = hallkit(&["cc", "--quiver", &quiver("a3.q"), "--object", "S2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(x1*x3+1)/x2"), "{}", stdout(&o));
}

#[test]
fn a2_mutation_period() {
    let o = hallkit(&["cluster", "mutate", "--b", "[[0,1],[-1,0]]", "--seq", "1,2,1,2,1,2,1,2,1,2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("initial seed recovered = true"), "{out}");
    assert!(out.contains("x'1 = x1") && out.contains("x'2 = x2"));
}

#[test]
fn json_reports_round_trip_and_are_deterministic() {
    let runs = [
        vec!["cluster-mult", "--quiver", &quiver("kronecker.q"), "--xi", "S1", "--eta", "S2", "--json"],
        vec!["cc", "--quiver", &quiver("a3.q"), "--object", "I2", "--format", "json"],
        vec!["cluster", "finite-type", "--b", "[[0,2],[-2,0]]", "--json"],
        vec!["twocy", "thm82", "--quiver", &quiver("a2.q"), "--m", "S1", "--n", "S2", "--json"],
        vec!["green", "rewritten", "--quiver", &quiver("a2.q"), "--primes", "2", "--json"],
    ]
    .map(|a| a.into_iter().map(String::from).collect::<Vec<_>>());
    for args in runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = stdout(&hallkit(&args));
        assert_eq!(first, stdout(&hallkit(&args)), "{args:?} is not deterministic");
        let parsed: Report = serde_json::from_str(&first).unwrap_or_else(|e| panic!("{args:?}: {e}\n{first}"));
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", first);
        assert!(parsed.ok);
    }
}

#[test]
fn json_laurent_values_carry_terms() {
    let o = hallkit(&["cc", "--quiver", &quiver("a3.q"), "--object", "S2", "--json"]);
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    let v = &r.laurent[0].value;
    assert_eq!(v.to_string(), "(x1*x3+1)/x2");
    assert_eq!(v.len(), 2);
    assert_eq!(r.config.args["object"], "S2");
}

#[test]
fn parse_errors_exit_two_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.q");
    std::fs::write(&path, "vertices=3\narrows=[(1,2),(5,3)]\n").unwrap();
    let o = hallkit(&["quiver-check", "--quiver", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 2, column 15") && err.contains("vertex 5 of 3"), "{err}");
}

#[test]
fn module_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p1.m");
    std::fs::write(&path, "dims=[1,1]\nmat 1 = [[1]]\n").unwrap();
    let object = format!("@{}", path.display());
    let o = hallkit(&["cc", "--quiver", &quiver("a2.q"), "--object", &object]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let ps = hallkit(&["cc", "--quiver", &quiver("a2.q"), "--object", "P1"]);
    let value = |s: String| s.lines().find(|l| l.starts_with("X_")).unwrap().split(" = ").nth(1).unwrap().to_string();
    assert_eq!(value(stdout(&o)), value(stdout(&ps)));

    std::fs::write(&path, "dims=[1,1]\nmat 1 = [[1,1]]\n").unwrap();
    let o = hallkit(&["quiver-check", "--quiver", &quiver("a2.q"), "--module", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));
}

#[test]
fn input_errors_exit_two() {
    for args in [
        vec!["green", "--quiver", &quiver("a2.q"), "--primes", "4"],
        vec!["green", "--quiver", &quiver("a2.q"), "--primes", "2,2"],
        vec!["green"],
        vec!["cc", "--quiver", &quiver("a3.q"), "--object", "S7"],
        vec!["cluster", "mutate", "--b", "[[0,1],[1,0]]", "--seq", "1"],
        vec!["cluster", "mutate", "--b", "[[0,1],[-1,0]]", "--seq", "3"],
        vec!["ck", "--quiver", &quiver("kronecker.q"), "--m", "S1+S2", "--n", "S1+S2"],
        vec!["frobnicate"],
    ] {
        let o = hallkit(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn guard_exits_three() {
    let o = hallkit(&["green", "--quiver", &quiver("a2.q"), "--guard-strata", "1"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("guard"));
}

#[test]
fn every_command_verifies_on_small_quivers() {
    let a2 = quiver("a2.q");
    let a3 = quiver("a3.q");
    let kr = quiver("kronecker.q");
    let rel = quiver("a3_linear_rel.q");
    let rev = quiver("a2_rev.q");
    let runs: Vec<Vec<&str>> = vec![
        vec!["quiver-check", "--quiver", &rel],
        vec!["iso-classes", "--quiver", &kr, "--dims", "1,1"],
        vec!["hall", "--quiver", &a2, "--x", "S2", "--y", "S1"],
        vec!["green", "rewritten", "--quiver", &a2],
        vec!["green", "nonhereditary", "--quiver", &rel, "--primes", "2"],
        vec!["green", "degenerated", "--quiver", &a3, "--xi", "P3", "--eta", "S1"],
        vec!["coproduct-check", "--quiver", &a2],
        vec!["pairing-check", "--quiver", &a2],
        vec!["serre-check", "--quiver", &a2],
        vec!["cc", "--quiver", &kr, "--object", "S1", "--form", "coxeter"],
        vec!["ck", "--quiver", &rev, "--m", "2*S1", "--n", "2*S2"],
        vec!["cluster-mult", "--quiver", &kr, "--xi", "S1", "--eta", "S2"],
        vec!["assoc-check", "--quiver", &a2],
        vec!["cluster", "enumerate", "--quiver", &a3],
        vec!["cluster", "finite-type", "--quiver", &kr],
        vec!["twocy", "classes", "--quiver", &a2, "--dims", "1,1"],
        vec!["twocy", "thm82", "--quiver", &a2],
    ];
    for args in runs {
        let o = hallkit(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}{}", stdout(&o), stderr(&o));
    }
}

#[test]
fn outputs_of_note() {
    let o = stdout(&hallkit(&["ck", "--quiver", &quiver("a2_rev.q"), "--m", "2*S1", "--n", "2*S2"]));
    assert!(o.contains("net = X_{S1+S2+iv(1,2)} + X_{S1+S2}"), "{o}");
    let o = stdout(&hallkit(&["cluster", "finite-type", "--b", "[[0,2],[-2,0]]"]));
    assert!(o.contains("verdict = INCONCLUSIVE") && o.contains("determinant = 0"), "{o}");
    let o = stdout(&hallkit(&["cluster", "enumerate", "--b", "[[0]]"]));
    assert!(o.contains("variable = 2/x1") && o.contains("variable = x1"), "{o}");
    let o = stdout(&hallkit(&["twocy", "thm82", "--quiver", &quiver("a2.q"), "--m", "S1", "--n", "S2"]));
    assert!(o.contains("(1,1) = (1,1)"), "{o}");
}
