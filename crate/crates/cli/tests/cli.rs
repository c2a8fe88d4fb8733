use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use torelli::johnson::{tau0_alt, tau_alt};
use torelli::schema::{DerivationDoc, GElementDoc};
use torelli::surface::twist_library;

fn torelli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torelli")).args(args).env_remove("TORELLI_TRUNCATION").output().unwrap()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim().to_string()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn tau_of_a_twist() {
    let o = torelli(&["tau", "--kind", "alt", "--level", "1", "--word", "t_a1", "-g", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "-(1)·a1⊗a1");
}

#[test]
fn membership() {
    let o = torelli(&["member", "--kind", "alt", "--level", "2", "--word", "t_d", "-g", "2"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "true"));
    let o = torelli(&["member", "--kind", "classical", "--level", "1", "--word", "t_a1", "-g", "2"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "false"));
    assert!(!stderr(&o).is_empty());
}

#[test]
fn refusals_exit_with_two() {
    let o = torelli(&["tau", "--kind", "alt", "--level", "2", "--word", "t_a1", "-g", "2"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("b1-defect is nonzero at weight 2"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn usage_errors_exit_with_one() {
    let o = torelli(&["tau", "--kind", "alt", "--level", "1", "--word", "t_a21", "-g", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("column 1"), "{}", stderr(&o));
    let o = torelli(&["tau", "--kind", "alt", "--level", "1", "--word", "t_a1"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("--genus"));
    assert_eq!(code(&torelli(&["tau", "--bogus"])), 1);
    assert_eq!(code(&torelli(&["tau", "--kind", "alt", "--level", "1", "--word", "t_a1", "-g", "0"])), 1);
    assert_eq!(code(&torelli(&["--help"])), 0);
}

#[test]
fn json_round_trips_through_the_schema() {
    let o = torelli(&["tau", "--kind", "alt", "--level", "1", "--word", "t_a12 * t_e", "-g", "3", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "tau");
    assert_eq!(v["meta"]["genus"], 3);
    assert_eq!(v["meta"]["certificate"], "rational");
    let doc: DerivationDoc = serde_json::from_value(v["result"].clone()).unwrap();
    let lib = twist_library(3);
    let h = lib["t_a12"].compose(&lib["t_e"]).unwrap();
    assert_eq!(doc.value().unwrap(), tau_alt(&h, 1).unwrap());

    let o = torelli(&["tau0", "--word", "t_a12", "-g", "2", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["meta"]["expansion"], "handlebody");
    let doc: GElementDoc = serde_json::from_value(v["result"].clone()).unwrap();
    assert_eq!(doc.value().unwrap(), tau0_alt(&twist_library(2)["t_a12"]).unwrap());
}

#[test]
fn diagrams() {
    let o = torelli(&["diagram", "--level", "1", "--word", "t_a12 * t_d^-2", "-g", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "(-1/2)·strut(a1,a1) + (-1)·strut(a1,a2) + (-1/2)·strut(a2,a2)");
}

#[test]
fn truncation_and_expansions() {
    let args = ["tau", "--kind", "alt", "--level", "1", "--word", "t_a1", "-g", "2"];
    let o = Command::new(env!("CARGO_BIN_EXE_torelli")).args(args).env("TORELLI_TRUNCATION", "3").output().unwrap();
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("below level + 3"), "{}", stderr(&o));
    let o = Command::new(env!("CARGO_BIN_EXE_torelli")).args(args).env("TORELLI_TRUNCATION", "6").output().unwrap();
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "-(1)·a1⊗a1"));
    // a perturbed expansion gives the same value on the Torelli-type twist
    for e in ["perturbed:4", "perturbed(9)", "default-alt"] {
        let o = torelli(&["tau", "--kind", "alt", "--level", "1", "--word", "t_e", "-g", "3", "--expansion", e]);
        assert_eq!((code(&o), stdout(&o).as_str()), (0, "0"), "{e}");
    }
    let o = torelli(&["tau", "--kind", "alt", "--level", "1", "--word", "t_e", "-g", "3", "--expansion", "bogus"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn user_endomorphisms() {
    let base = ["tau", "--kind", "alt", "--level", "1", "-g", "2", "--format", "json"];
    let run = |word: &str, endos: Option<&str>| {
        let mut a: Vec<String> = base.iter().map(|s| s.to_string()).collect();
        a.extend(["--word".into(), word.into()]);
        if let Some(f) = endos {
            a.extend(["--endos".into(), fixture(f)]);
        }
        torelli(&a.iter().map(String::as_str).collect::<Vec<_>>())
    };
    let lib = run("t_a12 * t_d", None);
    let user = run("u * t_d", Some("endos.json"));
    assert_eq!(code(&user), 0, "{}", stderr(&user));
    let result = |o: &Output| serde_json::from_slice::<Value>(&o.stdout).unwrap()["result"].clone();
    assert_eq!(result(&user), result(&lib));
    // negative powers of user entries are inverted
    let inv = run("u^-1", Some("endos.json"));
    assert_eq!(code(&inv), 0, "{}", stderr(&inv));
    let empty = run("t_a1", Some("empty.json"));
    assert_eq!(code(&empty), 0, "{}", stderr(&empty));

    let o = torelli(&["tau0", "--word", "t_a1", "-g", "1", "--endos", &fixture("not_boundary.json")]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("defect word"), "{}", stderr(&o));
    let o = run("t_d", Some("redefined.json"));
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("redefines"), "{}", stderr(&o));
}

#[test]
fn selftest_quick() {
    let o = torelli(&["selftest", "--quick"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.contains(" PASS: ")).count(), 14, "{out}");
}
