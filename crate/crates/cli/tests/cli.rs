use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fixord")).args(args).env_remove("FIXORD_SIZE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(args: &[&str]) -> (i32, Vec<Value>) {
    let mut full = vec!["--format", "records"];
    full.extend_from_slice(args);
    let o = run(&full);
    let recs = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    (o.status.code().unwrap(), recs)
}

#[test]
fn goodstein_worked_example() {
    let (code, recs) = records(&["goodstein", "run", "--seed", "5", "--steps", "1"]);
    assert_eq!(code, 0);
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0]["value"], "5");
    assert_eq!(recs[1]["lifted"], "28");
    assert_eq!(recs[1]["value"], "27");
    assert_eq!(recs[1]["base"], 3);
    assert_eq!(recs[1]["command"], "goodstein run");
    let (_, weak) = records(&["goodstein", "run", "--seed", "5", "--steps", "1", "--weak"]);
    assert_eq!(weak[1]["lifted"], "10");
    assert_eq!(weak[1]["value"], "9");
}

#[test]
fn inverse_sequence_of_a_finite_order_terminates() {
    let (code, recs) = records(&["goodstein", "inverse", "--predilator", "const:3", "--stages", "10"]);
    assert_eq!(code, 0);
    assert_eq!(recs.last().unwrap()["terminated_at"], 3);
}

#[test]
fn notation_commands() {
    let o = run(&["notation", "cmp", "--system", "ot", "(v 0)", "O"]);
    assert_eq!(stdout(&o).trim(), "less");
    let o = run(&["notation", "cmp", "--system", "phi", "(p 1 0)", "(p 0 (p 0 0))"]);
    assert_eq!(stdout(&o).trim(), "greater");
    let o = run(&["notation", "cmp", "--system", "psi:goodstein", "(cl (+))", "(cl (+))"]);
    assert_eq!(stdout(&o).trim(), "equal");
    let o = run(&["notation", "enumerate", "--system", "phi", "--size", "5"]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.first().unwrap(), "0");
    assert_eq!(lines.len(), 13);
    let o = run(&["notation", "normalize", "(v 0)"]);
    assert!(o.status.success());
}

#[test]
fn size_bound_from_environment() {
    let a = Command::new(env!("CARGO_BIN_EXE_fixord"))
        .args(["notation", "enumerate", "--system", "phi"])
        .env("FIXORD_SIZE", "5")
        .output()
        .unwrap();
    let b = run(&["notation", "enumerate", "--system", "phi", "--size", "5"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn fixpoint_commands() {
    let o = run(&["fixpoint", "enumerate", "--predilator", "goodstein", "--size", "6"]);
    assert_eq!(stdout(&o).lines().next().unwrap(), "(cl (+))");
    for p in ["goodstein", "weak", "const:3", "sum:const:2,const:3", "bump:goodstein"] {
        let o = run(&["fixpoint", "check", "--predilator", p]);
        assert!(o.status.success(), "{p}: {}", stdout(&o));
    }
    let (code, recs) = records(&["fixpoint", "hom", "--from", "const:2", "--to", "const:3"]);
    assert_eq!(code, 0);
    assert_eq!(recs.len(), 2);
}

#[test]
fn embed_commands() {
    let o = run(&["embed", "run", "--map", "omega_normalize", "(v 0)"]);
    assert!(o.status.success());
    let (code, recs) = records(&["embed", "verify", "--map", "theta_g", "--size", "5"]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["passed"], true);
    let (code, recs) = records(&["embed", "equimorphism", "--pair", "psi1g-bhord", "--size", "5"]);
    assert_eq!(code, 0);
    assert_eq!(recs.len(), 4);
}

#[test]
fn patho_commands() {
    let (code, recs) = records(&["patho", "z-check", "--window", "-10,10"]);
    assert_eq!(code, 0);
    assert_eq!(recs.iter().find(|r| r.get("descent").is_some()).unwrap()["descent"].as_array().unwrap().len(), 10);
    assert!(run(&["patho", "successor", "--predilator", "bump:goodstein", "--size", "4"]).status.success());
    assert!(run(&["patho", "dense", "--r", "1/3"]).status.success());
    let dir = std::env::temp_dir().join(format!("fixord-tree-{}", std::process::id()));
    std::fs::write(&dir, "- i\n0 l\n0 l\n").unwrap();
    let o = run(&["patho", "tree", "--file", dir.to_str().unwrap()]);
    std::fs::remove_file(&dir).unwrap();
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn verify_all_passes_and_is_deterministic() {
    let strip = |recs: Vec<Value>| {
        recs.into_iter()
            .map(|mut r| {
                r.as_object_mut().unwrap().remove("millis");
                r
            })
            .collect::<Vec<_>>()
    };
    let (code, a) = records(&["verify", "--all", "--size", "4"]);
    assert_eq!(code, 0);
    assert_eq!(a.last().unwrap()["failed"], 0);
    let (_, b) = records(&["verify", "--all", "--size", "4"]);
    assert_eq!(strip(a), strip(b));
}

#[test]
fn exit_statuses() {
    assert_eq!(run(&["bogus"]).status.code(), Some(3));
    assert_eq!(run(&["notation", "cmp", "--system", "ot", "(v", "O"]).status.code(), Some(2));
    assert_eq!(run(&["goodstein", "run", "--seed", "x", "--steps", "1"]).status.code(), Some(2));
    assert_eq!(run(&["embed", "verify", "--map", "nope"]).status.code(), Some(2));
    // a descent longer than the fuel allows is a violation
    assert_eq!(run(&["patho", "z-check", "--window", "-3,3", "--descent", "5000"]).status.code(), Some(1));
    assert_eq!(run(&["fixpoint", "check", "--predilator", "const:Z"]).status.code(), Some(4));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
