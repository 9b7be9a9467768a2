use std::process::{Command, Output};

fn stablemac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stablemac"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = stablemac(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn compute_examples() {
    assert_eq!(stdout(&["compute", "E", "--mu", "1"]), "x1\n");
    assert_eq!(
        stdout(&["compute", "weight", "--mu", "0,2"]),
        "[(2, \"q^2*t/1\")]\n"
    );
    assert_eq!(
        stdout(&["compute", "pair", "--mu", "1", "--lambda", "1,1"]),
        "x1 * P[1,1](x2+...)\n"
    );
    assert_eq!(
        stdout(&["compute", "weight", "--mu", "0,2", "--format", "json"]),
        "[[2,\"q^2*t/1\"]]\n"
    );
    assert_eq!(
        stdout(&["compute", "A", "--lambda", "2"]),
        "HLP: [2]: 1/1; [1,1]: 1/(q - t)\n"
    );
}

#[test]
fn empty_composition_literal() {
    assert_eq!(
        stdout(&["compute", "pair", "--mu", "empty", "--lambda", "2"]),
        "P[2](x1+...) + (1/(q - t)) * P[1,1](x1+...)\n"
    );
}

#[test]
fn engines_agree() {
    let a = stdout(&["compute", "E", "--mu", "0,1,2", "--engine", "hhl"]);
    let b = stdout(&["compute", "E", "--mu", "0,1,2", "--engine", "eigen"]);
    assert_eq!(a, b);
}

#[test]
fn output_is_deterministic() {
    let args = ["compute", "stableE", "--mu", "2,2", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = [
        "verify", "basis", "--k", "1", "--deg", "2", "--format", "json",
    ];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn usage_errors_exit_nonzero() {
    let out = stablemac(&["compute", "E", "--mu", "1,x"]);
    assert_eq!(out.status.code(), Some(2));
    let out = stablemac(&["compute", "A"]);
    assert_eq!(out.status.code(), Some(2));
    let out = stablemac(&["verify", "oracle-vs-hhl", "--max-size", "99"]);
    assert_eq!(out.status.code(), Some(2));
    let out = stablemac(&["verify", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_examples() {
    let s = stdout(&["verify", "daha-relations", "--n", "3", "--box", "-1..2"]);
    assert!(
        s.ends_with("daha-relations: pass (11 passed, 0 failed)\n"),
        "{s}"
    );
    let s = stdout(&["verify", "basis", "--k", "2", "--deg", "3"]);
    assert!(s.contains("pairs 14 dim 14 rank 14"), "{s}");
}

#[test]
fn verify_reports_failures() {
    let out = stablemac(&[
        "verify",
        "daha-relations",
        "--n",
        "2",
        "--perturbed",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "fail");
    let failing: Vec<_> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|c| c["detail"].is_string()));
}

#[test]
fn fixtures_check_and_corruption() {
    assert!(stablemac(&["fixtures", "check"]).status.success());
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert!(stablemac(&["fixtures", "freeze", "--dir", d])
        .status
        .success());
    assert!(stablemac(&["fixtures", "check", "--dir", d])
        .status
        .success());
    std::fs::write(
        dir.path().join("stable_e_1.txt"),
        "# source: published x\nsplit=1; 0\n",
    )
    .unwrap();
    let out = stablemac(&["fixtures", "check", "--dir", d]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("fail stable_e_1") && text.contains("+split=1; [1] ⊗ m[]: 1/1"),
        "{text}"
    );
}

#[test]
fn dump_fillings_formats() {
    let one = stdout(&["dump-fillings", "--mu", "1", "--n", "1"]);
    assert_eq!(one.lines().count(), 1);
    let two = stdout(&["dump-fillings", "--mu", "1,1", "--n", "2"]);
    assert!(two
        .lines()
        .all(|l| l.contains("(1,1):1") && l.contains("(2,1):2")));
    let csv = stdout(&[
        "dump-fillings",
        "--mu",
        "2",
        "--lambda",
        "1",
        "--limit",
        "--format",
        "csv",
    ]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("cells,maj,coinv,gamma"));
    // Exactly one use of label 2 in every constrained filling.
    for l in lines {
        assert_eq!(l.matches(":2").count(), 1, "{l}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.txt");
    let p = path.to_str().unwrap();
    assert!(stablemac(&["compute", "E", "--mu", "1", "--out", p])
        .status
        .success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "x1\n");
}
