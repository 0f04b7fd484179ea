use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn dpbb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpbb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn file(dir: &TempDir, name: &str, text: &str) -> String {
    let p: PathBuf = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn divergence_pair_is_branching_but_not_dpbb() {
    let d = TempDir::new().unwrap();
    let p = file(&d, "p.proc", "rec X. (tau.X + a.0)\n");
    let q = file(&d, "q.proc", "tau.a.0");
    let o = dpbb(&["check", "--rel", "branching", &p, &q]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = dpbb(&["check", "--rel", "dpbb", &p, &q]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("INEQ "), "{}", stderr(&o));
}

#[test]
fn rooted_check_reports_the_root_clause() {
    let d = TempDir::new().unwrap();
    let p = file(&d, "p.proc", "a.0");
    let q = file(&d, "q.proc", "tau.a.0");
    assert_eq!(dpbb(&["check", "--rel", "dpbb", &p, &q]).status.code(), Some(0));
    let o = dpbb(&["check", "--rel", "rooted", &p, &q]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("INEQ root-move"), "{}", stderr(&o));
}

#[test]
fn prove_then_verify() {
    let d = TempDir::new().unwrap();
    let p = file(&d, "p.proc", "a.tau.b.0 # comment\n");
    let q = file(&d, "q.proc", "a.b.0");
    let cert = d.path().join("out.cert").to_string_lossy().into_owned();
    let o = dpbb(&["prove", "--cert", &cert, &p, &q]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = dpbb(&["verify", &cert]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "valid: a.tau.b.0 = a.b.0");
}

#[test]
fn prove_same_file_gives_refl() {
    let d = TempDir::new().unwrap();
    let p = file(&d, "p.proc", "rec X. a.X");
    let o = dpbb(&["prove", &p, &p]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "step 1 rec X. a.X = rec X. a.X by refl");
}

#[test]
fn prove_inequivalent() {
    let d = TempDir::new().unwrap();
    let p = file(&d, "p.proc", "a.0");
    let q = file(&d, "q.proc", "tau.a.0");
    let o = dpbb(&["prove", &p, &q]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("INEQ "));
}

#[test]
fn tampered_certificate_names_the_step() {
    let d = TempDir::new().unwrap();
    let c = file(
        &d,
        "bad.cert",
        "step 1 a.0 + b.0 = b.0 + a.0 by axiom S1 {E:=a.0, F:=b.0}\nstep 2 c.(a.0 + b.0) = c.(a.0 + a.0) by cong prefix 1 in c.◻\n",
    );
    let o = dpbb(&["verify", &c]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("step 2"), "{}", stderr(&o));
}

#[test]
fn std_writes_certificate() {
    let d = TempDir::new().unwrap();
    let p = file(&d, "p.proc", "rec X. (tau.X + a.0)");
    let o = dpbb(&["std", &p]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(!stdout(&o).trim().is_empty());
    let cert = format!("{p}.cert");
    assert_eq!(dpbb(&["verify", &cert]).status.code(), Some(0));
}

#[test]
fn lts_and_minimize_formats() {
    let d = TempDir::new().unwrap();
    let p = file(&d, "p.proc", "a.tau.b.0 + a.b.0 + W");
    let o = dpbb(&["lts", "--format", "aut", &p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("des (0, "));
    assert!(stdout(&o).contains("exp ("));
    let o = dpbb(&["minimize", &p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("des (0, 2, 3)"), "{}", stdout(&o));
    let o = dpbb(&["lts", "--format", "text", &p]);
    assert!(stdout(&o).starts_with("*0: "));
}

#[test]
fn errors_exit_two() {
    let d = TempDir::new().unwrap();
    let bad = file(&d, "bad.proc", "a.(0 +");
    let good = file(&d, "good.proc", "a.0");
    let o = dpbb(&["check", "--rel", "dpbb", &bad, &good]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: "));
    let o = dpbb(&["lts", "/nonexistent/file.proc"]);
    assert_eq!(o.status.code(), Some(2));
    let big = file(&d, "big.proc", "a.b.c.a.b.c.0");
    let o = dpbb(&["lts", "--budget", "3", &big]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("budget"));
}
