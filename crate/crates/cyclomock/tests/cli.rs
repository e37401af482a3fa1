use std::path::Path;
use std::process::{Command, Output};

use cyclomock::records::{resume, Record};

fn run(args: &[&str], out_dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cyclomock"));
    cmd.args(args).env_remove("CYCLOMOCK_OUT");
    if let Some(dir) = out_dir {
        cmd.env("CYCLOMOCK_OUT", dir);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_exact_value() {
    let o = run(&["eval", "--fn", "phi", "--n", "3"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "phi(zeta_3) = -2*z\n");
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("# cyclomock "));

    let o = run(&["eval", "--fn", "phi", "--n", "7"], None);
    assert_eq!(stdout(&o), "phi(zeta_7) = 2 - z^5\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["eval", "--fn", "phi", "--n", "4"], None).status.code(), Some(2));
    assert_eq!(run(&["eval", "--fn", "nope", "--n", "3"], None).status.code(), Some(2));
    assert_eq!(run(&["scan", "--fn", "phi", "--n-min", "3", "--n-max", "1"], None).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "products", "--n", "5", "--format", "records"], None).status.code(), Some(2));
    assert_eq!(run(&["eval", "--fn", "rho_plain", "--n", "3"], None).status.code(), Some(1));
    assert_eq!(run(&["verify", "--suite", "identities", "--n-max", "9"], None).status.code(), Some(0));
    assert_eq!(run(&["scan", "--all", "--n-max", "9"], None).status.code(), Some(0));
}

#[test]
fn relative_out_resolves_under_env_dir() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["scan", "--fn", "phi", "--fn", "psi", "--n-max", "7", "--format", "records", "--out", "s.jsonl"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let recs = resume(&dir.path().join("s.jsonl")).unwrap();
    assert_eq!(recs.len(), 8);
    assert!(recs.iter().all(|r| matches!(r, Record::Scan(s) if !s.is_zero)));
}

#[test]
fn sum_csv() {
    let o = run(&["sum", "--fn", "phi", "--fn", "sigma_neg", "--n", "5", "--format", "csv"], None);
    assert_eq!(stdout(&o), "fn,n,sum\nphi,5,0/1\nsigma_neg,5,0/1\n");
}

#[test]
fn cli_resume_skips_completed_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("scan.jsonl");
    let log_s = log.to_str().unwrap();
    let first = run(&["scan", "--fn", "phi", "--n-max", "7", "--resume", log_s], None);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(resume(&log).unwrap().len(), 4);

    let second = run(&["scan", "--fn", "phi", "--fn", "mu", "--n-max", "9", "--resume", log_s], None);
    assert_eq!(second.status.code(), Some(0));
    let recs = resume(&log).unwrap();
    assert_eq!(recs.len(), 10);
    assert!(String::from_utf8_lossy(&second.stderr).contains("skipped 4"));
}
