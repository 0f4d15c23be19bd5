use std::process::{Command, Output};

fn lsq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lsq")).args(args).output().expect("run lsq")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn enumerate_then_classify() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("semi7.cat");
    let species = dir.path().join("semi7.species");
    let o = lsq(&["enumerate", "--order", "7", "--symmetry", "semisymmetric", "--out", cat.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("isomorphism 41 classes"));
    let text = std::fs::read_to_string(&cat).unwrap();
    assert!(text.starts_with("lsq-catalog 1\n"));
    let o = lsq(&["classify", "--in", cat.to_str().unwrap(), "--relation", "species", "--out", species.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("species 28 classes"));
}

#[test]
fn raw_output_and_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let raw = dir.path().join("ts8.txt");
    let ck = dir.path().join("ts8.ck");
    let args = |out: &str| {
        vec![
            "enumerate".to_string(),
            "--order=8".into(),
            "--symmetry=totally-symmetric".into(),
            "--raw".into(),
            format!("--out={out}"),
            format!("--checkpoint={}", ck.display()),
        ]
    };
    let run = |out: &std::path::Path| {
        let a = args(out.to_str().unwrap());
        lsq(&a.iter().map(String::as_str).collect::<Vec<_>>())
    };
    assert_eq!(run(&raw).status.code(), Some(0));
    let first = std::fs::read_to_string(&raw).unwrap();
    assert_eq!(first.lines().filter(|l| *l == "8").count(), 13);
    assert!(std::fs::read_to_string(&ck).unwrap().contains("done"));
    // A finished checkpoint replays to the same result.
    let again = dir.path().join("ts8b.txt");
    assert_eq!(run(&again).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&again).unwrap(), first);
}

#[test]
fn table_and_count() {
    let o = lsq(&["table", "--name", "semi", "--max-order", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    assert_eq!(csv.lines().count(), 5);
    let o = lsq(&["table", "--name", "totsym", "--max-order", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.is_object() || v.is_array());
    let o = lsq(&["count", "--order", "6", "--symmetry", "symmetric"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in ["isomorphism=491", "reduced=456", "loops=8"] {
        assert!(out.lines().any(|l| l == line), "missing {line} in\n{out}");
    }
}

#[test]
fn verify_passes_and_reports_json() {
    let o = lsq(&["verify", "--suite", "fixtures"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("fixtures: passed"));
    let o = lsq(&["verify", "--suite", "artzy", "--loops-max", "7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_with_no_instances_is_a_claim_failure() {
    // Every order up to 2 is skipped or trivial, so some claims have no instances.
    let o = lsq(&["verify", "--suite", "artzy", "--loops-max", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(lsq(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lsq(&["table", "--name", "semi", "--max-order", "40"]).status.code(), Some(2));
    assert_eq!(lsq(&["count", "--order", "5", "--symmetry", "any"]).status.code(), Some(2));
    let o = lsq(&["classify", "--in", "/nonexistent/x.cat", "--relation", "species", "--out", "/tmp/never"]);
    assert_eq!(o.status.code(), Some(3));
}
