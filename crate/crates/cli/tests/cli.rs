//! End-to-end command-line tests against the built binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn decmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_decmat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("decmat-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn grp_roots_and_center() {
    let out = decmat(&["grp", "roots", "--type", "F4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("positive-roots 24"));

    let out = decmat(&["grp", "center", "--type", "F4", "--parabolic", "2,3,4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("center 7"));

    let out = decmat(&["grp", "roots", "--type", "E8"]);
    assert_eq!(out.status.code(), Some(1), "unsupported type is a usage error");
}

#[test]
fn grp_dcreps_lengths() {
    let out = decmat(&[
        "grp", "dcreps", "--type", "F4", "--left", "2,3,4", "--right", "2,3,4",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("5 representatives"));
    for l in ["length  0", "length  1", "length  5", "length  8", "length 15"] {
        assert!(text.contains(l), "missing {l}");
    }
}

#[test]
fn ct_validate_exit_codes() {
    let good = fixtures().join("s3.ct");
    let out = decmat(&["ct", "validate", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let dir = tempdir("ct");
    let bad = dir.join("bad.ct");
    let text = std::fs::read_to_string(&good)
        .unwrap()
        .replace("char 2 | 0 | -1", "char 2 | 1 | -1");
    std::fs::write(&bad, text).unwrap();
    let out = decmat(&["ct", "validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "orthogonality failure exits 2");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("orthogonality"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn condense_chop_pipeline_is_deterministic() {
    let dir = tempdir("pipeline");
    let cond = dir.join("cond");
    let out = decmat(&[
        "st",
        "condense",
        "--type",
        "G2",
        "--parabolic",
        "2",
        "--out",
        cond.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest = std::fs::read_to_string(cond.join("manifest.txt")).unwrap();
    assert!(manifest.contains("type G2"));

    let mut files: Vec<String> = std::fs::read_dir(&cond)
        .unwrap()
        .map(|e| e.unwrap().path().display().to_string())
        .filter(|p| p.ends_with(".mtx"))
        .collect();
    files.sort();
    let mut args = vec!["mtx".to_string(), "chop".to_string(), "--seed".into(), "9".into()];
    args.extend(files.iter().cloned());
    let run = |args: &[String]| {
        let v: Vec<&str> = args.iter().map(String::as_str).collect();
        decmat(&v)
    };
    let first = run(&args);
    assert!(first.status.success());
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout, "same seed gives identical reports");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn st_build_gate() {
    let dir = tempdir("gate");
    let out = decmat(&[
        "st",
        "build",
        "--type",
        "B2",
        "--gate",
        "3",
        "--out",
        dir.join("st").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4), "gate exceeded exits 4");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn decomp_run_writes_outputs() {
    let dir = tempdir("decomp");
    let runbook = fixtures().join("b6_desk.run");
    let out = decmat(&[
        "decomp",
        "run",
        runbook.to_str().unwrap(),
        "--out",
        dir.join("out").to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["decmat.txt", "decmat.mtxz", "prooflog.txt", "relations.txt", "manifest.txt"] {
        assert!(dir.join("out").join(f).exists(), "missing {f}");
    }
    let z = std::fs::read_to_string(dir.join("out/decmat.mtxz")).unwrap();
    assert!(z.starts_with("MTXZ 46 17"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn verify_paper_passes_without_external_data() {
    let out = decmat(&["verify-paper"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ok   principal-block-matrix"));
    assert!(text.contains("ok   faithful-block-matrix"));
    assert!(text.contains("skip external table-backed runs"));
}
