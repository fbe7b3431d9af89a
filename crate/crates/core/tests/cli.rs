use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mopls(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mopls"))
        .args(args)
        .current_dir(dir)
        .env_remove("MOPLS_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    })
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = mopls(&["construct", "min-mopls", "--n", "21", "--out", "m21"], dir.path());
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("147 filled cells"));
    assert!(dir.path().join("m21").exists());

    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("m21.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["outputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(manifest["parameters"]["construct"]["min-mopls"]["n"], 21);

    for check in ["maximal", "bound", "structure", "lemma2"] {
        let out = mopls(&["verify", check, "m21"], dir.path());
        assert_eq!(
            out.status.code(),
            Some(0),
            "verify {check}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let bound = json(&mopls(&["--json", "verify", "bound", "m21"], dir.path()));
    assert_eq!(bound["filled"], 147);
    assert_eq!(bound["tight"], true);
}

#[test]
fn round_trip_through_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    for n in [1usize, 3, 9, 10, 13, 34, 36] {
        for (name, format) in [("sq.txt", "grid"), ("sq.json", "json")] {
            if n > 35 && format == "grid" {
                continue;
            }
            let out = mopls(
                &[
                    "construct",
                    "min-mopls",
                    "--n",
                    &n.to_string(),
                    "--out",
                    name,
                    "--format",
                    format,
                ],
                dir.path(),
            );
            assert!(
                out.status.success(),
                "n = {n}: {}",
                String::from_utf8_lossy(&out.stderr)
            );
            let v = json(&mopls(&["--json", "verify", "maximal", name], dir.path()));
            assert_eq!(v["maximal"], true);
            assert_eq!(v["filled"].as_u64().unwrap() as usize, (n * n).div_ceil(3));
        }
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let infeasible = mopls(&["construct", "min-mopls", "--n", "6"], dir.path());
    assert_eq!(infeasible.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&infeasible.stderr).contains("order 2"));

    assert_eq!(
        mopls(&["construct", "k-ols", "--n", "6", "--k", "2"], dir.path())
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        mopls(&["construct", "min-mopls", "--n", "17"], dir.path())
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        mopls(&["construct", "min-mopls", "--n", "40"], dir.path())
            .status
            .code(),
        Some(4)
    );
    assert_eq!(mopls(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(mopls(&["construct", "min-mopls"], dir.path()).status.code(), Some(2));

    std::fs::write(dir.path().join("bad.txt"), "1 2\n2 x\n").unwrap();
    assert_eq!(
        mopls(&["verify", "maximal", "bad.txt"], dir.path()).status.code(),
        Some(3)
    );
    assert_eq!(
        mopls(&["verify", "maximal", "missing.txt"], dir.path()).status.code(),
        Some(3)
    );

    // valid but clashing: a repeated symbol in a row
    std::fs::write(dir.path().join("clash.txt"), "1 1\n- -\n").unwrap();
    assert_eq!(
        mopls(&["verify", "maximal", "clash.txt"], dir.path()).status.code(),
        Some(3)
    );

    std::fs::write(dir.path().join("open.txt"), "11 - -\n- - -\n- - -\n").unwrap();
    let open = mopls(&["--json", "verify", "maximal", "open.txt"], dir.path());
    assert_eq!(open.status.code(), Some(1));
    let record = json(&open);
    assert_eq!(record["maximal"], false);
    assert_eq!(record["witness"]["cell"]["row"], 0);
    assert_eq!(
        mopls(&["verify", "bound", "open.txt"], dir.path()).status.code(),
        Some(1)
    );
}

#[test]
fn structure_commands() {
    let dir = tempfile::tempdir().unwrap();
    mopls(&["construct", "min-mpls", "--n", "7", "--out", "p7.txt"], dir.path());
    let hr = json(&mopls(&["--json", "verify", "hr", "p7.txt"], dir.path()));
    assert_eq!(hr["ok"], true);
    assert_eq!(hr["block_orders"], serde_json::json!([3, 4]));

    mopls(&["construct", "min-mopls", "--n", "12", "--out", "m12.txt"], dir.path());
    let s = mopls(&["verify", "structure", "m12.txt"], dir.path());
    assert!(s.status.success());
    assert!(String::from_utf8_lossy(&s.stdout).contains("warning"));
}

#[test]
fn k_mopls_and_code_analysis() {
    let dir = tempfile::tempdir().unwrap();
    let out = mopls(
        &[
            "construct",
            "k-mopls",
            "--n",
            "8",
            "--k",
            "3",
            "--blocks",
            "4,4",
            "--out",
            "k3.txt",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let a = json(&mopls(&["--json", "code", "analyze", "k3.txt"], dir.path()));
    assert_eq!(a["metrics"]["min_distance"], 4);
    assert_eq!(a["metrics"]["covering_radius"], 3);
    assert_eq!(a["equivalence"]["holds"], true);

    mopls(
        &["construct", "k-ols", "--n", "3", "--k", "2", "--out", "o3.txt"],
        dir.path(),
    );
    let text = String::from_utf8(mopls(&["code", "analyze", "o3.txt"], dir.path()).stdout).unwrap();
    assert!(text.contains("ternary Hamming"));
    let words = String::from_utf8(mopls(&["code", "export", "o3.txt"], dir.path()).stdout).unwrap();
    assert_eq!(words.lines().count(), 9);
    assert_eq!(words.lines().next(), Some("1 1 1 1"));

    let out = mopls(&["code", "export", "o3.txt", "--out", "words.txt"], dir.path());
    assert!(out.status.success());
    assert!(dir.path().join("words.txt.manifest.json").exists());
}

#[test]
fn graph_export() {
    let dir = tempfile::tempdir().unwrap();
    mopls(&["construct", "min-mopls", "--n", "9", "--out", "m9.txt"], dir.path());
    let edges = String::from_utf8(mopls(&["export", "graph", "m9.txt"], dir.path()).stdout).unwrap();
    assert_eq!(edges.lines().filter(|l| !l.starts_with('#')).count(), 324);
    let dot = String::from_utf8(mopls(&["export", "graph", "m9.txt", "--format", "dot"], dir.path()).stdout).unwrap();
    assert!(dot.starts_with("graph"));
    assert!(dot.contains("s1_8"));
    let record = json(&mopls(&["--json", "export", "graph", "m9.txt"], dir.path()));
    assert_eq!(record["densities"][0]["density"], "2/3");
}

#[test]
fn search_with_resume() {
    let dir = tempfile::tempdir().unwrap();
    let partial = mopls(
        &[
            "search", "min", "--n", "3", "--k", "2", "--budget", "4", "--resume", "cp.json",
        ],
        dir.path(),
    );
    assert_eq!(partial.status.code(), Some(1));
    assert!(dir.path().join("cp.json").exists());
    let done = mopls(
        &[
            "--json", "search", "min", "--n", "3", "--k", "2", "--resume", "cp.json", "--out", "w.txt",
        ],
        dir.path(),
    );
    assert!(done.status.success());
    let r = json(&done);
    assert_eq!(r["min_f"], 3);
    assert_eq!(r["exhaustive"], true);
    let w = mopls(&["verify", "maximal", "w.txt"], dir.path());
    assert!(w.status.success());

    let bound = json(&mopls(&["--json", "search", "bound", "--n", "3"], dir.path()));
    assert_eq!(bound["ok"], true);
    assert_eq!(bound["min_f"], 3);
}

#[test]
fn thread_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = mopls(&["--threads", "2", "construct", "min-mopls", "--n", "9"], dir.path());
    assert!(out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_mopls"))
        .args(["construct", "min-mopls", "--n", "9"])
        .env("MOPLS_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
}
