use std::process::{Command, Output};

use serde_json::Value;
use unitary_defect::fourier::fourier_matrix;
use unitary_defect::matcore::io::{to_json, to_text};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unitary-defect"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn defect_of_catalog_entries() {
    let o = run(&["defect", "fourier:6", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(
        (v["N"].as_u64(), v["defect"].as_u64(), v["isolated"].as_bool()),
        (Some(6), Some(4), Some(false))
    );
    for key in [
        "method",
        "rank",
        "gap_ratio",
        "spanning_dim",
        "zero_count",
        "bound_b",
        "uncertain",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }

    let o = run(&["defect", "s6", "--method", "all", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Vec<Value> = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v.len(), 4);
    assert!(v.iter().all(|r| r["defect"] == 0 && r["isolated"] == true));
}

#[test]
fn defect_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let f = fourier_matrix(4).unwrap();
    let txt = dir.path().join("f4.txt");
    let json = dir.path().join("f4.json");
    std::fs::write(&txt, to_text(&f)).unwrap();
    std::fs::write(&json, to_json(&f)).unwrap();
    for p in [&txt, &json] {
        let o = run(&["defect", p.to_str().unwrap(), "--method", "Dg"]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("defect 1 "));
    }
}

#[test]
fn input_errors_exit_one() {
    for args in [
        &["defect", "badfile"][..],
        &["defect", "jn:4"],
        &["defect", "fourier:4", "--method", "X"],
        &["fourier-table", "--max", "65", "--numeric"],
        &["family", "--p", "4", "--k", "1"],
        &["family", "--p", "2", "--k", "1"],
        &["pcm"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn narrow_gap_exits_two() {
    // threshold 0.02 * sigma_max * 36 lands between two close singular values of M
    let o = run(&["defect", "fourier:6", "--tol", "0.02", "--json"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["uncertain"], true);
    assert_eq!(v["candidate_defects"].as_array().unwrap().len(), 2);
}

#[test]
fn fourier_tables() {
    let o = run(&["fourier-table", "--max", "32"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "N\tdefect_closed\tdefect_numeric\tagree");
    assert_eq!(lines[12], "12\t17\t-\t-");
    assert_eq!(lines.len(), 33);

    let o = run(&["fourier-table", "--max", "16", "--numeric"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with("\ttrue")));

    let o = run(&["fourier-table", "--max", "100"]);
    assert!(stdout(&o).lines().any(|l| l == "64\t129\t-\t-"));
}

#[test]
fn family_commands() {
    let o = run(&["family", "--p", "2", "--k", "3", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let meta: Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
    assert_eq!(meta["dim"], 5);
    assert!(!out.contains("FAIL"));

    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "family",
        "--p",
        "3",
        "--k",
        "2",
        "--construction",
        "pcm",
        "--sample",
        "5",
        "--seed",
        "7",
        "--emit-basis",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let samples: Vec<Value> = out.lines().skip(1).map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(samples.len(), 5);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 4);
    // the same seed gives the same members
    assert_eq!(
        stdout(&run(&[
            "family",
            "--p",
            "3",
            "--k",
            "2",
            "--sample",
            "5",
            "--seed",
            "7",
            "--construction",
            "pcm"
        ])),
        out
    );
}

#[test]
fn pcm_commands() {
    let o = run(&["pcm", "--n", "6", "--random", "--seed", "1", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(v["verify_residual"].as_f64().unwrap() <= 1e-10);
    assert_eq!(v["pcm"]["N"], 6);

    let v: Value = serde_json::from_str(stdout(&run(&["pcm", "--n", "2"])).trim()).unwrap();
    assert_eq!(v["parameter_count"], 3);

    let o = run(&["pcm", "--n", "12", "--random", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["parameter_count"], 40);
}
