use std::fs;
use std::process::{Command, Output};

fn fuzzyseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuzzyseq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const ANALYZE_BASE: [&str; 16] = [
    "analyze",
    "--sequence",
    "order-gt-one",
    "--limit",
    "auto",
    "--m",
    "1",
    "--epsilon",
    "1",
    "--theta",
    "powers2",
    "--rmax",
    "12",
    "--kind",
    "density",
    "--no-meta",
];

#[test]
fn analyze_half_block_series() {
    let out = fuzzyseq(&[&ANALYZE_BASE[..], &["--beta", "1"]].concat());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "r,k_r,h_r,kind,value");
    assert_eq!(lines.len(), 1 + 12 + 1);
    for (r, line) in lines[1..13].iter().enumerate() {
        let k = 1u64 << (r + 1);
        let h = if r == 0 { 2 } else { k / 2 };
        assert_eq!(*line, format!("{},{k},{h},lacunary-density,0.5", r + 1));
    }
    assert_eq!(lines[13], "verdict,,,bounded-away,0.5");
}

#[test]
fn analyze_gates_beta_above_one() {
    let out = fuzzyseq(&[&ANALYZE_BASE[..], &["--beta", "1.5"]].concat());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--allow-beta-gt-1"));
    let out = fuzzyseq(&[&ANALYZE_BASE[..], &["--beta", "1.5", "--allow-beta-gt-1"]].concat());
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn analyze_modulus_on_a_constant_sequence() {
    let seq = r#"{"rules":[{"indexClass":"all","value":"tri(0,1,2)"}]}"#;
    let out = fuzzyseq(&[
        "analyze",
        "--sequence",
        seq,
        "--beta",
        "1",
        "--rmax",
        "12",
        "--kind",
        "modulus",
        "--modulus",
        "xover1px",
        "--no-meta",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 13);
    assert!(rows[..12].iter().all(|l| l.ends_with(",modulus-mean,0")));
    assert_eq!(rows[12], "verdict,,,tends-to-zero,0");
}

#[test]
fn analyze_config_errors_exit_2() {
    for args in [
        vec![
            "analyze",
            "--sequence",
            "nope",
            "--beta",
            "1",
            "--rmax",
            "10",
        ],
        vec![
            "analyze",
            "--sequence",
            "order-gt-one",
            "--limit",
            "tri(1,2",
            "--beta",
            "1",
            "--rmax",
            "10",
        ],
        vec![
            "analyze",
            "--sequence",
            "order-gt-one",
            "--theta",
            "fibonacci",
            "--beta",
            "1",
            "--rmax",
            "10",
        ],
        vec![
            "analyze",
            "--sequence",
            "order-gt-one",
            "--beta",
            "1",
            "--rmax",
            "10",
            "--modulus",
            "sqrt",
        ],
        vec![
            "analyze",
            "--sequence",
            "order-gt-one",
            "--beta",
            "1",
            "--rmax",
            "10",
            "--kind",
            "mean",
        ],
        vec![
            "analyze",
            "--sequence",
            "order-gt-one",
            "--beta",
            "0",
            "--rmax",
            "10",
        ],
    ] {
        let out = fuzzyseq(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn analyze_writes_meta_unless_suppressed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("series.csv");
    let out = fuzzyseq(&[
        "analyze",
        "--sequence",
        "thm-2.5-strict",
        "--beta",
        "1",
        "--rmax",
        "10",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# tool=fuzzyseq "));
    assert_eq!(text.lines().nth(1), Some("r,k_r,h_r,kind,value"));
}

#[test]
fn reproduce_unknown_id_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = fuzzyseq(&["reproduce", "nope", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn reproduce_writes_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = fuzzyseq(&[
        "reproduce",
        "exp-beta-gt-1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("exp-beta-gt-1: pass"));
    let csv = fs::read_to_string(dir.path().join("exp-beta-gt-1.csv")).unwrap();
    assert!(csv.starts_with("# tool=fuzzyseq "));
    let json = fs::read_to_string(dir.path().join("exp-beta-gt-1.json")).unwrap();
    assert!(json.contains("\"meta\""));

    let out = fuzzyseq(&[
        "reproduce",
        "exp-beta-gt-1",
        "--no-meta",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("exp-beta-gt-1.csv")).unwrap();
    assert!(csv.starts_with("experiment,cell,r,"));
    assert!(!fs::read_to_string(dir.path().join("exp-beta-gt-1.json"))
        .unwrap()
        .contains("\"meta\""));
}

#[test]
fn reproduce_custom_spec_reports_failures_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("wrong.json");
    fs::write(
        &spec,
        r#"{"id":"exp-wrong","title":"wrong expectation","sequence":{"example":"order-gt-one"},
            "theta":{"rule":"powers","base":2},"grid":{"beta":[1]},"estimators":["density"],"horizon":12,
            "expectations":[{"match":{},"verdicts":["tends-to-zero"]}]}"#,
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let out = fuzzyseq(&[
        "reproduce",
        "--spec",
        spec.to_str().unwrap(),
        "--no-meta",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("exp-wrong: fail"));
    assert!(out_dir.join("exp-wrong.csv").exists());

    fs::write(&spec, r#"{"id":"x"}"#).unwrap();
    let out = fuzzyseq(&[
        "reproduce",
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_suites() {
    let out = fuzzyseq(&["check", "metric", "--seed", "42", "--count", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("seed 42\n"));

    let out = fuzzyseq(&["check", "fuzzy-axioms", "--seed", "7", "--count", "500"]);
    assert_eq!(out.status.code(), Some(0));

    let out = fuzzyseq(&["check", "modulus", "--name", "xsq"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("witness pair (1, 1)"));

    let out = fuzzyseq(&["check", "modulus"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out)
            .lines()
            .filter(|l| l.ends_with("cases)"))
            .count(),
        4
    );

    assert_eq!(
        fuzzyseq(&["check", "modulus", "--name", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(fuzzyseq(&["check", "everything"]).status.code(), Some(2));
}

#[test]
fn check_output_is_deterministic() {
    let a = fuzzyseq(&["check", "metric", "--seed", "3", "--count", "200"]);
    let b = fuzzyseq(&["check", "metric", "--seed", "3", "--count", "200"]);
    assert_eq!(a.stdout, b.stdout);
}
