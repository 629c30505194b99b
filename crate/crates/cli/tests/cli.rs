use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qstirling"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

fn field<'a>(header: &[String], row: &'a [String], name: &str) -> &'a str {
    let i = header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"));
    &row[i]
}

#[test]
fn csv_output_is_deterministic() {
    let args = ["sweep", "--preset", "fig6", "--format", "csv"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = ["surface", "--preset", "fig9", "--format", "csv"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn csv_and_json_agree() {
    let base = [
        "sweep", "--medium", "ho", "--axis", "squeeze", "--from", "0", "--to", "1", "--steps", "6",
    ];
    let (header, rows) = csv(&stdout(&[&base[..], &["--format", "csv"]].concat()));
    let json: Value =
        serde_json::from_str(&stdout(&[&base[..], &["--format", "json"]].concat())).unwrap();
    let jrows = json["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(jrows.len(), 6);
    for (row, j) in rows.iter().zip(jrows) {
        for (h, v) in header.iter().zip(row) {
            match &j[h] {
                Value::Number(n) => {
                    assert_eq!(v.parse::<f64>().unwrap(), n.as_f64().unwrap(), "{h}")
                }
                Value::Null => assert!(v.is_empty(), "{h}"),
                Value::Bool(b) => assert_eq!(v, &b.to_string()),
                Value::String(s) => assert_eq!(v, s),
                other => panic!("unexpected {other}"),
            }
        }
    }
}

#[test]
fn single_step_sweep_matches_cycle() {
    let cycle = stdout(&["cycle", "--r", "0.4", "--omega2", "3", "--format", "csv"]);
    let sweep = stdout(&[
        "sweep", "--r", "0.4", "--omega2", "3", "--axis", "squeeze", "--from", "0.4", "--to",
        "0.4", "--steps", "1", "--format", "csv",
    ]);
    let (ch, cr) = csv(&cycle);
    let (sh, sr) = csv(&sweep);
    assert_eq!(sr.len(), 1);
    for (h, v) in ch.iter().zip(&cr[0]) {
        assert_eq!(field(&sh, &sr[0], h), v, "{h}");
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(
        &cfg,
        "# engine\nmedium = ho\nomega2 = 4\nr = 0.5\nformat = csv\n",
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let (h, rows) = csv(&stdout(&["cycle", "--config", cfg, "--omega2", "6"]));
    assert_eq!(field(&h, &rows[0], "medium"), "ho");
    assert_eq!(field(&h, &rows[0], "omega2"), "6");
    assert_eq!(field(&h, &rows[0], "r"), "0.5");

    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "omgea2 = 4\n").unwrap();
    assert!(!run(&["cycle", "--config", bad.to_str().unwrap()])
        .status
        .success());
}

#[test]
fn output_file_receives_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let p = path.to_str().unwrap();
    let out = run(&["cycle", "--r", "0.2", "--format", "json", "-o", p]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(Path::new(p)).unwrap()).unwrap();
    assert_eq!(v["rows"][0]["r"].as_f64(), Some(0.2));
}

#[test]
fn bad_input_exits_nonzero() {
    for args in [
        &["cycle", "--medium", "qubit"][..],
        &["cycle", "--omega1", "2", "--omega2", "1"],
        &["cycle", "--th", "1", "--tc", "2"],
        &["cycle", "--r", "-1"],
        &["cycle", "--bogus"],
        &["cycle", "-o", "/nonexistent/dir/out.csv"],
        &[
            "sweep", "--axis", "squeeze", "--from", "0", "--to", "1", "--steps", "0",
        ],
    ] {
        let out = run(args);
        assert!(!out.status.success(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn degenerate_cycle_is_reported() {
    let out = stdout(&["cycle", "--omega1", "2", "--omega2", "2"]);
    assert!(out.contains("degenerate"), "{out}");
}

#[test]
fn squeezed_oscillator_can_beat_carnot() {
    let (h, rows) = csv(&stdout(&[
        "cycle", "--medium", "ho", "--omega1", "1", "--omega2", "2", "--th", "1.05", "--tc", "1",
        "--r", "0.5", "--format", "csv",
    ]));
    let eta: f64 = field(&h, &rows[0], "eta").parse().unwrap();
    let carnot: f64 = field(&h, &rows[0], "eta_carnot").parse().unwrap();
    assert!(eta > carnot, "eta {eta} carnot {carnot}");
    assert_eq!(field(&h, &rows[0], "surpasses_carnot"), "true");
}

#[test]
fn verify_passes_and_catches_injected_error() {
    let ok = run(&["verify"]);
    assert!(
        ok.status.success(),
        "{}",
        String::from_utf8_lossy(&ok.stdout)
    );
    let loose = run(&["verify", "--tolerance-scale", "1e-3"]);
    assert!(loose.status.success());
    if cfg!(debug_assertions) {
        let bad = run(&["verify", "--inject-sign-error"]);
        assert_eq!(bad.status.code(), Some(1));
        assert!(String::from_utf8_lossy(&bad.stdout).contains("FAIL"));
    }
}

#[test]
fn limits_error_shrinks_deeper_in_the_regime() {
    for (medium, regime) in [
        ("tls", "low"),
        ("tls", "high"),
        ("ho", "low"),
        ("ho", "high"),
    ] {
        let (h, rows) = csv(&stdout(&[
            "limits", "--medium", medium, "--regime", regime, "--r", "0.5", "--format", "csv",
        ]));
        let errs: Vec<f64> = rows
            .iter()
            .map(|r| field(&h, r, "rel_error").parse::<f64>().unwrap())
            .collect();
        assert!(
            errs.windows(2).all(|w| w[1] <= w[0]),
            "{medium} {regime}: {errs:?}"
        );
    }
}

#[test]
fn optimize_reports_a_maximum() {
    let (h, rows) = csv(&stdout(&["optimize", "--r", "0", "--format", "csv"]));
    let row = &rows[0];
    assert_eq!(field(&h, row, "objective"), "W_exact");
    let at: f64 = field(&h, row, "omega2_at_max").parse().unwrap();
    assert!(at > 1.0 && at < 100.0);
    assert!(field(&h, row, "W_max").parse::<f64>().unwrap() > 0.0);
}
