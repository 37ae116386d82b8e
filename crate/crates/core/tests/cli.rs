use std::process::Command;

use sl_trust::audit::TableReport;
use sl_trust::cli::{run, EXIT_DISCREPANT, EXIT_IO, EXIT_OK, EXIT_USAGE};
use sl_trust::{combine, combine_traced, CombinationTrace, Opinion};

fn sl(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sl-trust").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn op(b: f64, d: f64, u: f64) -> Opinion {
    Opinion::new(b, d, u).unwrap()
}

#[test]
fn combine_prints_library_result_exactly() {
    let (code, out, _) = sl(&["combine", "0.4,0.3,0.3", "0.5,0.5,0"]);
    assert_eq!(code, EXIT_OK);
    let w: Opinion = serde_json::from_str(&out).unwrap();
    assert_eq!(w, combine(&op(0.4, 0.3, 0.3), &op(0.5, 0.5, 0.0)));
    assert!(w.max_abs_diff(&op(0.2, 0.65, 0.15)) < 1e-12);
}

#[test]
fn combine_trace_round_trips() {
    let (code, out, _) = sl(&["combine", "--trace", "0.4,0.3,0.3", r#"{"belief":0.5,"disbelief":0.0,"uncertainty":0.5}"#]);
    assert_eq!(code, EXIT_OK);
    let trace: CombinationTrace = serde_json::from_str(&out).unwrap();
    assert_eq!(trace, combine_traced(&op(0.4, 0.3, 0.3), &op(0.5, 0.0, 0.5)));
}

#[test]
fn pure_belief_confidence_echoes_trust() {
    let (_, out, _) = sl(&["combine", "0.4,0.3,0.3", "1,0,0"]);
    let w: Opinion = serde_json::from_str(&out).unwrap();
    assert_eq!(w, op(0.4, 0.3, 0.3));
}

#[test]
fn opinions_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    std::fs::write(&path, r#"{"belief": 0.4, "disbelief": 0.3, "uncertainty": 0.3}"#).unwrap();
    let (code, out, _) = sl(&["combine", path.to_str().unwrap(), "0,1,0"]);
    assert_eq!(code, EXIT_OK);
    let w: Opinion = serde_json::from_str(&out).unwrap();
    assert!(w.max_abs_diff(&Opinion::PURE_DISBELIEF) < 1e-12);
}

#[test]
fn parse_errors_name_the_field() {
    let (code, _, err) = sl(&["combine", r#"{"belief":0.5,"disbelief":0.5}"#, "1,0,0"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("uncertainty"), "{err}");
    let (code, _, err) = sl(&["combine", "0.4,0.3,0.3", r#"{"belief":-0.5,"disbelief":0.5,"uncertainty":1.0}"#]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("belief"), "{err}");
    let (code, _, _) = sl(&["combine", "{not json", "1,0,0"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn op_command() {
    let (code, out, _) = sl(&["op", "cfuse", "0,0,1", "0.3,0.3,0.4"]);
    assert_eq!(code, EXIT_OK);
    let w: Opinion = serde_json::from_str(&out).unwrap();
    assert!(w.max_abs_diff(&op(0.3, 0.3, 0.4)) < 1e-15);

    let (code, out, _) = sl(&["op", "add", "0.8,0.2,0", "0.8,0.2,0"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["undefined"], "belief sum exceeds 1");

    let (code, _, err) = sl(&["op", "unknown", "1,0,0", "1,0,0"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("unknown operator"));
}

#[test]
fn opinion_validate() {
    let (code, out, _) = sl(&["opinion", "validate", "0.6,0.4,0"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kind"], "DOGMATIC");
    assert_eq!(v["expectation"], 0.6);
    let (code, _, _) = sl(&["opinion", "validate", "0.5,0.5,0.1"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn audit_command() {
    let (code, _, _) = sl(&["audit", "--samples", "0"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = sl(&["audit", "--format", "xml"]);
    assert_eq!(code, EXIT_USAGE);

    let (code, out, _) = sl(&["audit", "--samples", "300", "--seed", "3", "--format", "json"]);
    let report: TableReport = serde_json::from_str(&out).unwrap();
    assert_eq!(report.rows.len(), 11);
    assert_eq!(report.seed, 3);
    assert!(report.low_confidence);
    let expected = if report.matches_published() { EXIT_OK } else { EXIT_DISCREPANT };
    assert_eq!(code, expected);

    let (_, table, _) = sl(&["audit", "--samples", "300", "--seed", "3"]);
    assert_eq!(table.lines().filter(|l| l.contains(" | ")).count(), 13);
    assert!(table.contains("Discounting (⊗)"));
}

#[test]
fn audit_seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_sl-trust"))
        .args(["audit", "--samples", "50", "--format", "json"])
        .env("SL_TRUST_SEED", "1234")
        .output()
        .unwrap();
    let report: TableReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.seed, 1234);
}

#[test]
fn plot_command() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.svg");
    let out_s = out.to_str().unwrap();
    let args = [
        "plot", "--out", out_s, "--point", "T=0.4,0.3,0.3@blue", "--point", "C=0.5,0.5,0@green",
        "--point", "W=0.2,0.65,0.15@red", "--segment", "0.4,0.3,0.3:0.2,0.65,0.15",
    ];
    let (code, _, err) = sl(&args);
    assert_eq!(code, EXIT_OK, "{err}");
    let first = std::fs::read(&out).unwrap();
    let svg = String::from_utf8(first.clone()).unwrap();
    assert_eq!(svg.matches("<line ").count(), 1);
    assert_eq!(svg.matches("<circle ").count(), 3);
    assert!(svg.contains(r#"version="1.1""#));
    sl(&args);
    assert_eq!(std::fs::read(&out).unwrap(), first);

    let (code, _, _) = sl(&["plot", "--out", out_s, "--width", "50", "--point", "B=1,0,0"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = sl(&["plot", "--point", "B=1,0,0"]);
    assert_eq!(code, EXIT_USAGE);
    let bad = dir.path().join("missing").join("x.svg");
    let (code, _, _) = sl(&["plot", "--out", bad.to_str().unwrap(), "--point", "B=1,0,0"]);
    assert_eq!(code, EXIT_IO);
}

#[test]
fn plot_from_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    let out = dir.path().join("b.svg");
    let text = serde_json::json!({
        "points": [{"label": "B", "opinion": {"belief": 1.0, "disbelief": 0.0, "uncertainty": 0.0}}],
        "width_px": 400,
        "output_path": out,
    });
    std::fs::write(&spec, text.to_string()).unwrap();
    let (code, _, err) = sl(&["plot", "--spec", spec.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{err}");
    let svg = std::fs::read_to_string(&out).unwrap();
    // 10% margin; B is the lower-left vertex.
    assert!(svg.contains(r#"<circle cx="40.000" cy="317.128""#), "{svg}");
}

#[test]
fn help_lists_exit_codes() {
    let (code, out, _) = sl(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("Exit codes"));
}
