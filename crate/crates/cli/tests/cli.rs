use std::path::PathBuf;
use std::process::{Command, Output};

use anyhow::{Context, Result};
use serde_json::Value;

const TREFOIL: &str = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";
const EIGHT_TEN: &str =
    "X(14,1,15,2) X(2,10,3,9) X(10,4,11,3) X(4,15,5,16) X(16,5,1,6) X(6,12,7,11) X(12,8,13,7) X(8,14,9,13)";

fn scratch(name: &str, contents: &str) -> Result<PathBuf> {
    let dir = std::env::temp_dir().join(format!("changemaker-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join(name);
    std::fs::write(&path, contents)?;
    Ok(path)
}

fn run(args: &[&str]) -> Result<Output> {
    Command::new(env!("CARGO_BIN_EXE_changemaker"))
        .args(args)
        .output()
        .context("running changemaker")
}

fn report(out: &Output) -> Result<Value> {
    serde_json::from_slice(&out.stdout).context("stdout is not a JSON report")
}

#[test]
fn trefoil_has_unknotting_number_one() -> Result<()> {
    let pd = scratch("trefoil.pd", TREFOIL)?;
    let out = run(&["unknotting-one", pd.to_str().unwrap()])?;
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out)?;
    assert_eq!(r["command"], "unknotting-one");
    assert_eq!(r["decision"], "yes");
    assert_eq!(r["result"]["determinant"], 3);
    assert_eq!(r["result"]["signature"], -2);
    for key in ["inputs", "budget", "timing_ms", "version"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    Ok(())
}

#[test]
fn eight_ten_exits_with_no() -> Result<()> {
    let pd = scratch("8_10.pd", EIGHT_TEN)?;
    let out = run(&["unknotting-one", pd.to_str().unwrap()])?;
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out)?;
    assert_eq!(r["decision"], "no");
    assert_eq!(r["result"]["determinant"], 27);
    Ok(())
}

#[test]
fn malformed_input_exits_with_two() -> Result<()> {
    let pd = scratch("broken.pd", "X(1,2,3)")?;
    let out = run(&["unknotting-one", pd.to_str().unwrap()])?;
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());

    let out = run(&["cm-build", "--slope", "4/6", "--stable", "2"])?;
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["goeritz", "/nonexistent/changemaker.pd"])?;
    assert_eq!(out.status.code(), Some(2));
    Ok(())
}

#[test]
fn exhausted_budget_exits_with_three() -> Result<()> {
    let pd = scratch("8_10-budget.pd", EIGHT_TEN)?;
    let out = run(&["--budget", "1", "unknotting-one", pd.to_str().unwrap()])?;
    assert_eq!(out.status.code(), Some(3));
    Ok(())
}

#[test]
fn cm_build_reports_discriminant() -> Result<()> {
    let out = run(&["cm-build", "--slope", "107/5", "--stable", "2,4"])?;
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out)?;
    assert_eq!(r["result"]["discriminant"], 107);
    assert_eq!(r["inputs"]["stable"], serde_json::json!([2, 4]));
    Ok(())
}

#[test]
fn quiet_mode_prints_nothing() -> Result<()> {
    let out = run(&["-q", "cm-build", "--slope", "43/2", "--stable", "2,4"])?;
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    Ok(())
}

#[test]
fn reports_are_deterministic() -> Result<()> {
    let pd = scratch("trefoil-det.pd", TREFOIL)?;
    let strip = |out: &Output| -> Result<Value> {
        let mut r = report(out)?;
        r.as_object_mut().unwrap().remove("timing_ms");
        Ok(r)
    };
    let a = run(&["unknotting-one", pd.to_str().unwrap()])?;
    let b = run(&["unknotting-one", pd.to_str().unwrap()])?;
    assert_eq!(strip(&a)?, strip(&b)?);
    let text = |v: Value| serde_json::to_string(&v).unwrap();
    assert_eq!(text(strip(&a)?), text(strip(&b)?));
    Ok(())
}

#[test]
fn reduce_accepts_a_saved_report() -> Result<()> {
    let pd = scratch("trefoil-reduce.pd", TREFOIL)?;
    let out = run(&["unknotting-one", pd.to_str().unwrap()])?;
    let saved = scratch("trefoil-report.json", std::str::from_utf8(&out.stdout)?)?;
    let out = run(&["reduce", saved.to_str().unwrap()])?;
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out)?;
    assert_eq!(r["command"], "reduce");
    assert_eq!(r["result"]["clasp_marked"], 3);

    let bogus = scratch("bogus.json", "{\"lattice\": 3}")?;
    assert_eq!(run(&["reduce", bogus.to_str().unwrap()])?.status.code(), Some(2));
    Ok(())
}

#[test]
fn surgery_and_torus_commands() -> Result<()> {
    let out = run(&["recover-stable", "--vseq", "1,0"])?;
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)?["result"]["stable"], serde_json::json!([2]));

    let out = run(&["d-inv", "--slope", "5", "--torus", "3,2"])?;
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out)?;
    assert_eq!(r["result"]["d"].as_array().unwrap().len(), 5);

    let out = run(&["char-slope", "--torus", "3,2", "--slope", "1/1"])?;
    assert!(matches!(out.status.code(), Some(0) | Some(1)));
    assert_eq!(report(&out)?["command"], "char-slope");
    Ok(())
}
