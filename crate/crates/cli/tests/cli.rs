use std::process::{Command, Output};

fn burnside(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_burnside")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_b_at_one() {
    let o = burnside(&["eval", "--function", "b", "--x", "1", "--no-header"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("function,x,value"));
    assert!(lines.next().unwrap().starts_with("b,1.0,-0.0271361"));
}

#[test]
fn certify_am_writes_f1_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let o = burnside(&["certify-am", "--function", "f1", "--max-depth", "16", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let limits: Vec<&str> = cert["steps"].as_array().unwrap().iter().map(|s| s["limit"].as_str().unwrap()).collect();
    assert!(limits.windows(4).any(|w| w == ["10", "74", "231", "408"]), "{limits:?}");
}

#[test]
fn exit_codes() {
    assert_eq!(burnside(&["bogus"]).status.code(), Some(64));
    assert_eq!(burnside(&["eval", "--function", "nope", "--x", "1"]).status.code(), Some(64));
    assert_eq!(burnside(&["certify-am", "--function", "f2", "--max-depth", "3"]).status.code(), Some(3));
    assert_eq!(burnside(&["certify-am", "--expr", "t - 1"]).status.code(), Some(2));
    assert_eq!(burnside(&["verify-cm", "--function", "b"]).status.code(), Some(2));
    assert_eq!(burnside(&["verify-cm", "--theorem1", "--all", "--digits", "20"]).status.code(), Some(64));
    assert_eq!(burnside(&["verify-lcm", "--theorem1", "--all"]).status.code(), Some(64));
    assert_eq!(burnside(&["--help"]).status.code(), Some(0));
}

#[test]
fn theorem1_summary_has_eight_rows() {
    let o = burnside(&["verify-cm", "--theorem1", "--all", "--no-header"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.contains(",holds,true,false,true,")));
}

#[test]
fn theorem2_items_by_name() {
    let o = burnside(&["verify-lcm", "--theorem2", "--item", "5", "--item", "theorem2-fn8", "--no-header"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("theorem2-fn5,") && out.contains("theorem2-fn8,"));
}

#[test]
fn output_is_reproducible_without_header() {
    let args = ["bounds", "--summary", "--no-header"];
    let (a, b) = (burnside(&args), burnside(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("spec,asserted,points,violations,min_margin\n"));
    let with = stdout(&burnside(&["bounds", "--summary"]));
    assert!(with.starts_with("# burnside "));
}

#[test]
fn compare_reports_lu_as_asymptotic_winner() {
    let o = burnside(&["compare", "--a", "h_constants_burnside", "--b", "lu_jnt", "--k", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["asymptotic_winner"], "lu_jnt");
}

#[test]
fn regions_and_report() {
    assert_eq!(burnside(&["regions", "--representatives"]).status.code(), Some(0));
    let o = burnside(&["report", "--criterion", "13", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r[0]["pass"], true);
}
