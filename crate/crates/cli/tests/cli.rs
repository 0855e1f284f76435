use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn rflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rflow"))
        .args(args)
        .output()
        .expect("rflow runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn s_value(out: &Output, key: &str) -> Option<String> {
    let prefix = format!("s {key} ");
    stdout(out)
        .lines()
        .find_map(|l| l.strip_prefix(&prefix).map(str::to_string))
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_rf_two_parallel_prints_one() {
    let inst = fixture("two_parallel.rf");
    for extra in [
        vec![],
        vec!["--arith", "exact"],
        vec!["--mode", "newton"],
        vec!["--arith", "exact", "--mode", "newton", "--threads", "2"],
    ] {
        let mut args = vec!["solve-rf", path(&inst)];
        args.extend(extra.iter().copied());
        let out = rflow(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(s_value(&out, "value").as_deref(), Some("1"), "{args:?}");
    }
}

#[test]
fn unknown_subcommand_exits_two() {
    let out = rflow(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn invalid_threads_exits_two() {
    let out = rflow(&["solve-rf", "--threads", "0", path(&fixture("two_parallel.rf"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn evaluate_rejects_plan_over_budget() {
    let out = rflow(&[
        "evaluate",
        path(&fixture("two_parallel.rf")),
        path(&fixture("over_budget.sol")),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn evaluate_feasible_plan() {
    let out = rflow(&[
        "evaluate",
        path(&fixture("two_parallel.rf")),
        path(&fixture("half_steal.sol")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(s_value(&out, "value").as_deref(), Some("1"));
    assert_eq!(s_value(&out, "plan-cost").as_deref(), Some("1"));
    assert_eq!(s_value(&out, "plan-value").as_deref(), Some("3/2"));
}

#[test]
fn solver_report_feeds_back_into_evaluate() {
    let dir = tempfile::tempdir().unwrap();
    let inst = fixture("two_parallel.rf");
    let out = rflow(&["solve-rf", "--arith", "exact", path(&inst)]);
    let report = dir.path().join("report.sol");
    std::fs::write(&report, stdout(&out)).unwrap();
    let eval = rflow(&["evaluate", path(&inst), path(&report)]);
    assert_eq!(eval.status.code(), Some(0));
    assert_eq!(s_value(&eval, "value"), s_value(&out, "value"));
}

#[test]
fn parse_errors_exit_one_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.rf");
    std::fs::write(&bad, "p rf 2 1\nk 1 2\na 1 1 2 1 one 0\nb 0\n").unwrap();
    let out = rflow(&["solve-rf", path(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let missing = rflow(&["solve-rf", path(&dir.path().join("absent.rf"))]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn json_report_schema() {
    let out = rflow(&[
        "--json",
        "solve-rf",
        "--arith",
        "exact",
        path(&fixture("two_parallel.rf")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["value"], "1");
    assert_eq!(v["arith"], "exact");
    assert_eq!(v["mode"], "enumerate");
    assert_eq!(v["digest"].as_str().unwrap().len(), 64);
    assert_eq!(v["details"]["lambda"], "1/2");
    assert_eq!(v["paths"].as_array().unwrap().len(), 2);
}

#[test]
fn breakpoint_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bp.csv");
    let flag = format!("--report-breakpoints={}", path(&csv));
    let out = rflow(&["solve-rf", "--arith", "exact", path(&fixture("two_parallel.rf")), &flag]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(s_value(&out, "breakpoints-csv").as_deref(), Some(path(&csv)));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text, "arc_id,c_f,lambda,lp_value\n2,2,1/2,1\n1,1,1,1\n");

    let copy = dir.path().join("inst.rf");
    std::fs::copy(fixture("two_parallel.rf"), &copy).unwrap();
    let out = rflow(&["solve-rf", path(&copy), "--report-breakpoints"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("inst.breakpoints.csv").exists());
}

#[test]
fn budgeted_matches_oracle() {
    let inst = fixture("two_parallel.rf");
    let solved = rflow(&["solve-rf", "--budgeted", "--arith", "exact", path(&inst)]);
    let oracle = rflow(&["oracle", "--problem", "budgeted", path(&inst)]);
    assert_eq!(s_value(&solved, "value").as_deref(), Some("1/2"));
    assert_eq!(s_value(&oracle, "value").as_deref(), Some("1/2"));
}

#[test]
fn design_matches_oracle() {
    let inst = fixture("design.rf");
    let solved = rflow(&["solve-design", "--arith", "exact", path(&inst)]);
    let oracle = rflow(&["oracle", "--problem", "design", path(&inst)]);
    assert_eq!(solved.status.code(), Some(0));
    assert_eq!(s_value(&solved, "value").as_deref(), Some("3/2"));
    assert_eq!(s_value(&oracle, "value"), s_value(&solved, "value"));
    let text = stdout(&solved);
    assert!(text.contains("cstar 1 2\n") && text.contains("cstar 2 2\n"));
    let float = rflow(&["solve-design", path(&inst)]);
    assert_eq!(s_value(&float, "value").as_deref(), Some("1.5"));
}

#[test]
fn design_without_flow_budget_fails() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("no_bf.rf");
    let text = std::fs::read_to_string(fixture("two_parallel.rf")).unwrap();
    std::fs::write(&inst, text.replace("b 1 1", "b 1")).unwrap();
    let out = rflow(&["solve-design", path(&inst)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("flow player budget"));
}

#[test]
fn mf_reduction_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (name, value) in [("feasible.mf", "1"), ("infeasible.mf", "2/3")] {
        let out_file = dir.path().join(name.replace(".mf", ".rf"));
        let gen = rflow(&[
            "gen-reduction",
            "--kind",
            "mf",
            path(&fixture(name)),
            "-o",
            path(&out_file),
        ]);
        assert_eq!(gen.status.code(), Some(0));
        let text = std::fs::read_to_string(&out_file).unwrap();
        assert!(text.starts_with("c generated by rflow gen-reduction --kind mf\n"));
        let solved = rflow(&["solve-rf", "--arith", "exact", path(&out_file)]);
        assert_eq!(s_value(&solved, "value").as_deref(), Some(value), "{name}");
    }
}

#[test]
fn gen_reduction_kind_mismatch() {
    let out = rflow(&["gen-reduction", "--kind", "adp", path(&fixture("feasible.mf"))]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn adp_witness_evaluates_to_one_over_m() {
    let dir = tempfile::tempdir().unwrap();
    let gen = rflow(&["gen-reduction", "--kind", "adp", path(&fixture("separate.adp"))]);
    assert_eq!(gen.status.code(), Some(0));
    let text = stdout(&gen);
    assert!(text.contains("c M 5\n"));
    let inst = dir.path().join("protect.rf");
    std::fs::write(&inst, &text).unwrap();
    let out = rflow(&["evaluate", path(&inst), path(&fixture("separate_witness.sol"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(s_value(&out, "value").as_deref(), Some("1/5"));
}

#[test]
fn oracle_lists_breakpoints() {
    let out = rflow(&["oracle", path(&fixture("two_parallel.rf"))]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("s breakpoint - 2 1/2 1\n"));
    assert!(text.contains("s paths 2\n"));
}
