use serde_json::Value;
use std::path::Path;
use std::process::Command;

fn grouplab(args: &[&str], dir: &Path) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_grouplab")).args(args).current_dir(dir).output().unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (report, out.status.code().unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn vcdim_of_subgroup_translates_is_one() {
    let dir = tempfile::tempdir().unwrap();
    let (r, code) = grouplab(&["vcdim", "--group", "cyclic:6", "--set", "0,3"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(r["task"], "vcdim");
    assert_eq!(r["result"]["vc"], 1);
    assert_eq!(r["result"]["status"]["kind"], "exact");
    assert_eq!(r["result"]["family_size"], 3);
    assert_eq!(r["timings_ms"], serde_json::json!({}));
    assert_eq!(r["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn witness_for_three_has_eight_shattering_permutations() {
    let dir = tempfile::tempdir().unwrap();
    let (r, code) = grouplab(&["witness", "--k", "3"], dir.path());
    assert_eq!(code, 0);
    let res = &r["result"];
    assert_eq!(res["verified"], true);
    assert_eq!(res["shattered"], true);
    assert_eq!(res["group"], "S_4");
    assert_eq!(res["parameters"].as_array().unwrap().len(), 8);
    let membership = res["membership"].as_array().unwrap();
    assert_eq!(membership.len(), 3);
    assert!(membership.iter().all(|row| row.as_array().unwrap().len() == 8));
}

#[test]
fn out_of_range_epsilon_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let (r, code) = grouplab(&["approx", "--group", "cyclic:16", "--set", "0,1", "--epsilon", "3/2"], dir.path());
    assert_eq!(code, 2);
    assert_eq!(r["errors"][0]["kind"], "validation");
    assert!(r["result"].is_null());
}

#[test]
fn exhausted_budget_is_a_refusal() {
    let dir = tempfile::tempdir().unwrap();
    let (r, code) = grouplab(&["vcdim", "--group", "cyclic:64", "--set", "0,1,5,9,20", "--budget", "2"], dir.path());
    assert_eq!(code, 3);
    assert_eq!(r["errors"][0]["kind"], "budget");
    assert_eq!(r["result"]["status"]["kind"], "unknown");
}

#[test]
fn unknown_group_kind_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let (_, code) = grouplab(&["describe", "--group", "klein:4"], dir.path());
    assert_eq!(code, 2);
}

#[test]
fn describe_small_groups() {
    let dir = tempfile::tempdir().unwrap();
    for (spec, order, abelian, center) in
        [("cyclic:12", 12, true, 12), ("symmetric:4", 24, false, 1), ("dihedral:4", 8, false, 2)]
    {
        let (r, code) = grouplab(&["describe", "--group", spec], dir.path());
        assert_eq!(code, 0, "{spec}");
        assert_eq!(r["result"]["order"], order, "{spec}");
        assert_eq!(r["result"]["abelian"], abelian, "{spec}");
        assert_eq!(r["result"]["center_size"], center, "{spec}");
    }
}

#[test]
fn batch_runs_every_task() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "batch.json",
        r#"{"group":{"kind":"cyclic","n":12},"set":{"kind":"explicit","elements":[0,4,8]},
            "tasks":[{"task":"vcdim"},{"task":"vcdim","params":{"mode":"right"}},{"task":"vcdim","set":{"kind":"interval","start":0,"len":5}}]}"#,
    );
    let (r, code) = grouplab(&["batch", "--config", &cfg], dir.path());
    assert_eq!(code, 0);
    assert_eq!(r["result"]["summary"]["total"], 3);
    assert_eq!(r["result"]["summary"]["ok"], 3);
    let tasks = r["result"]["tasks"].as_array().unwrap();
    assert_eq!(tasks[0]["report"]["result"]["vc"], 1);
    assert_eq!(tasks[1]["report"]["result"]["vc"], 1);
    assert!(tasks[2]["report"]["result"]["vc"].as_u64().unwrap() >= 1);
}

#[test]
fn batch_with_a_failed_task_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "batch.json",
        r#"{"group":{"kind":"cyclic","n":6},"set":{"kind":"explicit","elements":[0,3]},"tasks":[{"task":"vcdim"},{"task":"nope"}]}"#,
    );
    let (r, code) = grouplab(&["batch", "--config", &cfg], dir.path());
    assert_eq!(code, 1);
    assert_eq!(r["result"]["summary"]["failed"], 1);
    assert_eq!(r["result"]["tasks"][0]["status"], "ok");
    assert_eq!(r["result"]["tasks"][1]["exit_code"], 2);
}

#[test]
fn empty_batch_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "empty.json", r#"{"tasks":[]}"#);
    let (_, code) = grouplab(&["batch", "--config", &cfg], dir.path());
    assert_eq!(code, 2);
}

#[test]
fn unknown_config_fields_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.json", r#"{"group":{"kind":"cyclic","n":6},"colour":"red"}"#);
    let (_, code) = grouplab(&["describe", "--config", &cfg], dir.path());
    assert_eq!(code, 2);
}

#[test]
fn regularity_writes_csv_rows() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("rows.csv");
    let report_path = dir.path().join("report.json");
    let (_, code) = grouplab(
        &[
            "regularity",
            "--group",
            "z2:4",
            "--set",
            "0,1,2,3",
            "--epsilon",
            "1/10",
            "--csv",
            csv_path.to_str().unwrap(),
            "--out",
            report_path.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(code, 0);
    let mut rows = csv::Reader::from_path(&csv_path).unwrap();
    assert_eq!(rows.headers().unwrap(), vec!["coset_rep", "size", "density", "regular"]);
    let records: Vec<_> = rows.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 4);
    assert!(records.iter().all(|r| &r[3] == "true"));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(report_path).unwrap()).unwrap();
    assert_eq!(report["result"]["nontrivial_found"], true);
    assert_eq!(report["result"]["report"]["irregular_count"], 0);
}

#[test]
fn same_seed_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["approx", "--group", "cyclic:128", "--set", "0,1,2,3,40,41", "--epsilon", "1/5", "--seed", "7"];
    let (a, _) = grouplab(&args, dir.path());
    let (b, _) = grouplab(&args, dir.path());
    assert_eq!(a, b);
    assert_eq!(a["inputs"]["seeds"]["task"], 7);
}
