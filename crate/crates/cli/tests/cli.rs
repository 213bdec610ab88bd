use std::process::{Command, Output};

fn scod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_g2_all_suites_passes() {
    let o = scod(&["verify", "--type", "G2", "--suite", "all", "--mode", "exhaustive"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn verify_f4_selected_suites() {
    let o = scod(&["verify", "-t", "F4", "--suite", "prod,neg,codim", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["pass"], true);
    let prod = &v["suites"][0];
    assert_eq!(prod["suite"], "prod");
    assert_eq!(prod["instances"], 1152);
    assert!(prod.get("wall_ms").is_none());
}

#[test]
fn verify_a1_codim_reports_gap_three() {
    let o = scod(&["verify", "-t", "A1", "--suite", "codim", "--parabolic", "{}", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let cov = &v["suites"][0]["coverage"];
    assert_eq!(cov["cover_gap_3"], 1);
    assert_eq!(cov["covers"], 1);
}

#[test]
fn timings_only_on_request() {
    let o = scod(&["verify", "-t", "A2", "--suite", "prod", "--format", "json", "--timings"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["suites"][0]["wall_ms"].is_number());
}

#[test]
fn sample_mode_without_seed_is_a_usage_error() {
    let o = scod(&["verify", "-t", "A3", "--mode", "sample"]);
    assert_eq!(o.status.code(), Some(2));
    let o = scod(&["verify", "-t", "A3", "--suite", "prod,neg", "--mode", "sample", "--seed", "3", "--sample-size", "40"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(scod(&["verify", "-t", "Z9"]).status.code(), Some(2));
    assert_eq!(scod(&["verify", "-t", "A2", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(scod(&["scod", "-t", "A2", "--parabolic", "7"]).status.code(), Some(2));
    assert_eq!(scod(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn exhaustive_refuses_groups_over_the_cap() {
    let o = scod(&["verify", "-t", "E8", "--suite", "prod"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn single_element_rerun() {
    let o = scod(&["verify", "-t", "B3", "--suite", "neg,order", "--element", "s1s2s3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["element"], "s1s2s3");
    assert_eq!(v["suites"][1]["method"], "element");
}

#[test]
fn scod_tables() {
    let o = scod(&["scod", "-t", "A1", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "min_word,max_word,length,codim,tau_pairing,scod\ne,e,0,1,2,3\ns1,s1,1,0,0,0\n"
    );
    let o = scod(&["scod", "-t", "A2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let s: Vec<i64> = v.as_array().unwrap().iter().map(|r| r["scod"].as_i64().unwrap()).collect();
    assert_eq!(s, [11, 8, 8, 3, 3, 0]);
    let o = scod(&["scod", "-t", "A3", "--parabolic", "1,2", "--format", "csv"]);
    let s: Vec<i64> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(s.len(), 4);
    assert!(s.windows(2).all(|p| p[0] > p[1]));
}

#[test]
fn diagram_numbers_nodes_from_one() {
    let o = scod(&["scod", "-t", "B3", "--show-diagram"]);
    let out = stdout(&o);
    assert!(out.contains("node 1:") && out.contains("node 3:"));
    assert!(out.contains("2 === 3"));
}

#[test]
fn poset_exports() {
    let o = scod(&["poset", "-t", "A2"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches(" -> ").count(), 8);
    assert!(dot.contains("scod=11 | p=5"));
    let o = scod(&["poset", "-t", "A2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["covers"].as_array().unwrap().len(), 8);
    assert_eq!(v["perversity_ok"], true);
}

#[test]
fn basis_labels() {
    let count = |args: &[&str]| {
        let o = scod(args);
        stdout(&o).lines().count() - 1
    };
    assert_eq!(count(&["basis", "-t", "A2", "--format", "csv"]), 6);
    assert_eq!(count(&["basis", "-t", "A2", "--parabolic", "1", "--format", "csv"]), 3);
    assert_eq!(count(&["basis", "-t", "A1", "--box", "-1:1", "--format", "csv"]), 6);
    assert_eq!(scod(&["basis", "-t", "A2", "--box", "0:1,2"]).status.code(), Some(0));
    assert_eq!(scod(&["basis", "-t", "A2", "--box", "1,2,3"]).status.code(), Some(2));
}

#[test]
fn torus_check_cases() {
    let o = scod(&["torus-check", "--n", "1", "--m", "0", "--trials", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = scod(&["torus-check", "--n", "5", "--m", "2", "--trials", "200", "--seed", "42", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["passed"], 200);
    let o = scod(&["torus-check", "--n", "12", "--m", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("guard"));
}

#[test]
fn roots_json_describes_g2() {
    let o = scod(&["roots", "-t", "G2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cartan"], serde_json::json!([[2, -1], [-3, 2]]));
    assert_eq!(v["positive_roots"].as_array().unwrap().len(), 6);
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("scod-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a2.csv");
    let o = scod(&["scod", "-t", "A2", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("min_word"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn thread_count_does_not_change_json() {
    let run = |t: &str| scod(&["--threads", t, "verify", "-t", "B3", "-t", "G2", "--format", "json"]).stdout;
    assert_eq!(run("1"), run("3"));
    let env_run = Command::new(env!("CARGO_BIN_EXE_scod"))
        .env("SCOD_THREADS", "2")
        .args(["verify", "-t", "B3", "-t", "G2", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(env_run.stdout, run("1"));
}
