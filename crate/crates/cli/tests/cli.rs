use std::process::{Command, Output};

fn trirec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trirec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = trirec(&a);
    assert_eq!(o.status.code(), Some(0), "{args:?}");
    serde_json::from_slice(&o.stdout).expect("single json document")
}

#[test]
fn seq_rows() {
    let doc = json(&["seq", "-p", "1", "-q", "-1", "-n", "6"]);
    assert_eq!(doc["command"], "seq");
    let recs = doc["records"].as_array().unwrap();
    assert_eq!(recs.len(), 7);
    assert_eq!(recs[5], serde_json::json!({"n": 5, "u": "5", "w": "11"}));
    assert_eq!(recs[6], serde_json::json!({"n": 6, "u": "8", "w": "18"}));

    let csv = stdout(&trirec(&["seq", "-p", "1", "-q", "-1", "-n", "0", "--format", "csv"]));
    assert_eq!(csv, "n,u,w\n0,0,2\n");
}

#[test]
fn seq_rational_parameters() {
    let doc = json(&["seq", "-p", "1/2", "-q", "-1/3", "-n", "3"]);
    // u_2 = p, u_3 = p^2 - q
    assert_eq!(doc["records"][2]["u"], "1/2");
    assert_eq!(doc["records"][3]["u"], "7/12");
}

#[test]
fn phi_coefficients() {
    let doc = json(&["phi", "-p", "1", "-q", "-1", "-n", "2"]);
    let vals: Vec<&str> = doc["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["value"].as_str().unwrap())
        .collect();
    assert_eq!(vals, ["1", "-2", "-2", "1"]);
    assert!(stdout(&trirec(&["phi", "-p", "1", "-q", "-1", "-n", "1"])).starts_with("[-1, -1, 1]\n"));
}

#[test]
fn phi_factor_lists_quadratic_and_sign() {
    let doc = json(&["phi", "-p", "1", "-q", "-1", "-n", "4", "--factor"]);
    let recs = doc["records"].as_array().unwrap();
    let part = |name: &str| -> Vec<String> {
        recs.iter()
            .filter(|r| r["part"] == name)
            .map(|r| r["value"].as_str().unwrap().to_string())
            .collect()
    };
    assert_eq!(part("f_n"), ["1", "-7", "1"]);
    assert_eq!(part("fibonacci_sign"), ["-1"]);
    assert_eq!(part("galois_group"), ["Z2"]);
    assert_eq!(part("galois_d"), ["5"]);
    assert_eq!(part("f_n_divides"), ["true"]);
}

#[test]
fn binom_and_gauss() {
    let doc = json(&["binom", "-p", "1", "-q", "-1", "-r", "5", "-k", "2"]);
    assert_eq!(doc["records"][0]["value"], "15");
    assert_eq!(doc["records"][0]["quotient"], "15");

    let doc = json(&["binom", "-p", "1", "-q", "1", "-r", "6", "-k", "3"]);
    assert_eq!(doc["records"][0]["value"], "-2");
    assert!(doc["records"][0]["quotient"].is_null());

    assert_eq!(stdout(&trirec(&["gauss", "-m", "4", "-k", "2"])), "[1,1,2,1,1]\n");
    let csv = stdout(&trirec(&["gauss", "-m", "6", "-k", "3", "--cyclotomic", "--format", "csv"]));
    assert!(csv.contains("cyclotomic,4,1\n"));
    assert!(csv.contains("cyclotomic,6,1\n"));
    assert!(!csv.contains("cyclotomic,3,"));
}

#[test]
fn verify_records_and_exit_codes() {
    let o = trirec(&["verify", "--p-range", "-3:3", "--q-range", "-3:3", "--n-max", "50", "--identities", "prop34"]);
    assert_eq!(o.status.code(), Some(0));

    let args = ["verify", "--identities", "eq25_zeitlin_paper_sign", "--n-max", "5", "--a-max", "2"];
    let o = trirec(&args);
    assert_eq!(o.status.code(), Some(0), "diagnostics do not affect the exit code");
    let doc = json(&args);
    let rec = &doc["records"][0];
    assert_eq!(rec["status"], "fail");
    assert_eq!(rec["first_counterexample"]["n"], 1);
    assert_eq!(rec["first_counterexample"]["a"], 1);
    assert_eq!(rec["first_counterexample"]["lhs"], "9/5");

    let mut strict = args.to_vec();
    strict.push("--strict-diagnostics");
    assert_eq!(trirec(&strict).status.code(), Some(1));
}

#[test]
fn verify_record_count_is_identities_times_grid() {
    let doc = json(&["verify", "--p-range", "-1:1", "--q-range", "0:1", "--n-max", "5", "--identities", "prop34,cor35"]);
    assert_eq!(doc["records"].as_array().unwrap().len(), 12);
    let skipped = doc["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == "skipped")
        .count();
    // cor35 needs q = 1
    assert_eq!(skipped, 3);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["seq", "-p", "x"],
        vec!["seq", "-p", "0.5"],
        vec!["binom", "-r", "3", "-k", "5"],
        vec!["gauss", "-m", "2", "-k", "3"],
        vec!["verify", "--identities", "nosuch"],
        vec!["verify", "--p-range", "3:1"],
        vec!["verify", "--n-max", "0"],
        vec!["bogus"],
        vec![],
    ] {
        assert_eq!(trirec(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["verify", "--n-max", "20", "--a-max", "3", "--format", "json"],
        vec!["verify", "--n-max", "20", "--a-max", "3", "--format", "csv"],
        vec!["phi", "-p", "3", "-q", "2", "-n", "6", "--factor"],
    ] {
        let a = trirec(&args);
        let b = trirec(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn timestamps_stay_out_of_records() {
    let plain = json(&["seq", "-n", "3"]);
    let stamped = json(&["seq", "-n", "3", "--timestamps"]);
    assert_eq!(plain["records"], stamped["records"]);
    assert!(plain.get("meta").is_none());
    assert!(stamped["meta"]["generated_at_unix"].is_u64());

    let csv = trirec(&["seq", "-n", "1", "--format", "csv", "--timestamps"]);
    assert_eq!(stdout(&csv), "n,u,w\n0,0,2\n1,1,1\n");
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("trirec-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("run.conf");
    std::fs::write(&file, "# seq settings\np = 2\nq = 1\nn-max = 3\nformat = csv\n").unwrap();
    let path = file.to_str().unwrap();

    let o = trirec(&["seq", "--config", path]);
    assert_eq!(stdout(&o), "n,u,w\n0,0,2\n1,1,2\n2,2,2\n3,3,2\n");

    let o = trirec(&["seq", "--config", path, "-p", "3"]);
    assert_eq!(stdout(&o), "n,u,w\n0,0,2\n1,1,3\n2,3,7\n3,8,18\n");

    std::fs::write(&file, "factor = maybe\n").unwrap();
    assert_eq!(trirec(&["phi", "-n", "2", "--config", path]).status.code(), Some(2));
    assert_eq!(trirec(&["seq", "--config", "/nonexistent/trirec.conf"]).status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}
