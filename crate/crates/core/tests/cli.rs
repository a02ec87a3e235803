use std::process::{Command, Output};

use serde_json::Value;

fn tiltlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tiltlab")).args(args).env_remove("TILTLAB_CACHE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim().to_string()
}

fn json(args: &[&str]) -> Value {
    let o = tiltlab(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn cmin_prints_degree_labels() {
    assert_eq!(stdout(&tiltlab(&["cmin", "--ell", "3", "--module", "L:3"])), r#"{"-1":[1],"0":[3],"1":[1]}"#);
    assert_eq!(stdout(&tiltlab(&["cmin", "--ell", "3", "--module", "T:4"])), r#"{"0":[4]}"#);
    assert_eq!(stdout(&tiltlab(&["cmin", "--ell", "3", "--module", "delta:3"])), r#"{"0":[3],"1":[1]}"#);
    let o = tiltlab(&["cmin", "--ell", "3", "--module", "L:9", "--window", "5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = tiltlab(&["cmin", "--ell", "3", "--module", "X:1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ideals_commands() {
    let all = json(&["ideals", "enumerate", "--ell", "3", "--window", "12"]);
    assert_eq!(all["count"], 3);
    let g = json(&["ideals", "generate", "3", "--ell", "3", "--window", "12"]);
    assert_eq!(g["set"], "{2..12}");
    assert_eq!(g["prime"], true);
    let g = json(&["ideals", "generate", "0", "--ell", "5", "--window", "12"]);
    assert_eq!(g["full"], true);
    assert_eq!(tiltlab(&["ideals", "enumerate", "--ell", "5", "--window", "4"]).status.code(), Some(2));
}

#[test]
fn alcove_commands() {
    assert_eq!(stdout(&tiltlab(&["alcove", "d", "--type", "A2", "--p", "5", "--lambda", "3,3"])), "1");
    assert_eq!(stdout(&tiltlab(&["alcove", "steinberg", "--type", "A1", "--p", "3", "--lambda", "7"])), "[[1],[2]]");
    assert_eq!(stdout(&tiltlab(&["alcove", "negligible", "--type", "A2", "--p", "5", "--lambda", "1,1"])), "false");
    assert_eq!(
        stdout(&tiltlab(&["alcove", "orbit", "--type", "A1", "--p", "3", "--lambda", "2", "--bound", "14"])),
        "[[2],[8],[14]]"
    );
    assert_eq!(tiltlab(&["alcove", "d", "--type", "A2", "--p", "5", "--lambda", "3"]).status.code(), Some(2));
}

#[test]
fn verify_suites_pass_and_are_deterministic() {
    let args = ["verify", "--suite", "bijection", "--ell", "3", "--window", "12", "--budget", "50", "--seed", "7"];
    let a = tiltlab(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&tiltlab(&args)));
    let r: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(r["passed"], true);
    assert_eq!(r["config"]["seed"], 7);

    let r = json(&["verify", "--suite", "lemmas", "--ell", "5", "--window", "10", "--budget", "30", "--seed", "1"]);
    assert_eq!(r["failures"].as_array().unwrap().len(), 0);

    let r = json(&["verify", "--suite", "alcove-cross", "--ell", "3", "--window", "12"]);
    let rows = r["cases"].as_array().unwrap();
    assert_eq!(rows.len(), 13);
    assert!(rows.iter().all(|c| c["regular"] == false || c["gfd"] == c["d"]));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# defaults\nell = 5\nwindow = 10\nsuite = \"two-out-of-three\"\nbudget = 4\nseed = 9\n").unwrap();
    let out = dir.path().join("report.json");
    let cfg_s = cfg.to_str().unwrap();
    let r = json(&["verify", "--config", cfg_s, "--ell", "3", "--output", out.to_str().unwrap()]);
    assert_eq!(r["config"]["ell"], 3);
    assert_eq!(r["config"]["budget"], 4);
    assert_eq!(r["config"]["seed"], 9);
    let samples = &r["cases"][0]["samples"];
    assert_eq!(samples.as_array().unwrap().len(), 4);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written, r);
}

#[test]
fn disk_cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["verify", "--suite", "lemmas", "--ell", "3", "--window", "6", "--budget", "6", "--seed", "2", "--cache", d];
    let cold = tiltlab(&args);
    let warm = tiltlab(&args);
    assert!(cold.status.success() && warm.status.success());
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_some());
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_str(&stdout(o)).unwrap();
        v["config"]["cache_dir"] = Value::Null;
        v
    };
    assert_eq!(strip(&cold), strip(&warm));
    assert_eq!(strip(&cold), strip(&tiltlab(&args[..args.len() - 2])));
}
