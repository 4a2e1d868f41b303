use std::process::{Command, Output};

use serde_json::Value;

fn rotorlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rotorlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn overtwist_permutation() {
    let v = json(&rotorlab(&["otw", "gen", "3", "11", "3"]));
    let perm: Vec<u64> = v["permutation"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(perm, [4, 5, 6, 11, 10, 9, 3, 2, 1, 7, 8]);
    assert_eq!(v["pair"], serde_json::json!([3, 11]));
}

#[test]
fn full_horseshoe_psi() {
    let o = rotorlab(&["psi", "--alpha", "1/1", "--beta", "0/1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0/1 converged");
    let o = rotorlab(&["psi", "--alpha", "11/13", "--beta", "5/13"]);
    assert_eq!(stdout(&o).trim(), "1/3 converged");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["psi", "--alpha", "x", "--beta", "0"][..],
        &["nonsense"],
        &["otw", "gen", "3"],
        &["--grid", "1x5", "sweep"],
        &["--cap", "1", "psi", "--alpha", "1", "--beta", "0"],
    ] {
        let o = rotorlab(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn computational_errors_exit_1_with_json() {
    for (args, code) in [
        (&["psi", "--alpha", "1/4", "--beta", "0"][..], "outside_parameter_space"),
        (&["otw", "gen", "2", "4", "0"], "invalid_overtwist"),
        (&["pat", "pair", "1"], "trivial_cycle"),
        (&["stair", "2", "4"], "invalid_fraction"),
    ] {
        let o = rotorlab(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let err: Value = serde_json::from_slice(&o.stderr).expect("json on stderr");
        assert_eq!(err["error"], code, "{args:?}");
        assert!(err["message"].is_string());
    }
}

#[test]
fn sweep_is_deterministic_across_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_rotorlab"))
            .env("ROTORLAB_THREADS", threads)
            .args(["--grid", "7x5", "--cap", "8", "sweep"])
            .output()
            .unwrap()
    };
    let (a, b) = (run("1"), run("3"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("alpha_num,alpha_den,beta_num,beta_den,psi_num,psi_den,converged"));
    assert_eq!(lines.count(), 35);
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn staircase_json_and_svg() {
    let v = json(&rotorlab(&["stair", "1", "3"]));
    let corners: Vec<(String, String)> = serde_json::from_value(v["corners"].clone()).unwrap();
    assert_eq!(corners.first().unwrap(), &("1/1".to_string(), "5/13".to_string()));
    assert_eq!(corners.last().unwrap(), &("8/13".to_string(), "0/1".to_string()));
    assert_eq!(corners.len(), 5);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.svg");
    let o = rotorlab(&["stair", "1", "3", "--svg", path.to_str().unwrap()]);
    assert!(o.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(svg.contains("polyline"));
}

#[test]
fn pattern_json_round_trip() {
    let v = json(&rotorlab(&["--format", "json", "pat", "pair", "3,1,2"]));
    assert_eq!(v["pair"], serde_json::json!([1, 3]));
    assert_eq!(v["number"], "1/3");
    let v = json(&rotorlab(&["--format", "json", "pat", "interval", "3,1,4,2"]));
    let text = v.to_string();
    let back: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(back, v);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# small grid\ngrid = 3x2\ncap = 8\n").unwrap();
    let o = rotorlab(&["--config", cfg.to_str().unwrap(), "sweep"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 6);
    let o = rotorlab(&["--config", cfg.to_str().unwrap(), "--grid", "2x2", "sweep"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 4);
    std::fs::write(&cfg, "colour = red\n").unwrap();
    assert_eq!(rotorlab(&["--config", cfg.to_str().unwrap(), "sweep"]).status.code(), Some(2));
}

#[test]
fn lift_rotation_from_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("lift.json");
    std::fs::write(&spec, r#"{"breakpoints":["0","1/2","1"],"values":["1/3","1/2","4/3"],"degree":1}"#).unwrap();
    let v = json(&rotorlab(&["--format", "json", "lift", "rot", "--spec", spec.to_str().unwrap()]));
    assert!(v.to_string().contains("exact"), "{v}");
}

#[test]
fn quick_verify_passes() {
    let o = rotorlab(&["verify", "--quick", "--filter", "sharkovsky"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("[PASS] sharkovsky-order"));
}
