use std::process::{Command, Output};

fn dzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dzeta"))
        .args(args)
        .env_remove("DZ_BITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_json_reports_zeta_and_ratio() {
    let o = dzeta(&[
        "eval",
        "--s1",
        "-20.5,0.3",
        "--s2",
        "-10.25",
        "--method",
        "em",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["method"], "em");
    assert_eq!(doc["bits"], 128);
    assert!(doc["zeta"]["re"].is_string());
    assert!(doc["ratio"].is_object());
}

#[test]
fn routes_agree_through_cli() {
    let get = |method: &str| {
        let o = dzeta(&[
            "eval", "--s1", "-15.5", "--s2", "-12.25", "--method", method, "--json",
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
        let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        doc["ratio"]["re"].as_str().unwrap()[..20].to_string()
    };
    assert_eq!(get("em"), get("fe"));
}

#[test]
fn bits_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_dzeta"))
        .args([
            "eval", "--s1", "3", "--s2", "2.5", "--method", "direct", "--json",
        ])
        .env("DZ_BITS", "200")
        .output()
        .unwrap();
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["bits"], 200);
}

#[test]
fn domain_error_exits_two() {
    let o = dzeta(&[
        "eval", "--s1", "-3", "--s2", "-2", "--method", "direct", "--json",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["error"]["kind"], "domain");
}

#[test]
fn bad_sweep_parameters_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let o = dzeta(&[
        "sweep",
        "--r2",
        "1.5",
        "--M-start",
        "21",
        "--M-end",
        "81",
        "--points",
        "4",
        "--N",
        "0",
        "--epsilon",
        "0.1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn sweep_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    for ext in ["csv", "json"] {
        let runs: Vec<Vec<u8>> = (0..2)
            .map(|i| {
                let path = dir.path().join(format!("run{i}.{ext}"));
                let o = dzeta(&[
                    "sweep",
                    "--r2",
                    "0.35",
                    "--M-start",
                    "21",
                    "--M-end",
                    "45",
                    "--points",
                    "4",
                    "--N",
                    "0,1",
                    "--epsilon",
                    "0.1",
                    "--method",
                    "em",
                    "--out",
                    path.to_str().unwrap(),
                ]);
                assert_eq!(
                    o.status.code(),
                    Some(0),
                    "{}",
                    String::from_utf8_lossy(&o.stderr)
                );
                assert!(stdout(&o).contains("N = 1: slope"));
                std::fs::read(path).unwrap()
            })
            .collect();
        assert_eq!(runs[0], runs[1]);
    }
    let csv = std::fs::read_to_string(dir.path().join("run0.csv")).unwrap();
    assert!(csv.starts_with("M,N,method,re_oracle,im_oracle,re_asym,im_asym,abs_err,rel_err"));
    assert_eq!(csv.lines().count(), 1 + 8);
}

#[test]
fn verify_quick_passes() {
    let o = dzeta(&["verify", "--level", "quick"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}
