use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["spherezeta"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = spherezeta_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn records(stdout: &str) -> Vec<Value> {
    stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("spherezeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn printed_and_corrected_s3_forms() {
    let (code, out, _) = run(&["zeta", "--n", "3", "--s", "2", "--form", "printed"]);
    assert_eq!(code, 0);
    let printed = num(&records(&out)[0]["values"]["value"]);
    assert!((printed - 0.2020569031595942).abs() < 1e-12, "{printed}");

    let (_, out, _) = run(&["zeta", "--n", "3", "--s", "2", "--form", "closed"]);
    let closed = num(&records(&out)[0]["values"]["value"]);
    assert!((closed - (std::f64::consts::PI.powi(2) / 6.0 - 1.0)).abs() < 1e-12);

    let (_, out, _) = run(&["zeta", "--n", "3", "--s", "2", "--tol", "1e-9"]);
    let series = num(&records(&out)[0]["values"]["value"]);
    assert!((series - closed).abs() < 1e-8);
}

#[test]
fn s_grid_emits_one_record_per_point() {
    let (code, out, _) = run(&["zeta", "--n", "1", "--s-grid", "1:2:0.25"]);
    assert_eq!(code, 0);
    let recs = records(&out);
    assert_eq!(recs.len(), 5);
    // n = 1 has Z = 2ζ_R(2s)
    let last = num(&recs[4]["values"]["value"]);
    assert!((last - std::f64::consts::PI.powi(4) / 45.0).abs() < 1e-9);
}

#[test]
fn hurwitz_form_routes() {
    let (_, direct, _) = run(&["zeta", "--form", "hurwitz", "--s", "1.5", "--c", "0.5"]);
    let (_, binom, _) = run(&["zeta", "--form", "hurwitz", "--s", "1.5", "--c", "0.5", "--m-max", "60"]);
    let a = num(&records(&direct)[0]["values"]["value"]);
    let b = num(&records(&binom)[0]["values"]["value"]);
    assert!((a - b).abs() < 1e-8, "{a} {b}");
}

#[test]
fn domination_verdict_and_exit_code() {
    let (code, out, _) = run(&["dominate", "--n", "2", "--s", "2", "--kmax", "200"]);
    assert_eq!(code, 0);
    let r = &records(&out)[0];
    assert_eq!(r["verdict"], Value::Bool(true));
    assert!((num(&r["values"]["zeta_laplace"]) - 1.0).abs() < 1e-8);
}

#[test]
fn failed_majorisation_exits_two() {
    let (code, out, _) = run(&["majorize", "--x", "2,1,1", "--y", "3,1,0"]);
    assert_eq!(code, 2);
    let r = &records(&out)[0];
    assert_eq!(r["verdict"], Value::Bool(false));
    assert_eq!(r["values"]["first_violation"], Value::from(1));

    let (code, _, _) = run(&["majorize", "--x", "3,1,0", "--y", "2,1,1"]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["majorize", "--x", "3,1", "--y", "2,1,1"]);
    assert_eq!(code, 1);
}

#[test]
fn kato_checks_pass_on_cycle() {
    for check in ["pointwise", "pairing", "positivity", "trace", "commute"] {
        let (code, out, err) = run(&["kato", check, "--graph", "cycle:16", "--trials", "10", "--seed", "42"]);
        assert_eq!(code, 0, "{check}: {err}");
        assert!(
            records(&out).iter().all(|r| r["verdict"] == Value::Bool(true)),
            "{check}"
        );
    }
    let (code, out, _) = run(&["kato", "duhamel", "--seed", "3"]);
    assert_eq!(code, 0);
    assert!(num(&records(&out)[0]["values"]["residual"]) < 1e-9);
}

#[test]
fn seeded_output_is_byte_identical() {
    let args = [
        "kato",
        "pointwise",
        "--graph",
        "random:12:5",
        "--trials",
        "50",
        "--seed",
        "9",
    ];
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(a, b);
    let (_, c, _) = run(&[
        "kato",
        "pointwise",
        "--graph",
        "random:12:5",
        "--trials",
        "50",
        "--seed",
        "10",
    ]);
    assert_ne!(a, c);
}

#[test]
fn usage_errors_exit_one() {
    let (code, _, err) = run(&["zeta", "--bogus"]);
    assert_eq!(code, 1);
    assert!(err.contains("--bogus"));
    let (code, _, _) = run(&["zeta", "--n", "5", "--s", "3", "--form", "closed"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["kato", "pointwise"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["zeta", "--n", "1", "--s-grid", "2:1:0.5"]);
    assert_eq!(code, 1);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("mellin-check"));
}

#[test]
fn csv_output_has_header_and_rows() {
    let (code, out, _) = run(&["--format", "csv", "spectrum", "--n", "3", "--kmax", "3"]);
    assert_eq!(code, 0);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    let header = rdr.headers().unwrap().clone();
    assert_eq!(&header[0], "command");
    let rows: Vec<_> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 4);
    let d: Vec<u128> = rows.iter().map(|r| r[5].parse().unwrap()).collect();
    assert_eq!(d, vec![1, 4, 9, 16]);
    let lambda: f64 = rows[3][3].parse().unwrap();
    assert_eq!(lambda, 15.0);
}

#[test]
fn json_floats_round_trip_exactly() {
    let (_, out, _) = run(&["specfun", "zeta", "--s", "3"]);
    let line = out.lines().next().unwrap();
    let text = line.split("\"value\":").nth(1).unwrap().split(',').next().unwrap();
    let parsed: f64 = text.parse().unwrap();
    assert_eq!(num(&records(&out)[0]["values"]["value"]).to_bits(), parsed.to_bits());
    assert!((parsed - 1.2020569031595942).abs() < 1e-14);
}

#[test]
fn graph_from_file() {
    let path = scratch("path3.txt");
    std::fs::write(&path, "3\n1 -1 0\n-1 2 -1\n0 -1 1\n").unwrap();
    let spec = format!("file:{}", path.display());
    let (code, out, err) = run(&["kato", "pointwise", "--graph", &spec, "--trials", "20"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(records(&out)[0]["values"]["failures"], Value::from(0));

    let bad = scratch("asym.txt");
    std::fs::write(&bad, "2\n1 -1\n-0.5 1\n").unwrap();
    let (code, _, _) = run(&["kato", "pointwise", "--graph", &format!("file:{}", bad.display())]);
    assert_eq!(code, 1);
}

#[test]
fn config_defaults_yield_to_flags() {
    let cfg = scratch("loose.conf");
    std::fs::write(&cfg, "# coarse\ntol = 1e-4\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let (_, loose, _) = run(&["--config", cfg, "zeta", "--n", "2", "--s", "2"]);
    let (_, tight, _) = run(&["--config", cfg, "--tol", "1e-9", "zeta", "--n", "2", "--s", "2"]);
    let loose_terms = records(&loose)[0]["values"]["terms_used"].as_u64().unwrap();
    let tight_terms = records(&tight)[0]["values"]["terms_used"].as_u64().unwrap();
    assert!(loose_terms < tight_terms);
    assert!(num(&records(&tight)[0]["tail_bound"]) <= 1e-9 * 1.01);

    let broken = scratch("broken.conf");
    std::fs::write(&broken, "colour = blue\n").unwrap();
    let (code, _, _) = run(&[
        "--config",
        broken.to_str().unwrap(),
        "spectrum",
        "--n",
        "1",
        "--kmax",
        "1",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn out_flag_writes_file() {
    let path = scratch("trace.jsonl");
    let (code, out, _) = run(&["--out", path.to_str().unwrap(), "heat-trace", "--n", "2", "--t", "1"]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(records(&text).len(), 1);
}

#[test]
fn kernels_and_mellin() {
    let (code, out, _) = run(&[
        "kernel",
        "--n",
        "2",
        "--kind",
        "zeta",
        "--s",
        "2",
        "--cos-gamma",
        "-0.5",
    ]);
    assert_eq!(code, 0);
    assert!(num(&records(&out)[0]["values"]["value"]).is_finite());
    let (code, out, err) = run(&["mellin-check", "--n", "1", "--s", "2", "--cos-gamma", "0.5"]);
    assert_eq!(code, 0, "{err}");
    let r = &records(&out)[0];
    assert!(num(&r["values"]["difference"]) <= 1e-6);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_spherezeta");
    let ok = Command::new(bin)
        .args(["spectrum", "--n", "2", "--kmax", "1"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap().lines().count(), 2);
    let bad = Command::new(bin).arg("--nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let fail = Command::new(bin)
        .args(["majorize", "--x", "0,0", "--y", "1,0"])
        .output()
        .unwrap();
    assert_eq!(fail.status.code(), Some(2));
}
