use std::path::PathBuf;
use std::process::{Command, Output};

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pipedyn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn pipedyn(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pipedyn"));
    cmd.args(args);
    match threads {
        Some(n) => cmd.env("PIPEDYN_THREADS", n),
        None => cmd.env_remove("PIPEDYN_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn simulate_grid_shape() {
    let path = scenario("mid_leak.json");
    let o = pipedyn(&["simulate", path.to_str().unwrap(), "--grid", "13x9"], None);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x_m,t_s,P_Pa"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 13 * 9);
    assert!(rows.iter().all(|r| r.len() == 3 && r[2].is_finite()));
    // inlet at the first sample sits just below the steady 55e4 Pa
    assert!(rows[0][2] < 55e4 && rows[0][2] > 50e4);
}

#[test]
fn output_is_identical_across_thread_counts() {
    let path = scenario("ring.json");
    let args = ["simulate", path.to_str().unwrap(), "--grid", "31x17"];
    let one = pipedyn(&args, Some("1"));
    let four = pipedyn(&args, Some("4"));
    let again = pipedyn(&args, Some("4"));
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(four.stdout, again.stdout);
}

#[test]
fn out_writes_sidecar() {
    let out = scratch("field.csv");
    let path = scenario("short_line.json");
    let o = pipedyn(&["simulate", path.to_str().unwrap(), "--out", out.to_str().unwrap()], Some("2"));
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("x_m,t_s,P_Pa\n"));
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(scratch("field.csv.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["command"], "simulate");
    assert_eq!(meta["threads"], 2);
    assert_eq!(meta["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn dump_normalized_round_trips() {
    for name in ["mid_leak.json", "ring.json", "relief.json", "coupled_fixed_end.json"] {
        let path = scenario(name);
        let first = pipedyn(&["simulate", path.to_str().unwrap(), "--dump-normalized"], None);
        assert_eq!(code(&first), 0, "{name}: {}", stderr(&first));
        let dumped = scratch(&format!("norm-{name}"));
        std::fs::write(&dumped, &first.stdout).unwrap();
        let second = pipedyn(&["simulate", dumped.to_str().unwrap(), "--dump-normalized"], None);
        assert_eq!(first.stdout, second.stdout, "{name}");
        let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
        assert_eq!(v["units"], "Pa");
    }
}

#[test]
fn unknown_key_is_input_error() {
    let text = std::fs::read_to_string(scenario("mid_leak.json")).unwrap();
    let bad = scratch("bad-key.json");
    std::fs::write(&bad, text.replace("\"two_a\": 0.1", "\"two_a\": 0.1, \"diameter\": 1")).unwrap();
    let o = pipedyn(&["simulate", bad.to_str().unwrap()], None);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("diameter") && err.contains("line 4"), "{err}");
}

#[test]
fn missing_file_and_bad_grid_are_input_errors() {
    assert_eq!(code(&pipedyn(&["simulate", "/nonexistent/x.json"], None)), 2);
    let path = scenario("mid_leak.json");
    assert_eq!(code(&pipedyn(&["simulate", path.to_str().unwrap(), "--grid", "13by9"], None)), 2);
    assert_eq!(code(&pipedyn(&["simulate", path.to_str().unwrap()], Some("0"))), 2);
    assert_eq!(code(&pipedyn(&["frobnicate"], None)), 2);
    assert_eq!(code(&pipedyn(&["tables", "9.9.9"], None)), 2);
}

#[test]
fn infeasible_request_exits_3() {
    let path = fixture("infeasible_compressor.json");
    let o = pipedyn(&["optimize", path.to_str().unwrap()], None);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("compression ratio"));
}

#[test]
fn optimize_reports_capacity() {
    let path = scenario("reconstruction.json");
    let o = pipedyn(&["optimize", path.to_str().unwrap()], None);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("name,value,units\n"));
    let q0: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("capacity_q0,"))
        .and_then(|rest| rest.split(',').next())
        .unwrap()
        .parse()
        .unwrap();
    assert!((q0 - 161_695.0).abs() < 1.0, "{q0}");
}

#[test]
fn dispatch_mid_leak() {
    let path = scenario("mid_leak.json");
    let decision = scratch("decision.json");
    let log = scratch("log.csv");
    let o = pipedyn(
        &["dispatch", path.to_str().unwrap(), "--decision", decision.to_str().unwrap(), "--log", log.to_str().unwrap()],
        None,
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("t_s,p_ratio,regime\n"));
    let d: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&decision).unwrap()).unwrap();
    // a midpoint leak produces equal pressure drops at both ends
    assert!((d["theta"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    assert!((d["ell2_estimate"].as_f64().unwrap() - 5e4).abs() < 1.0);
    assert_eq!(d["regime"], "Accident");
    assert!(d["t1"].as_f64().is_some());
    let log = std::fs::read_to_string(&log).unwrap();
    let mut lines = log.lines();
    assert_eq!(lines.next(), Some("t_s,action,param1,param2"));
    assert!(lines.next().unwrap().contains("close_valves"));
}

#[test]
fn tables_report_exclusions() {
    let o = pipedyn(&["tables", "2.2.1"], None);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("cell,computed_Pa,reference_Pa,rel_dev\n"));
    assert!(stderr(&o).contains("excluded"));
}

#[test]
fn verify_exit_codes() {
    let clean = pipedyn(&["verify", "--criterion", "9"], None);
    assert_eq!(code(&clean), 0, "{}", stdout(&clean));
    let full = pipedyn(&["verify"], None);
    assert_eq!(code(&full), 4);
    assert!(stdout(&full).lines().any(|l| l.contains("KNOWN-IRREPRODUCIBLE")));
}
