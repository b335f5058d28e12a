use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spherepts")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

fn p(dir: &tempfile::TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn enumerate_writes_canonical_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = p(&dir, "e5.csv");
    let o = run(&["enumerate", "--n", "5", "--dim", "2", "--out", &out]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "n=5 dim=2 N=8 n_mod_8=5 squarefree=true");
    let text = read(Path::new(&out));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "2,5");
    assert_eq!(&lines[1..], ["-2,-1", "-2,1", "-1,-2", "-1,2", "1,-2", "1,2", "2,-1", "2,1"]);
}

#[test]
fn enumerate_non_representable_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let out = p(&dir, "e7.csv");
    let o = run(&["enumerate", "--n", "7", "--out", &out]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("N=0"));
    assert_eq!(read(Path::new(&out)), "3,7\n");
}

#[test]
fn enumerate_large_prime_matches_count() {
    let o = run(&["enumerate", "--n", "1299709"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 1 + 9480);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&["frobnicate"])), 3);
    assert_eq!(code(&run(&["enumerate", "--n", "five"])), 3);
    assert_eq!(code(&run(&["enumerate", "--n", "5", "--dim", "5"])), 3);
    assert_eq!(code(&run(&["stats"])), 3);
    assert_eq!(code(&run(&["stats", "--n", "5", "--random", "9"])), 3);
    assert_eq!(code(&run(&["stats", "--n", "7"])), 4);
    assert_eq!(code(&run(&["stats", "--n", "28"])), 4);
    assert_eq!(code(&run(&["enumerate", "--n", "2000000", "--dim", "4"])), 2);
    assert_eq!(code(&run(&["scaling", "--target", "nope"])), 3);
    assert_eq!(code(&run(&["baseline", "--stat", "ripley", "--points", "10"])), 3);
}

#[test]
fn energy_budget_and_force() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = p(&dir, "tight.toml");
    std::fs::write(&cfg, "max_energy_pairs = 100\n").unwrap();
    let refused = run(&["--config", &cfg, "stats", "--random", "50", "--energy"]);
    assert_eq!(code(&refused), 2);
    assert!(refused.stdout.is_empty());
    let forced = run(&["--config", &cfg, "stats", "--random", "50", "--energy", "--force"]);
    assert_eq!(code(&forced), 0);
    let bad = p(&dir, "bad.toml");
    std::fs::write(&bad, "no_such_key = 1\n").unwrap();
    assert_eq!(code(&run(&["--config", &bad, "table1"])), 3);
}

#[test]
fn stats_requested_fields_only() {
    let o = run(&["stats", "--n", "101", "--r", "0.1,0.5"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["N"], 168);
    assert!(v["energy"].is_null() && v["spacing"].is_null());
    assert_eq!(v["ripley"]["counts"].as_array().unwrap().len(), 2);
    assert_eq!(v["provenance"]["kind"], "arithmetic");

    let single = run(&["stats", "--random", "1", "--covering", "--spacing"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&single)).unwrap();
    assert!(v["spacing"].is_null());
    assert!((v["covering_radius_estimate"]["estimate"].as_f64().unwrap() - 2.0).abs() < 1e-3);
}

#[test]
fn stats_files_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let (json, hist, prof) = (p(&dir, "r.json"), p(&dir, "h.csv"), p(&dir, "p.csv"));
    let args = [
        "stats", "--random", "800", "--seed", "11", "--all", "--r", "0.05,0.2",
        "--out", &json, "--histogram-out", &hist, "--profile-out", &prof,
    ];
    assert_eq!(code(&run(&args)), 0);
    let first = (read(Path::new(&json)), read(Path::new(&hist)), read(Path::new(&prof)));
    assert_eq!(code(&run(&args)), 0);
    assert_eq!(first, (read(Path::new(&json)), read(Path::new(&hist)), read(Path::new(&prof))));

    let rows: Vec<&str> = first.1.lines().collect();
    assert_eq!(rows[0], "left,right,mass");
    assert_eq!(rows.len(), 1 + 50 + 1);
    assert!(rows[51].starts_with("5,inf,"));
    let mass: f64 = rows[1..].iter().map(|r| r.rsplit(',').next().unwrap().parse::<f64>().unwrap()).sum();
    assert!((mass - 1.0).abs() < 1e-9);
    let prof: Vec<&str> = first.2.lines().collect();
    assert_eq!(prof[0], "r,count,normalized");
    assert!(prof[1].starts_with("0.05,"));
    let v: serde_json::Value = serde_json::from_str(&first.0).unwrap();
    assert_eq!(v["N"], 800);
    assert!(v["discrepancy_estimate"].is_number() && v["energy_deviation"].is_number());
}

#[test]
fn stats_reads_enumerated_file() {
    let dir = tempfile::tempdir().unwrap();
    let pts = p(&dir, "pts.csv");
    assert_eq!(code(&run(&["enumerate", "--n", "1001", "--out", &pts])), 0);
    let from_file = run(&["stats", "--input", &pts, "--energy"]);
    let direct = run(&["stats", "--n", "1001", "--energy"]);
    assert_eq!(code(&from_file), 0);
    assert_eq!(stdout(&from_file), stdout(&direct));
    std::fs::write(&pts, "3,5\n1,2,1\n").unwrap();
    assert_eq!(code(&run(&["stats", "--input", &pts])), 3);
}

#[test]
fn table1_output() {
    let dir = tempfile::tempdir().unwrap();
    let csv = p(&dir, "t1.csv");
    let o = run(&["table1", "--runs", "2", "--out", &csv]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().nth(1).unwrap().contains(" 1224 "));
    let body = read(Path::new(&csv));
    assert!(body.starts_with("n,N,integer,random_mean,random_std,runs\n104773,1224,"));
    assert_eq!(code(&run(&["table1", "--runs", "2", "--out", &csv])), 0);
    assert_eq!(body, read(Path::new(&csv)));
}

#[test]
fn ensemble_rows_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let csv = p(&dir, "ens.csv");
    let o = run(&[
        "ensemble", "--r-max", "500", "--squarefree", "--exclude-mod8", "7",
        "--shift", "2,0,0", "--shift=-1,1,0", "--out", &csv,
    ]);
    assert_eq!(code(&o), 0);
    let summary: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let body = read(Path::new(&csv));
    assert_eq!(body.lines().count() as u64, 1 + summary["rows"].as_u64().unwrap());
    assert!(body.starts_with("n,N,squarefree,n_mod_8,r,k_hat,expected,normalized,deviation,"));
    assert_eq!(summary["shift_sums"].as_array().unwrap().len(), 2);

    let empty = run(&["ensemble", "--r-min", "20", "--r-max", "10"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&empty)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 0);
    assert_eq!(v["summary"]["mean_deviation"], 0.0);
    assert_eq!(code(&run(&["ensemble", "--r-max", "10", "--shift", "0,0,0"])), 3);
}

#[test]
fn scaling_report() {
    let dir = tempfile::tempdir().unwrap();
    let csv = p(&dir, "s.csv");
    let args = ["scaling", "--target", "min_spacing_S2", "--grid", "128,256,512", "--runs", "3", "--out", &csv];
    let o = run(&args);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["target"], "min_spacing_S2");
    assert!(v["slope"].is_number());
    let body = read(Path::new(&csv));
    assert!(body.starts_with("param,N,log_N,mean_log_value,runs\n128,128,"));
    assert_eq!(stdout(&run(&args)), stdout(&o));
}

#[test]
fn figdata_bundles() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(code(&run(&["figdata", "--which", "fig1", "--out", out])), 0);
    for label in ["arithmetic", "random", "rigid"] {
        let body = read(&dir.path().join(format!("fig1_{label}.csv")));
        assert!(body.starts_with("x,y\n"));
        assert!((80..=160).contains(&(body.lines().count() - 1)), "{label}");
    }
    assert_eq!(code(&run(&["figdata", "--which", "fig2", "--n", "1299709", "--out", out])), 0);
    let curve = read(&dir.path().join("fig2_curve.csv"));
    for row in curve.lines().skip(1) {
        let (s, d) = row.split_once(',').unwrap();
        let (s, d): (f64, f64) = (s.parse().unwrap(), d.parse().unwrap());
        assert!((d - (-s).exp()).abs() < 1e-12);
    }
    let summary: serde_json::Value =
        serde_json::from_str(&read(&dir.path().join("fig2_summary.json"))).unwrap();
    assert!((summary["mass"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn baseline_summary() {
    let args = ["baseline", "--stat", "ripley", "--points", "300", "--r", "0.2", "--runs", "4", "--seed", "3"];
    let o = run(&args);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["name"], "ripley");
    assert_eq!(v["params"]["r"], 0.2);
    assert_eq!(v["values"].as_array().unwrap().len(), 4);
    assert_eq!(stdout(&run(&args)), stdout(&o));
}
