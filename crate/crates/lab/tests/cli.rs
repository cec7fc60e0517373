use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use stark_ep_core::fgh::{build_hamiltonian, ContinuousModel};
use stark_ep_lab::config::parse_config;
use stark_ep_lab::format::read_matrix_dump;

fn stark_ep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stark-ep")).args(args).env("RUST_LOG", "warn").output().unwrap()
}

fn write_config(dir: &Path, text: &str) -> PathBuf {
    let p = dir.join("run.json");
    fs::write(&p, text).unwrap();
    p
}

fn run_config(dir: &Path, text: &str, extra: &[&str]) -> Output {
    let cfg = write_config(dir, text);
    let out = dir.join("out");
    let mut args = vec!["--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    stark_ep(&args)
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let k = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[k].parse().unwrap()).collect()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn scale_free_merge_is_the_same_for_three_lengths() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_config(dir.path(), r#"{"mode": "scale-free", "scale_free": {"sizes": [5, 7, 15], "scan_steps": 41}}"#, &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = dir.path().join("out");
    let (h, rows) = read_csv(&out.join("scale_free_ep.csv"));
    assert_eq!(h, ["N", "merge_ratio"]);
    let merges = column(&h, &rows, "merge_ratio");
    assert_eq!(merges.len(), 3);
    for m in merges {
        assert!((m - 1.577).abs() < 0.01, "{m}");
    }
    let (h, rows) = read_csv(&out.join("scale_free_scan.csv"));
    assert_eq!(h, ["N", "F_over_J", "n_roots", "xi_roots", "merged_flag"]);
    assert_eq!(rows.len(), 3 * 41);
    assert_eq!(rows.iter().filter(|r| r[4] == "1").count(), 3);

    let meta: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("scale-free.json")).unwrap()).unwrap();
    assert_eq!(meta["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(meta["config"]["scale_free"]["sizes"], serde_json::json!([5, 7, 15]));
    assert!(meta["wall_time_s"].as_f64().unwrap() >= 0.0);
    assert!((meta["summary"]["reduced"]["ratio"].as_f64().unwrap() - 1.577).abs() < 0.02);
}

fn has_coalesced_triple(path: &Path, n: usize) -> bool {
    let (h, rows) = read_csv(path);
    let v = column(&h, &rows, "value");
    assert_eq!(v.len(), n * n);
    let f = |q: usize, p: usize| v[q * n + p];
    (0..n).any(|a| (a + 1..n).any(|b| (b + 1..n).any(|c| f(a, b) >= 0.99 && f(a, c) >= 0.99 && f(b, c) >= 0.99)))
}

#[test]
fn seven_well_fidelity_has_a_coalesced_triple() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_config(dir.path(), r#"{"mode": "fidelity", "model": {"continuum": {"kappa": 0.0252}}}"#, &["--preset", "fig1b"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = dir.path().join("out");
    assert!(has_coalesced_triple(&out.join("fidelity.csv"), 7));
    let (h, rows) = read_csv(&out.join("coalescence.csv"));
    assert_eq!(column(&h, &rows, "order_estimate"), vec![3.0]);
}

#[test]
fn figure_preset_matches_the_equivalent_config() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let o = stark_ep(&["--preset", "fig3b", "--out", a.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run_config(dir.path(), r#"{"mode": "fidelity", "model": {"continuum": {"preset": "fig1b", "kappa": 0.0252}}}"#, &[]);
    assert!(o.status.success());
    assert_eq!(fs::read(a.join("fidelity.csv")).unwrap(), fs::read(dir.path().join("out/fidelity.csv")).unwrap());
}

#[test]
fn steep_ladder_oscillates_with_the_bloch_period() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{"mode": "evolve", "model": {"ladder": {"size": 5, "tilt": 4.3}},
                   "evolve": {"t_end": 3.0, "samples": 3001, "initial": {"site": 3}}}"#;
    let o = run_config(dir.path(), text, &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = dir.path().join("out");
    let (h, rows) = read_csv(&out.join("trajectory.csv"));
    assert_eq!(h.len(), 1 + 5 + 5 + 1);
    assert_eq!((h[1].as_str(), h[6].as_str(), h[11].as_str()), ("re_psi_1", "im_psi_1", "P"));
    let t = column(&h, &rows, "t");
    let p = column(&h, &rows, "P");
    let period = 2.0 * std::f64::consts::PI / 4.3;
    let k = t.iter().position(|&x| x >= period).unwrap();
    assert!((p[k] - p[0]).abs() / p[0] <= 0.05);
    let meta: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("evolve.json")).unwrap()).unwrap();
    let revival = meta["summary"]["revival_time"].as_f64().unwrap();
    assert!((revival - 1.46).abs() < 0.03, "{revival}");
}

#[test]
fn output_is_independent_of_the_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let text = |out: &str| {
        format!(
            r#"{{"mode": "spectrum-sweep", "model": {{"ladder": {{"size": 7, "tilt": 0}}}},
                "sweep": {{"parameter": "tilt", "lo": 0.0, "hi": 3.0, "steps": 31}}, "output_path": "{out}"}}"#
        )
    };
    let mut bodies = Vec::new();
    for (jobs, name) in [("1", "one"), ("4", "four"), ("4", "again")] {
        let out = dir.path().join(name);
        let cfg = write_config(dir.path(), &text(out.to_str().unwrap()));
        let o = stark_ep(&["--config", cfg.to_str().unwrap(), "--jobs", jobs]);
        assert!(o.status.success(), "{}", stderr(&o));
        bodies.push(fs::read(out.join("spectrum.csv")).unwrap());
    }
    assert_eq!(bodies[0], bodies[1]);
    assert_eq!(bodies[1], bodies[2]);
    let text = String::from_utf8(bodies.remove(0)).unwrap();
    assert_eq!(text.lines().count(), 1 + 31 * 7);
    assert!(text.lines().nth(1).unwrap().starts_with("0.0000000000000000e0,0,"));
}

#[test]
fn validation_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_config(dir.path(), r#"{"mode": "fidelity", "foo": 1}"#, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("foo"));

    let o = run_config(dir.path(), r#"{"mode": "spacing", "model": {"ladder": {"size": 5, "tilt": 1}}, "sweep": {"parameter": "tilt", "lo": 0, "hi": 1, "steps": 1}}"#, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("steps"));

    assert_eq!(stark_ep(&[]).status.code(), Some(2));
    assert_eq!(stark_ep(&["--preset", "nope"]).status.code(), Some(2));
    assert_eq!(stark_ep(&["--jobs", "0", "--preset", "fig4"]).status.code(), Some(2));
    assert!(!dir.path().join("out").exists());
}

#[test]
fn numerical_failure_exits_with_three_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_config(dir.path(), r#"{"mode": "scale-free", "scale_free": {"sizes": [5], "ratio_lo": 2.0, "ratio_hi": 3.0}}"#, &[]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("no root merge"));
    assert!(!dir.path().join("out").exists());
}

#[test]
fn unreadable_config_exits_with_one() {
    let o = stark_ep(&["--config", "/nonexistent/run.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn hamiltonian_dump_matches_the_assembled_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_config(dir.path(), r#"{"mode": "spectrum-sweep", "model": {"continuum": {"preset": "fig1a", "kappa": 0.0062}}, "dump_hamiltonian": true}"#, &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let file = fs::File::open(dir.path().join("out/hamiltonian.txt")).unwrap();
    let (m, dx) = read_matrix_dump(std::io::BufReader::new(file)).unwrap();
    assert_eq!(m, build_hamiltonian(&ContinuousModel::fig1a().with_kappa(0.0062)).unwrap());
    assert_eq!(dx, 3.0 / 200.0);
}

#[test]
fn emitted_config_parses_back() {
    let o = stark_ep(&["--preset", "fig6b", "--emit-config"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let c = parse_config(&text).unwrap();
    assert_eq!(c, stark_ep_lab::presets::figure_preset("fig6b").unwrap());
    let o = stark_ep(&["--list-presets"]);
    assert!(String::from_utf8(o.stdout).unwrap().lines().any(|l| l.starts_with("fig4")));
}
