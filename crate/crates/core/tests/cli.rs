use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_pec-advantage");

const SMALL_GRID: &str = r#"
seed = 3

[model]
rows = 8
cols = 8
boundary = "periodic"
t = 1.0
u = 8.0
mu = 3.75

[bounds]
e_minus_per_site = -4.544
e_plus_per_site = -3.8365

[shots]
min = 1.0
max = 1e6
points = 9

[sweep]
p_min = 1e-5
p_max = 1e-1
p_points = 11
"#;

const SMALL_SIM: &str = r#"
seed = 11

[model]
rows = 1
cols = 2
boundary = "open"
t = 1.0
u = 8.0
mu = 3.75

[circuit]
layers = 2

[noise]
p = 0.05

[simulation]
shots = 6000
batch = 100
"#;

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("PEC_ADVANTAGE_WORKERS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn norm_with_defaults() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&run(&["norm"], &[]))).unwrap();
    assert_eq!(v["qubits"], 128);
    assert_eq!(v["norm2_squared"].as_f64().unwrap().round(), 386.0);
    assert_eq!(v["trace_over_d"].as_f64().unwrap(), -112.0);
    assert_eq!(v["provenance"]["command"], "norm");
}

#[test]
fn success_from_bundled_config() {
    let cfg = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/reference_instance.toml");
    let v: serde_json::Value = serde_json::from_str(&stdout(&run(&["success", "--config", cfg], &[]))).unwrap();
    assert_eq!(v["label"], "PEC");
    assert_eq!(v["n_shots"], 1000);
}

#[test]
fn phase_diagram_is_deterministic_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "grid.toml", SMALL_GRID);
    let cfg = cfg.to_str().unwrap();
    for format in ["csv", "json", "svg"] {
        let one = stdout(&run(&["phase-diagram", "--config", cfg, "--format", format], &[("PEC_ADVANTAGE_WORKERS", "1")]));
        let four = stdout(&run(&["phase-diagram", "--config", cfg, "--format", format], &[("PEC_ADVANTAGE_WORKERS", "4")]));
        let again = stdout(&run(&["phase-diagram", "--config", cfg, "--format", format], &[]));
        assert_eq!(one, four, "{format}");
        assert_eq!(one, again, "{format}");
    }
}

#[test]
fn output_file_and_seed_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "grid.toml", SMALL_GRID);
    let out = dir.path().join("phase.csv");
    let o = run(
        &["phase-diagram", "--config", cfg.to_str().unwrap(), "--format", "csv", "--output", out.to_str().unwrap(), "--seed", "42"],
        &[],
    );
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("# seed: 42\n"));
    assert!(text.contains("# command: phase-diagram\n"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1 + 11 * 9);
}

#[test]
fn centering_svg() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.toml",
        "[centering]\nshift_points = 5\nwidth_points = 4\n",
    );
    let svg = stdout(&run(&["centering", "--config", cfg.to_str().unwrap(), "--format", "svg"], &[]));
    assert!(svg.contains("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn simulate_small_instance() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "sim.toml", SMALL_SIM);
    let cfg = cfg.to_str().unwrap();
    let a = stdout(&run(&["simulate", "--config", cfg], &[("PEC_ADVANTAGE_WORKERS", "1")]));
    let b = stdout(&run(&["simulate", "--config", cfg], &[("PEC_ADVANTAGE_WORKERS", "4")]));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["shots"], 6000);
    assert!(v["qpd_defect"].as_f64().unwrap() < 1e-9);
    let csv = stdout(&run(&["simulate", "--config", cfg, "--format", "csv"], &[]));
    assert!(csv.contains("\npec,"));
    assert!(csv.contains("\nraw,"));
}

#[test]
fn validation_errors_exit_2_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad_p = write(dir.path(), "p.toml", &format!("{SMALL_GRID}\n[noise]\np = 1.5\n\n"));
    let o = run(&["success", "--config", bad_p.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("noise.p"), "{}", stderr(&o));

    let unknown = write(dir.path(), "u.toml", "[circuit]\nlayers = 3\ndepth = 4\n");
    let o = run(&["norm", "--config", unknown.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("depth"), "{}", stderr(&o));

    let o = run(&["norm", "--format", "svg"], &[]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["norm"], &[("PEC_ADVANTAGE_WORKERS", "zero")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("PEC_ADVANTAGE_WORKERS"));
}

#[test]
fn divergent_noise_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "p.toml", &format!("{SMALL_GRID}\n[noise]\np = 1.0\n"));
    let o = run(&["success", "--config", cfg.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}

#[test]
fn oversized_simulation_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "big.toml",
        "[model]\nrows = 8\ncols = 8\nboundary = \"periodic\"\nt = 1.0\nu = 8.0\nmu = 3.75\n\n[noise]\np = 1e-3\n",
    );
    let o = run(&["simulate", "--config", cfg.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn missing_config_file_is_reported() {
    let o = run(&["norm", "--config", "/nonexistent/run.toml"], &[]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("run.toml"), "{}", stderr(&o));
}
