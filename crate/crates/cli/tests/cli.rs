use std::path::Path;
use std::process::{Command, Output};

use orbitlab::witness::{CertificateEntry, LadderCertificate};
use orbitlab::C64;
use serde_json::Value;

fn orbitlab(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitlab"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

const CONTRACTION: &str = "# upper-triangular, norm < 1
4
0.5,0 0.1,0.1 0,0 0,0
0,0 0.3,-0.2 0.2,0 0,0
0,0 0,0 0.6,0 0.1,0
0,0 0,0 0,0 0.8,0
";

#[test]
fn unknown_demo_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&orbitlab(&["demo", "example99"], dir.path())), 2);
}

#[test]
fn compactness_csv_has_one_row_per_horizon_and_epsilon() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("run.toml"),
        r#"
seed = 4
[operator]
kind = "harmonic"
[[probes]]
name = "one"
kind = "one"
expect = "growing"
[diagnostics]
operations = ["compactness"]
epsilons = [0.5, 1.0]
horizons = [50, 100, 200]
[output]
name = "h"
"#,
    )
    .unwrap();
    let out = orbitlab(&["run", "--config", "run.toml", "--out-dir", "out", "--csv", "--json"], dir.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("out/h.compactness_one.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    for eps in ["0.5", "1"] {
        assert_eq!(rows.iter().filter(|r| r.split(',').nth(1) == Some(eps)).count(), 3);
    }
    let report = read_json(&dir.path().join("out/h.json"));
    assert_eq!(report["seed"], 4);
    assert_eq!(report["results"]["compactness/one"]["verdict"], "growing");
}

#[test]
fn decreasing_horizons_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("bad.toml"),
        "[operator]\nkind = \"harmonic\"\n[[probes]]\nname = \"one\"\nkind = \"one\"\n[diagnostics]\noperations = [\"compactness\"]\nhorizons = [400, 200]\n",
    )
    .unwrap();
    assert_eq!(code(&orbitlab(&["run", "--config", "bad.toml"], dir.path())), 2);
}

#[test]
fn missing_config_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&orbitlab(&["run", "--config", "absent.toml"], dir.path())), 3);
}

#[test]
fn halfsum_on_a_matrix_file_lists_every_eigenvalue() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("t.txt"), CONTRACTION).unwrap();
    std::fs::write(
        dir.path().join("m.toml"),
        "[operator]\nkind = \"matrix\"\npath = \"t.txt\"\n[diagnostics]\noperations = [\"halfsum\"]\n[output]\nname = \"m\"\n",
    )
    .unwrap();
    let out = orbitlab(&["run", "--config", "m.toml", "--out-dir", "out"], dir.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let report = read_json(&dir.path().join("out/m.json"));
    let eigs = report["results"]["halfsum"]["s_spectrum"]["eigenvalues"].as_array().unwrap();
    assert_eq!(eigs.len(), 4);
    assert!(dir.path().join("out/m.timing.json").exists());
}

#[test]
fn failed_postcondition_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("c.toml"),
        "[operator]\nkind = \"harmonic\"\nspace = \"c0\"\n[[probes]]\nname = \"e1\"\nkind = \"unit\"\nindex = 1\nexpect = \"growing\"\n[diagnostics]\noperations = [\"compactness\"]\n",
    )
    .unwrap();
    assert_eq!(code(&orbitlab(&["run", "--config", "c.toml", "--out-dir", "out"], dir.path())), 1);
}

#[test]
fn ktz_demo_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    for out in ["a", "b"] {
        let o = orbitlab(&["demo", "ktz", "--seed", "3", "--out-dir", out, "--csv", "--json"], dir.path());
        assert_eq!(code(&o), 0);
    }
    for file in ["ktz.json", "ktz.ktz.csv"] {
        let a = std::fs::read(dir.path().join("a").join(file)).unwrap();
        let b = std::fs::read(dir.path().join("b").join(file)).unwrap();
        assert_eq!(a, b, "{file}");
    }
    let report = read_json(&dir.path().join("a/ktz.json"));
    let decay = report["results"]["ktz"]["decay_curve"].as_array().unwrap();
    assert!((decay[10].as_f64().unwrap() - 0.1 * 0.9f64.powi(10)).abs() < 1e-15);
}

#[test]
fn verify_certificate_accepts_unit_vectors() {
    let dir = tempfile::tempdir().unwrap();
    let entries = (0..4)
        .map(|i| {
            let mut prefix = vec![C64::new(0.0, 0.0); 4];
            prefix[i] = C64::new(1.0, 0.0);
            CertificateEntry {
                limit: C64::new(0.0, 0.0),
                tail_constant: 0.0,
                tail_exponent: 1.0,
                truncation: 0.0,
                prefix,
            }
        })
        .collect();
    let cert = LadderCertificate {
        delta: 1.0,
        m_bound: 1.0,
        x_norm: 1.0,
        prefix_len: 4,
        entries,
    };
    std::fs::write(dir.path().join("u.cert"), cert.to_text()).unwrap();
    let out = orbitlab(&["verify-certificate", "u.cert", "--out-dir", "out"], dir.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let report = read_json(&dir.path().join("out/verify.json"));
    assert_eq!(report["results"]["bp_test"]["ladder_detected"], true);

    std::fs::write(dir.path().join("bad.cert"), "not a certificate\n").unwrap();
    assert_eq!(code(&orbitlab(&["verify-certificate", "bad.cert"], dir.path())), 2);
}
