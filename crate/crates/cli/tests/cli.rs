use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn kdp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kdp"))
        .args(args)
        .output()
        .expect("run kdp")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| {
            l.strip_prefix(key)?
                .trim_start()
                .strip_prefix('=')
                .map(|v| v.trim().to_string())
        })
        .unwrap_or_else(|| panic!("no {key} in\n{text}"))
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

const SMALL: &str = "\
nx = 2
ny = 2
nz = 16
dx = 0.0625
dt = 0.025
steps = 20
snapshot_every = 10
report_every = 5
k = 0 0 1
polarization = 0 1 0
";

#[test]
fn verify_passes_and_detects_corruption() {
    let o = kdp(&["verify", "--format", "key-value", "--samples", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(value(&text, "span_dimension"), "100");
    assert_eq!(value(&text, "max_residual").parse::<f64>().unwrap(), 0.0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("command = verify"));

    let o = kdp(&["verify", "--corrupt-beta0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_writes_report_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v");
    let o = kdp(&["verify", "--samples", "10", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(out.join("report.txt")).unwrap(),
        stdout(&o)
    );
    let m = std::fs::read_to_string(out.join("manifest.txt")).unwrap();
    assert!(m.contains("arg.samples = 10"));
}

#[test]
fn bell_reference_settings() {
    let o = kdp(&["bell", "--alpha", "0d", "--beta", "30d", "--gamma", "60d"]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    assert!((value(&t, "lhs").parse::<f64>().unwrap() - 1.5).abs() < 1e-12);
    assert_eq!(value(&t, "violated"), "1");

    let o = kdp(&["bell", "--alpha", "0d", "--beta", "0d", "--gamma", "0d"]);
    let t = stdout(&o);
    assert!((value(&t, "lhs").parse::<f64>().unwrap() - 1.0).abs() < 1e-15);
    assert_eq!(value(&t, "violated"), "0");

    let o = kdp(&[
        "bell",
        "--alpha",
        "0r",
        "--beta",
        "0.5235987755982988r",
        "--gamma",
        "60d",
    ]);
    assert_eq!(value(&stdout(&o), "violated"), "1");
}

#[test]
fn bell_rejects_malformed_angles() {
    for bad in ["30", "30deg", "abc", ""] {
        let o = kdp(&["bell", "--alpha", bad, "--beta", "0d", "--gamma", "0d"]);
        assert_eq!(o.status.code(), Some(2), "{bad:?}");
    }
    assert_eq!(kdp(&["bell", "--alpha", "0d"]).status.code(), Some(2));
}

#[test]
fn bell_scan_rows() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("scan.csv");
    let o = kdp(&["bell", "--scan", "6", "--out", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "alpha_deg,beta_deg,gamma_deg,lhs,violated"
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 216);
    for r in &rows {
        assert_eq!(r[4] == 1.0, r[3] > 1.0 + 1e-12);
    }
    let best = rows.iter().map(|r| r[3]).fold(f64::MIN, f64::max);
    assert!((best - 1.5).abs() < 1e-12);
    assert!(dir.path().join("scan.csv.manifest").exists());

    let printed = kdp(&["bell", "--scan", "6"]);
    assert_eq!(stdout(&printed), text);
}

#[test]
fn evolve_outputs_and_reruns_identically() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "small.cfg", SMALL);
    let runs: Vec<PathBuf> = ["a", "b"].iter().map(|n| dir.path().join(n)).collect();
    for r in &runs {
        let o = kdp(&[
            "evolve",
            cfg.to_str().unwrap(),
            "--output-dir",
            r.to_str().unwrap(),
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(
            value(&stdout(&o), "energy_drift")
                .parse::<f64>()
                .unwrap()
                .abs()
                < 1e-5
        );
    }
    let names = [
        "snapshot_000000.kdp",
        "snapshot_000010.kdp",
        "snapshot_000020.kdp",
        "timeseries.csv",
    ];
    for n in names {
        let a = std::fs::read(runs[0].join(n)).unwrap();
        let b = std::fs::read(runs[1].join(n)).unwrap();
        assert!(a == b, "{n} differs between runs");
    }
    let ts = std::fs::read_to_string(runs[0].join("timeseries.csv")).unwrap();
    assert_eq!(ts.lines().count(), 1 + 5);
    let m = std::fs::read_to_string(runs[0].join("manifest.txt")).unwrap();
    assert!(m.contains("command = evolve"));
    assert!(m.contains(&format!(
        "config_sha256 = {}",
        kdp_cli::manifest::sha256_hex(SMALL.as_bytes())
    )));
}

#[test]
fn evolve_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let out = out.to_str().unwrap();

    let cfl = write_config(
        dir.path(),
        "cfl.cfg",
        &SMALL.replace("dt = 0.025", "dt = 0.05"),
    );
    let o = kdp(&["evolve", cfl.to_str().unwrap(), "--output-dir", out]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("CFL"));

    let bad = write_config(dir.path(), "bad.cfg", &format!("{SMALL}colour = red\n"));
    let o = kdp(&["evolve", bad.to_str().unwrap(), "--output-dir", out]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 11"));

    let o = kdp(&["evolve", dir.path().join("missing.cfg").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let unstable = "nx = 2\nny = 2\nnz = 16\ndx = 0.0625\ndt = 0.1875\nsteps = 2000\n\
                    cfl_limit = 10\nreport_every = 0\nk = 0 0 4\n";
    let blow = write_config(dir.path(), "blow.cfg", unstable);
    let o = kdp(&["evolve", blow.to_str().unwrap(), "--output-dir", out]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn transform_and_observables() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "small.cfg", SMALL);
    let run = dir.path().join("run");
    let o = kdp(&[
        "evolve",
        cfg.to_str().unwrap(),
        "--output-dir",
        run.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let snap = run.join("snapshot_000020.kdp");
    let s = snap.to_str().unwrap();

    let rot = dir.path().join("rot.kdp");
    let o = kdp(&[
        "transform",
        s,
        rot.to_str().unwrap(),
        "--rotate",
        "z",
        "--angle",
        "90d",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    let before: f64 = value(&t, "total_energy_before").parse().unwrap();
    let after: f64 = value(&t, "total_energy_after").parse().unwrap();
    assert!((before - after).abs() < 1e-14 * before);
    assert!(dir.path().join("rot.kdp.manifest").exists());

    // y-polarized wave rotated by 90 degrees about z points E along -x and H along -y, so S stays along z
    let obs = kdp(&["observables", rot.to_str().unwrap()]);
    assert_eq!(obs.status.code(), Some(0));
    let csv = stdout(&obs);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "x,y,z,energy_density,Sx,Sy,Sz");
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 2 * 2 * 16);
    for r in &rows {
        assert!(r[4].abs() < 1e-14 && r[5].abs() < 1e-14);
        assert!((r[6] - r[3]).abs() <= 1e-12 * r[3]);
    }

    let boosted = dir.path().join("boost.kdp");
    let o = kdp(&[
        "transform",
        s,
        boosted.to_str().unwrap(),
        "--boost",
        "z",
        "--rapidity",
        "0.5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    let after: f64 = value(&t, "total_energy_after").parse().unwrap();
    assert!((after - before * (-1.0f64).exp()).abs() < 1e-12 * before);

    let o = kdp(&["transform", s, boosted.to_str().unwrap(), "--rotate", "z"]);
    assert_eq!(o.status.code(), Some(2));
    let o = kdp(&["observables", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
