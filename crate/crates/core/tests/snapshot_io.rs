mod common;

use common::{rep, rng};
use kdp::config::RunConfig;
use kdp::dynamics::evolve;
use kdp::snapshot::{load_snapshot, save_snapshot, write_time_series_csv, HEADER_LEN};
use kdp::{FieldGrid64, FieldVector, Packing};
use num_complex::Complex;
use rand::Rng;

#[test]
fn snapshot_roundtrip_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.kdp");
    let mut r = rng(300);
    let mut g = FieldGrid64::from_fn([5, 3, 2], 0.2, Packing::default(), |_| {
        FieldVector(std::array::from_fn(|_| {
            Complex::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
        }))
    });
    g.time = 0.75;
    save_snapshot(&g, &path).unwrap();
    assert_eq!(
        std::fs::metadata(&path).unwrap().len() as usize,
        HEADER_LEN + 30 * 160
    );
    let back: FieldGrid64 = load_snapshot(&path).unwrap();
    assert_eq!(back, g);
    assert!(load_snapshot::<f64>(&dir.path().join("missing")).is_err());
}

#[test]
fn config_drives_an_evolution() {
    let text = "nx = 2\nny = 2\nnz = 16\ndx = 0.0625\ndt = 0.025\nsteps = 8\nreport_every = 4\n";
    let cfg = RunConfig::parse(text).unwrap();
    let g = cfg.initial_grid().unwrap();
    let out = evolve(rep(), &g, &cfg.evolution_config().unwrap(), &mut ()).unwrap();
    assert_eq!(out.reports.len(), 3);
    let mut csv = Vec::new();
    write_time_series_csv(&out.reports, &out.energy, &mut csv).unwrap();
    let csv = String::from_utf8(csv).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "time,total_energy,div_E_residual,curl_A_residual,full_constraint_residual"
    );
    assert_eq!(lines.len(), 4);
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 5));
}

#[test]
fn config_rejects_fast_time_steps() {
    let text = "nx = 2\nny = 2\nnz = 16\ndx = 0.0625\ndt = 0.05\nsteps = 8\n";
    let cfg = RunConfig::parse(text).unwrap();
    let e = cfg
        .evolution_config()
        .unwrap()
        .check_cfl(cfg.dx)
        .unwrap_err();
    assert!(matches!(e, kdp::Error::Cfl { .. }));
}
