//! File formats: binary grid snapshots and CSV exports.
//!
//! Snapshot layout, all little-endian:
//!
//! | offset | size | content |
//! |---|---|---|
//! | 0 | 8 | magic `b"KDPGRID\0"` |
//! | 8 | 4 | format version, `u32` = 1 |
//! | 12 | 8 x 3 | `Nx`, `Ny`, `Nz` as `u64` |
//! | 36 | 8 | `dx` as `f64` |
//! | 44 | 8 | `time` as `f64` |
//! | 52 | 160 per site | 10 complex values `(re, im)` as `f64` pairs |
//!
//! Sites are stored with `x` fastest, then `y`, then `z`. Components are in
//! the `l0 = 1` packing whatever the in-memory convention.

use std::io::{Read, Write};

use num_complex::Complex;

use crate::algebra::BetaRep;
use crate::dynamics::{ConstraintReport, EnergySample};
use crate::fields::{energy_density, poynting, FieldGrid, FieldVector, Packing};
use crate::matrix::DIM;
use crate::{Error, Real, Result};

pub const MAGIC: &[u8; 8] = b"KDPGRID\0";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 52;

pub fn write_snapshot<T: Real>(grid: &FieldGrid<T>, mut w: impl Write) -> Result<()> {
    let canonical = grid.repacked(Packing::default());
    let mut buf = Vec::with_capacity(HEADER_LEN + grid.len() * DIM * 16);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    for n in grid.shape() {
        buf.extend_from_slice(&(n as u64).to_le_bytes());
    }
    buf.extend_from_slice(&grid.spacing().to_f64_lossy().to_le_bytes());
    buf.extend_from_slice(&grid.time.to_f64_lossy().to_le_bytes());
    for psi in canonical.data() {
        for z in &psi.0 {
            buf.extend_from_slice(&z.re.to_f64_lossy().to_le_bytes());
            buf.extend_from_slice(&z.im.to_f64_lossy().to_le_bytes());
        }
    }
    w.write_all(&buf)?;
    Ok(())
}

pub fn read_snapshot<T: Real>(mut r: impl Read) -> Result<FieldGrid<T>> {
    let mut header = [0u8; HEADER_LEN];
    r.read_exact(&mut header)
        .map_err(|e| Error::Snapshot(format!("truncated header: {e}")))?;
    if &header[..8] != MAGIC {
        return Err(Error::Snapshot("bad magic".into()));
    }
    let u32_at = |o: usize| u32::from_le_bytes(header[o..o + 4].try_into().unwrap());
    let u64_at = |o: usize| u64::from_le_bytes(header[o..o + 8].try_into().unwrap());
    let f64_at = |o: usize| f64::from_le_bytes(header[o..o + 8].try_into().unwrap());
    let version = u32_at(8);
    if version != VERSION {
        return Err(Error::Snapshot(format!("unsupported version {version}")));
    }
    let shape = [u64_at(12), u64_at(20), u64_at(28)].map(|n| n as usize);
    if shape.contains(&0) {
        return Err(Error::Snapshot(format!("degenerate shape {shape:?}")));
    }
    let dx = f64_at(36);
    let time = f64_at(44);
    if !(dx > 0.0) {
        return Err(Error::Snapshot(format!("bad spacing {dx}")));
    }
    let sites: usize = shape.iter().product();
    let mut body = vec![0u8; sites * DIM * 16];
    r.read_exact(&mut body)
        .map_err(|e| Error::Snapshot(format!("truncated data: {e}")))?;
    let mut extra = [0u8; 1];
    if r.read(&mut extra)? != 0 {
        return Err(Error::Snapshot("trailing bytes after data".into()));
    }
    let val = |o: usize| T::lit(f64::from_le_bytes(body[o..o + 8].try_into().unwrap()));
    let data = (0..sites)
        .map(|s| {
            FieldVector(std::array::from_fn(|k| {
                let o = (s * DIM + k) * 16;
                Complex::new(val(o), val(o + 8))
            }))
        })
        .collect();
    Ok(FieldGrid::with_data(
        shape,
        T::lit(dx),
        T::lit(time),
        Packing::default(),
        data,
    ))
}

pub fn save_snapshot<T: Real>(grid: &FieldGrid<T>, path: &std::path::Path) -> Result<()> {
    let f = std::fs::File::create(path)?;
    write_snapshot(grid, std::io::BufWriter::new(f))
}

pub fn load_snapshot<T: Real>(path: &std::path::Path) -> Result<FieldGrid<T>> {
    let f = std::fs::File::open(path)?;
    read_snapshot(std::io::BufReader::new(f))
}

/// Per-site `x,y,z,energy_density,Sx,Sy,Sz` with a header row.
pub fn write_observables_csv<T: Real>(
    rep: &BetaRep<T>,
    grid: &FieldGrid<T>,
    c: T,
    mut w: impl Write,
) -> Result<()> {
    let mut out = String::from("x,y,z,energy_density,Sx,Sy,Sz\n");
    for (idx, psi) in grid.data().iter().enumerate() {
        let [x, y, z] = grid.position(idx);
        let s = poynting(rep, psi, c);
        out.push_str(&format!(
            "{},{},{},{:e},{:e},{:e},{:e}\n",
            x,
            y,
            z,
            energy_density(psi).to_f64_lossy(),
            s[0].to_f64_lossy(),
            s[1].to_f64_lossy(),
            s[2].to_f64_lossy()
        ));
    }
    w.write_all(out.as_bytes())?;
    Ok(())
}

/// `time,total_energy,div_E_residual,curl_A_residual,full_constraint_residual`.
/// An untracked curl residual is written as an empty field.
pub fn write_time_series_csv<T: Real>(
    reports: &[ConstraintReport<T>],
    energy: &[EnergySample<T>],
    mut w: impl Write,
) -> Result<()> {
    let mut out =
        String::from("time,total_energy,div_E_residual,curl_A_residual,full_constraint_residual\n");
    for (r, e) in reports.iter().zip(energy) {
        let curl = r
            .curl_a_residual
            .map(|v| format!("{:e}", v.to_f64_lossy()))
            .unwrap_or_default();
        out.push_str(&format!(
            "{:e},{:e},{:e},{},{:e}\n",
            r.time.to_f64_lossy(),
            e.total_energy.to_f64_lossy(),
            r.div_e_residual.to_f64_lossy(),
            curl,
            r.full_constraint_residual.to_f64_lossy()
        ));
    }
    w.write_all(out.as_bytes())?;
    Ok(())
}
