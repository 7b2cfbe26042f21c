//! Plain-text run configuration.
//!
//! One `key = value` per line; `#` starts a comment; vector values are
//! whitespace-separated. Recognized keys:
//!
//! | key | meaning | default |
//! |---|---|---|
//! | `nx`, `ny`, `nz` | lattice shape | required |
//! | `dx` | lattice spacing | required |
//! | `dt` | time step | required |
//! | `steps` | number of steps | required |
//! | `stencil_order` | 2 or 4 | 4 |
//! | `c` | wave speed | 1 |
//! | `cfl_limit` | Courant bound | 0.5 (order 2), 0.4 (order 4) |
//! | `track_potentials` | evolve A, A0 | true |
//! | `snapshot_every` | steps between snapshots, 0 = none | 0 |
//! | `report_every` | steps between time-series rows | 1 |
//! | `output_dir` | where outputs go | `out` |
//! | `l0` | packing length | 1 |
//! | `seed` | recorded in the manifest | 0 |
//! | `initial` | `plane_wave` or `zero` | `plane_wave` |
//! | `k` | integer mode numbers of the plane wave | `0 0 1` |
//! | `polarization` | unit vector orthogonal to `k` | `1 0 0` |
//! | `amplitude` | plane-wave amplitude | 1 |

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::dynamics::{EvolutionConfig, PlaneWave, Stencil};
use crate::fields::{FieldGrid, Packing};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum InitialCondition {
    PlaneWave {
        mode: [i64; 3],
        polarization: [f64; 3],
        amplitude: f64,
    },
    Zero,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub shape: [usize; 3],
    pub dx: f64,
    pub dt: f64,
    pub steps: usize,
    pub stencil: Stencil,
    pub c: f64,
    pub cfl_limit: f64,
    pub track_potentials: bool,
    pub snapshot_every: usize,
    pub report_every: usize,
    pub output_dir: PathBuf,
    pub l0: f64,
    pub seed: u64,
    pub initial: InitialCondition,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

const KEYS: [&str; 19] = [
    "nx",
    "ny",
    "nz",
    "dx",
    "dt",
    "steps",
    "stencil_order",
    "c",
    "cfl_limit",
    "track_potentials",
    "snapshot_every",
    "report_every",
    "output_dir",
    "l0",
    "seed",
    "initial",
    "k",
    "polarization",
    "amplitude",
];

struct Entries {
    map: BTreeMap<String, (usize, String)>,
}

impl Entries {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.map.remove(key)
    }

    fn num<V: std::str::FromStr>(&mut self, key: &str) -> Result<Option<V>> {
        match self.take(key) {
            None => Ok(None),
            Some((line, v)) => v
                .parse()
                .map(Some)
                .map_err(|_| parse_err(line, format!("bad value for `{key}`: {v:?}"))),
        }
    }

    fn required<V: std::str::FromStr>(&mut self, key: &str) -> Result<V> {
        self.num(key)?
            .ok_or_else(|| parse_err(0, format!("missing required key `{key}`")))
    }

    fn triple<V: std::str::FromStr + Copy>(
        &mut self,
        key: &str,
        default: [V; 3],
    ) -> Result<[V; 3]> {
        match self.take(key) {
            None => Ok(default),
            Some((line, v)) => {
                let parts: Vec<V> = v
                    .split_whitespace()
                    .map(|p| p.parse())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| parse_err(line, format!("bad vector for `{key}`: {v:?}")))?;
                <[V; 3]>::try_from(parts)
                    .map_err(|_| parse_err(line, format!("`{key}` needs three components")))
            }
        }
    }

    fn boolean(&mut self, key: &str, default: bool) -> Result<bool> {
        match self.take(key) {
            None => Ok(default),
            Some((line, v)) => match v.as_str() {
                "true" | "1" | "yes" | "on" => Ok(true),
                "false" | "0" | "no" | "off" => Ok(false),
                _ => Err(parse_err(line, format!("bad boolean for `{key}`: {v:?}"))),
            },
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (k, v) = content.split_once('=').ok_or_else(|| {
                parse_err(line, format!("expected `key = value`, got {content:?}"))
            })?;
            let key = k.trim().to_string();
            if !KEYS.contains(&key.as_str()) {
                return Err(parse_err(line, format!("unknown key `{key}`")));
            }
            if map
                .insert(key.clone(), (line, v.trim().to_string()))
                .is_some()
            {
                return Err(parse_err(line, format!("duplicate key `{key}`")));
            }
        }
        let mut e = Entries { map };

        let shape = [e.required("nx")?, e.required("ny")?, e.required("nz")?];
        if shape.contains(&0) {
            return Err(parse_err(0, "grid dimensions must be positive"));
        }
        let dx: f64 = e.required("dx")?;
        if !(dx > 0.0) {
            return Err(parse_err(0, "dx must be positive"));
        }
        let dt = e.required("dt")?;
        let steps = e.required("steps")?;
        let order: u32 = e.num("stencil_order")?.unwrap_or(4);
        let stencil = Stencil::from_order(order).map_err(|err| parse_err(0, err.to_string()))?;
        let c = e.num("c")?.unwrap_or(1.0);
        let cfl_limit = e.num("cfl_limit")?.unwrap_or(stencil.default_cfl());
        let track_potentials = e.boolean("track_potentials", true)?;
        let snapshot_every = e.num("snapshot_every")?.unwrap_or(0);
        let report_every = e.num("report_every")?.unwrap_or(1);
        let output_dir = e
            .take("output_dir")
            .map(|(_, v)| PathBuf::from(v))
            .unwrap_or_else(|| PathBuf::from("out"));
        let l0 = e.num("l0")?.unwrap_or(1.0);
        if !(l0 > 0.0) {
            return Err(parse_err(0, "l0 must be positive"));
        }
        let seed = e.num("seed")?.unwrap_or(0);

        let initial = match e.take("initial") {
            Some((_, v)) if v == "zero" => InitialCondition::Zero,
            Some((line, v)) if v != "plane_wave" => {
                return Err(parse_err(line, format!("unknown initial condition {v:?}")))
            }
            _ => InitialCondition::PlaneWave {
                mode: e.triple("k", [0, 0, 1])?,
                polarization: e.triple("polarization", [1.0, 0.0, 0.0])?,
                amplitude: e.num("amplitude")?.unwrap_or(1.0),
            },
        };

        Ok(Self {
            shape,
            dx,
            dt,
            steps,
            stencil,
            c,
            cfl_limit,
            track_potentials,
            snapshot_every,
            report_every,
            output_dir,
            l0,
            seed,
            initial,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Evolution parameters; fails on invalid values but not on CFL.
    pub fn evolution_config(&self) -> Result<EvolutionConfig<f64>> {
        Ok(
            EvolutionConfig::new(self.dt, self.steps, self.c, self.stencil)?
                .with_cfl_limit(self.cfl_limit)
                .with_potentials(self.track_potentials)
                .with_report_every(self.report_every),
        )
    }

    pub fn initial_grid(&self) -> Result<FieldGrid<f64>> {
        let packing = Packing::new(self.l0);
        match &self.initial {
            InitialCondition::Zero => {
                let mut g = FieldGrid::zeros(self.shape, self.dx);
                g.packing = packing;
                Ok(g)
            }
            InitialCondition::PlaneWave {
                mode,
                polarization,
                amplitude,
            } => {
                let extent = self.shape.map(|n| n as f64 * self.dx);
                PlaneWave::from_mode(*mode, *polarization, *amplitude, extent)?
                    .grid(self.shape, self.dx, packing, self.c, 0.0)
            }
        }
    }
}
