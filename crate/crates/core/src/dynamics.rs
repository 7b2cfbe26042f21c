//! Lattice evolution of the packed field and constraint monitoring.
//!
//! The semi-discrete system is `d_t psi = c (sum_j M_j D_j psi + K psi)` on a
//! periodic lattice, with `D_j` a central difference and
//!
//! * `M_j = gamma beta~_j gamma` on the field block (`d_0 Psi = beta~_j d_j Psi`),
//! * `M_j += P beta_0 beta_j` and `K = (i/l0) P beta_0 gamma` on rows 6..9,
//!   which is `beta_0` times the field equation restricted to the vector
//!   potential rows (`P` projects onto them),
//! * `M_j += e_9 e_{6+j}^T`, the Lorenz row `d_0 A0 = -div A`.
//!
//! Time integration is classical fourth-order Runge-Kutta.

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{BetaRep, FIELD_DIM};
use crate::fields::{cross, dot3, energy_density, EMFields, FieldGrid, FieldVector, Packing};
use crate::matrix::{Matrix10, SparseMatrix10, Vector10, DIM};
use crate::{Error, Real, Result};

pub mod curl_form;

/// Central-difference order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stencil {
    Second,
    Fourth,
}

impl Stencil {
    pub fn from_order(order: u32) -> Result<Self> {
        match order {
            2 => Ok(Self::Second),
            4 => Ok(Self::Fourth),
            other => Err(Error::InvalidConfig(format!(
                "stencil_order must be 2 or 4, got {other}"
            ))),
        }
    }

    pub fn order(self) -> u32 {
        match self {
            Self::Second => 2,
            Self::Fourth => 4,
        }
    }

    pub fn default_cfl(self) -> f64 {
        match self {
            Self::Second => 0.5,
            Self::Fourth => 0.4,
        }
    }

    /// (offset, weight) for `dx * d/dx`.
    pub fn first_derivative(self) -> &'static [(isize, f64)] {
        const SECOND: [(isize, f64); 2] = [(1, 0.5), (-1, -0.5)];
        const FOURTH: [(isize, f64); 4] = [
            (1, 2.0 / 3.0),
            (-1, -2.0 / 3.0),
            (2, -1.0 / 12.0),
            (-2, 1.0 / 12.0),
        ];
        match self {
            Self::Second => &SECOND,
            Self::Fourth => &FOURTH,
        }
    }

    /// (offset, weight) for `dx^2 * d^2/dx^2`.
    pub fn second_derivative(self) -> &'static [(isize, f64)] {
        const SECOND: [(isize, f64); 3] = [(0, -2.0), (1, 1.0), (-1, 1.0)];
        const FOURTH: [(isize, f64); 5] = [
            (0, -2.5),
            (1, 4.0 / 3.0),
            (-1, 4.0 / 3.0),
            (2, -1.0 / 12.0),
            (-2, -1.0 / 12.0),
        ];
        match self {
            Self::Second => &SECOND,
            Self::Fourth => &FOURTH,
        }
    }
}

/// Time-stepping parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionConfig<T> {
    pub dt: T,
    pub steps: usize,
    pub c: T,
    pub stencil: Stencil,
    pub cfl_limit: T,
    pub track_potentials: bool,
    /// Record a report every this many steps (0: first and last only).
    pub report_every: usize,
}

impl<T: Real> EvolutionConfig<T> {
    /// Config with the stencil's default CFL limit, potentials tracked and
    /// a report every step.
    pub fn new(dt: T, steps: usize, c: T, stencil: Stencil) -> Result<Self> {
        let cfg = Self {
            dt,
            steps,
            c,
            stencil,
            cfl_limit: T::lit(stencil.default_cfl()),
            track_potentials: true,
            report_every: 1,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Time step `cfl * dx / c`.
    pub fn at_courant(courant: T, dx: T, steps: usize, c: T, stencil: Stencil) -> Result<Self> {
        Self::new(courant * dx / c, steps, c, stencil)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: T| v > T::zero() && v.is_finite();
        if !positive(self.dt) {
            return Err(Error::InvalidConfig(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !positive(self.c) {
            return Err(Error::InvalidConfig(format!(
                "c must be positive, got {}",
                self.c
            )));
        }
        if !positive(self.cfl_limit) {
            return Err(Error::InvalidConfig(format!(
                "cfl_limit must be positive, got {}",
                self.cfl_limit
            )));
        }
        Ok(())
    }

    pub fn courant(&self, dx: T) -> T {
        self.c * self.dt / dx
    }

    /// Fails if the Courant number exceeds the limit by more than rounding.
    pub fn check_cfl(&self, dx: T) -> Result<()> {
        let courant = self.courant(dx);
        if courant > self.cfl_limit * (T::one() + T::lit(8.0) * T::epsilon()) {
            return Err(Error::Cfl {
                courant: courant.to_f64_lossy(),
                limit: self.cfl_limit.to_f64_lossy(),
            });
        }
        Ok(())
    }

    pub fn with_cfl_limit(mut self, limit: T) -> Self {
        self.cfl_limit = limit;
        self
    }

    pub fn with_potentials(mut self, track: bool) -> Self {
        self.track_potentials = track;
        self
    }

    pub fn with_report_every(mut self, every: usize) -> Self {
        self.report_every = every;
        self
    }
}

/// Constraint residuals of one grid, all as grid L2 norms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstraintReport<T> {
    pub time: T,
    pub div_e_residual: T,
    /// `H - curl A`; `None` when potentials are not tracked.
    pub curl_a_residual: Option<T>,
    /// Matrix-form constraint `beta_i beta_0^2 d^i psi - (i/l0)(1 - beta_0^2) gamma psi`.
    pub full_constraint_residual: T,
}

/// Precomputed right-hand side of the KDP-form semi-discrete system.
#[derive(Clone, Debug)]
pub struct KdpOperator<T> {
    derivative: [SparseMatrix10<T>; 3],
    local: SparseMatrix10<T>,
    c: T,
    stencil: Stencil,
}

impl<T: Real> KdpOperator<T> {
    pub fn new(
        rep: &BetaRep<T>,
        packing: &Packing<T>,
        c: T,
        stencil: Stencil,
        track_potentials: bool,
    ) -> Self {
        let (derivative, local) = Self::matrices(rep, packing, track_potentials);
        Self {
            derivative: derivative.map(|m| m.to_sparse()),
            local: local.to_sparse(),
            c,
            stencil,
        }
    }

    /// The dense `M_j` (j = 1, 2, 3) and `K`.
    pub fn matrices(
        rep: &BetaRep<T>,
        packing: &Packing<T>,
        track_potentials: bool,
    ) -> ([Matrix10<T>; 3], Matrix10<T>) {
        let gamma = *rep.gamma();
        let mut p = Matrix10::zero();
        for k in FIELD_DIM..FIELD_DIM + 3 {
            p[(k, k)] = Complex::new(T::one(), T::zero());
        }
        let derivative = std::array::from_fn(|j| {
            let mut m = gamma * *rep.beta_tilde(j + 1) * gamma;
            if track_potentials {
                m += p * *rep.beta(0) * *rep.beta(j + 1);
                m[(9, FIELD_DIM + j)] += Complex::new(T::one(), T::zero());
            }
            m
        });
        let local = if track_potentials {
            let i_over_l0 = Complex::new(T::zero(), T::one() / packing.l0);
            (p * *rep.beta(0) * gamma).scale(i_over_l0)
        } else {
            Matrix10::zero()
        };
        (derivative, local)
    }

    fn rhs(
        &self,
        shape: [usize; 3],
        spacing: T,
        data: &[FieldVector<T>],
        out: &mut [FieldVector<T>],
    ) {
        let taps = Taps::new(self.stencil.first_derivative(), T::one() / spacing, shape);
        let [nx, ny, _] = shape;
        out.par_chunks_mut(nx).enumerate().for_each(|(row, chunk)| {
            let (y, z) = (row % ny, row / ny);
            for (x, o) in chunk.iter_mut().enumerate() {
                let idx = x + nx * row;
                let mut acc = [Complex::zero(); DIM];
                for (axis, c) in [x, y, z].into_iter().enumerate() {
                    let d = taps.derivative(data, idx, axis, c);
                    self.derivative[axis].mul_vec_acc(&d, &mut acc);
                }
                self.local.mul_vec_acc(&data[idx].0, &mut acc);
                *o = FieldVector(acc.map(|z| z * self.c));
            }
        });
    }
}

/// First-derivative weights with precomputed periodic index shifts.
struct Taps<T> {
    weights: Vec<T>,
    /// `shift[axis][coord * ntaps + t]`, added to the linear site index.
    shift: [Vec<isize>; 3],
}

impl<T: Real> Taps<T> {
    fn new(stencil: &[(isize, f64)], scale: T, shape: [usize; 3]) -> Self {
        let strides = [1, shape[0], shape[0] * shape[1]];
        let shift = std::array::from_fn(|axis| {
            let n = shape[axis] as isize;
            (0..n)
                .flat_map(|c| {
                    stencil.iter().map(move |&(off, _)| {
                        ((c + off).rem_euclid(n) - c) * strides[axis] as isize
                    })
                })
                .collect()
        });
        Self {
            weights: stencil.iter().map(|&(_, w)| T::lit(w) * scale).collect(),
            shift,
        }
    }

    #[inline]
    fn derivative(
        &self,
        data: &[FieldVector<T>],
        idx: usize,
        axis: usize,
        coord: usize,
    ) -> Vector10<T> {
        let nt = self.weights.len();
        let shifts = &self.shift[axis][coord * nt..(coord + 1) * nt];
        let mut d = [Complex::zero(); DIM];
        for (&w, &sh) in self.weights.iter().zip(shifts) {
            let v = &data[(idx as isize + sh) as usize].0;
            for k in 0..DIM {
                d[k] += v[k] * w;
            }
        }
        d
    }
}

/// Classical RK4 on the KDP-form system with reusable stage buffers.
#[derive(Clone, Debug)]
pub struct Stepper<T> {
    op: KdpOperator<T>,
    k: Vec<FieldVector<T>>,
    stage: Vec<FieldVector<T>>,
    sum: Vec<FieldVector<T>>,
}

impl<T: Real> Stepper<T> {
    pub fn new(op: KdpOperator<T>) -> Self {
        Self {
            op,
            k: Vec::new(),
            stage: Vec::new(),
            sum: Vec::new(),
        }
    }

    pub fn operator(&self) -> &KdpOperator<T> {
        &self.op
    }

    /// Advances `grid` in place by `dt`; no CFL check. On a non-finite result
    /// the grid contents are unspecified.
    pub fn advance(&mut self, grid: &mut FieldGrid<T>, dt: T) -> Result<()> {
        let n = grid.len();
        let (shape, dx) = (grid.shape(), grid.spacing());
        for buf in [&mut self.k, &mut self.stage, &mut self.sum] {
            buf.resize(n, FieldVector::zero());
        }
        let half = dt * T::lit(0.5);
        let two = T::lit(2.0);
        let psi = grid.data();

        self.op.rhs(shape, dx, psi, &mut self.k);
        (&mut self.sum, &mut self.stage, &self.k, psi)
            .into_par_iter()
            .for_each(|(s, st, k, p)| {
                *s = *k;
                *st = FieldVector(std::array::from_fn(|c| p.0[c] + k.0[c] * half));
            });
        for h in [half, dt] {
            self.op.rhs(shape, dx, &self.stage, &mut self.k);
            (&mut self.sum, &mut self.stage, &self.k, psi)
                .into_par_iter()
                .for_each(|(s, st, k, p)| {
                    *s = FieldVector(std::array::from_fn(|c| s.0[c] + k.0[c] * two));
                    *st = FieldVector(std::array::from_fn(|c| p.0[c] + k.0[c] * h));
                });
        }
        self.op.rhs(shape, dx, &self.stage, &mut self.k);

        let sixth = dt / T::lit(6.0);
        let (sum, k) = (&self.sum, &self.k);
        grid.data_mut()
            .par_iter_mut()
            .zip(sum)
            .zip(k)
            .for_each(|((p, s), k)| {
                *p = FieldVector(std::array::from_fn(|c| p.0[c] + (s.0[c] + k.0[c]) * sixth));
            });
        grid.time += dt;
        check_finite(grid.data(), grid.time)
    }
}

/// One RK4 step of the KDP-form system.
pub fn step<T: Real>(
    rep: &BetaRep<T>,
    grid: &FieldGrid<T>,
    cfg: &EvolutionConfig<T>,
) -> Result<FieldGrid<T>> {
    cfg.validate()?;
    cfg.check_cfl(grid.spacing())?;
    let op = KdpOperator::new(rep, &grid.packing, cfg.c, cfg.stencil, cfg.track_potentials);
    step_with(&op, grid, cfg.dt)
}

/// RK4 step with a prebuilt operator; no CFL check.
pub fn step_with<T: Real>(op: &KdpOperator<T>, grid: &FieldGrid<T>, dt: T) -> Result<FieldGrid<T>> {
    let mut next = grid.clone();
    Stepper::new(op.clone()).advance(&mut next, dt)?;
    Ok(next)
}

pub(crate) fn check_finite<T: Real>(data: &[FieldVector<T>], time: T) -> Result<()> {
    match data.iter().position(|p| !p.is_finite()) {
        Some(site) => Err(Error::NonFinite {
            site,
            time: time.to_f64_lossy(),
        }),
        None => Ok(()),
    }
}

/// Called by [`evolve`] after every step.
pub trait Observer<T> {
    fn observe(&mut self, step: usize, grid: &FieldGrid<T>) -> Result<()>;
}

impl<T> Observer<T> for () {
    fn observe(&mut self, _: usize, _: &FieldGrid<T>) -> Result<()> {
        Ok(())
    }
}

impl<T, F: FnMut(usize, &FieldGrid<T>) -> Result<()>> Observer<T> for F {
    fn observe(&mut self, step: usize, grid: &FieldGrid<T>) -> Result<()> {
        self(step, grid)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergySample<T> {
    pub time: T,
    pub total_energy: T,
}

#[derive(Clone, Debug)]
pub struct Evolution<T> {
    pub grid: FieldGrid<T>,
    pub reports: Vec<ConstraintReport<T>>,
    pub energy: Vec<EnergySample<T>>,
}

impl<T: Real> Evolution<T> {
    /// `(E_last - E_first) / E_first`; zero for a zero-energy run.
    pub fn relative_energy_drift(&self) -> T {
        match (self.energy.first(), self.energy.last()) {
            (Some(a), Some(b)) if a.total_energy > T::zero() => {
                (b.total_energy - a.total_energy) / a.total_energy
            }
            _ => T::zero(),
        }
    }
}

/// Runs `cfg.steps` steps, recording constraint residuals and total energy
/// at the configured cadence (always at the first and last step).
pub fn evolve<T: Real>(
    rep: &BetaRep<T>,
    grid: &FieldGrid<T>,
    cfg: &EvolutionConfig<T>,
    observer: &mut dyn Observer<T>,
) -> Result<Evolution<T>> {
    cfg.validate()?;
    cfg.check_cfl(grid.spacing())?;
    let mut stepper = Stepper::new(KdpOperator::new(
        rep,
        &grid.packing,
        cfg.c,
        cfg.stencil,
        cfg.track_potentials,
    ));
    let record = |g: &FieldGrid<T>,
                  reports: &mut Vec<ConstraintReport<T>>,
                  energy: &mut Vec<EnergySample<T>>| {
        let mut r = constraint_residual(rep, g, cfg.stencil);
        if !cfg.track_potentials {
            r.curl_a_residual = None;
        }
        reports.push(r);
        energy.push(EnergySample {
            time: g.time,
            total_energy: g.total_energy(),
        });
    };

    let mut reports = Vec::new();
    let mut energy = Vec::new();
    let mut current = grid.clone();
    record(&current, &mut reports, &mut energy);
    for n in 1..=cfg.steps {
        stepper.advance(&mut current, cfg.dt)?;
        observer.observe(n, &current)?;
        let due = cfg.report_every > 0 && n % cfg.report_every == 0;
        if due || n == cfg.steps {
            record(&current, &mut reports, &mut energy);
        }
    }
    Ok(Evolution {
        grid: current,
        reports,
        energy,
    })
}

/// Finite-difference derivative of every component along `axis`.
fn gradient_along<T: Real>(grid: &FieldGrid<T>, axis: usize, stencil: Stencil) -> Vec<Vector10<T>> {
    let taps = Taps::new(
        stencil.first_derivative(),
        T::one() / grid.spacing(),
        grid.shape(),
    );
    (0..grid.len())
        .into_par_iter()
        .map(|idx| taps.derivative(grid.data(), idx, axis, grid.coords(idx)[axis]))
        .collect()
}

/// Residuals of the constraint part of the field equation, both in matrix
/// form and as `div E`, `H - curl A`. The two forms are related by
/// `full^2 = (|H - curl A|^2 / l0^2 + |div E|^2) / 2`.
pub fn constraint_residual<T: Real>(
    rep: &BetaRep<T>,
    grid: &FieldGrid<T>,
    stencil: Stencil,
) -> ConstraintReport<T> {
    let grads: [Vec<Vector10<T>>; 3] =
        std::array::from_fn(|axis| gradient_along(grid, axis, stencil));
    let b0sq = *rep.beta(0) * *rep.beta(0);
    // d^i = -d_i
    let spatial: [SparseMatrix10<T>; 3] =
        std::array::from_fn(|i| (-(*rep.beta(i + 1) * b0sq)).to_sparse());
    let i_over_l0 = Complex::new(T::zero(), T::one() / grid.packing.l0);
    let local = ((Matrix10::identity() - b0sq) * *rep.gamma())
        .scale(-i_over_l0)
        .to_sparse();

    let s2 = T::SQRT_2();
    let l0s2 = s2 * grid.packing.l0;
    let (full, div, curl) = (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let mut r = [Complex::zero(); DIM];
            for i in 0..3 {
                spatial[i].mul_vec_acc(&grads[i][idx], &mut r);
            }
            local.mul_vec_acc(&grid.data()[idx].0, &mut r);
            let full: T = r.iter().fold(T::zero(), |a, z| a + z.norm_sqr());

            // physical form: E = -sqrt2 psi_0..3, H = sqrt2 psi_3..6, A = -sqrt2 l0 psi_6..9
            let de = |i: usize, a: usize| -grads[i][idx][a] * s2;
            let da = |i: usize, a: usize| -grads[i][idx][FIELD_DIM + a] * l0s2;
            let div_e = de(0, 0) + de(1, 1) + de(2, 2);
            let psi = &grid.data()[idx].0;
            let curl_a = [
                da(1, 2) - da(2, 1),
                da(2, 0) - da(0, 2),
                da(0, 1) - da(1, 0),
            ];
            let c = (0..3).fold(T::zero(), |acc, a| {
                acc + (psi[3 + a] * s2 - curl_a[a]).norm_sqr()
            });
            (full, div_e.norm_sqr(), c)
        })
        .collect::<Vec<_>>()
        .into_iter()
        // sequential sum keeps the result independent of the thread count
        .fold((T::zero(), T::zero(), T::zero()), |a, b| {
            (a.0 + b.0, a.1 + b.1, a.2 + b.2)
        });
    let vol = grid.cell_volume();
    ConstraintReport {
        time: grid.time,
        div_e_residual: (div * vol).sqrt(),
        curl_a_residual: Some((curl * vol).sqrt()),
        full_constraint_residual: (full * vol).sqrt(),
    }
}

/// L2 norm of `(prev - 2 cur + next) / (c dt)^2 - laplacian(cur)` over the
/// field block, with a second-order difference in time and the configured
/// stencil in space.
pub fn dalembert_residual<T: Real>(
    prev: &FieldGrid<T>,
    cur: &FieldGrid<T>,
    next: &FieldGrid<T>,
    cfg: &EvolutionConfig<T>,
) -> Result<T> {
    for g in [prev, next] {
        if !g.same_shape(cur) {
            return Err(Error::ShapeMismatch(g.shape(), cur.shape()));
        }
    }
    let cdt2 = (cfg.c * cfg.dt) * (cfg.c * cfg.dt);
    let inv_dx2 = T::one() / (cur.spacing() * cur.spacing());
    let taps: Vec<(isize, T)> = cfg
        .stencil
        .second_derivative()
        .iter()
        .map(|&(o, w)| (o, T::lit(w) * inv_dx2))
        .collect();
    let two = T::lit(2.0);
    let sum = (0..cur.len())
        .into_par_iter()
        .map(|idx| {
            let mut acc = T::zero();
            for k in 0..FIELD_DIM {
                let tt = (prev.data()[idx].0[k] - cur.data()[idx].0[k] * two
                    + next.data()[idx].0[k])
                    / cdt2;
                let mut lap = Complex::zero();
                for axis in 0..3 {
                    for &(off, w) in &taps {
                        lap += cur.data()[cur.neighbor(idx, axis, off)].0[k] * w;
                    }
                }
                acc += (tt - lap).norm_sqr();
            }
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(T::zero(), |a, b| a + b);
    Ok((sum * cur.cell_volume()).sqrt())
}

/// Transverse plane wave `E = pol * amplitude * cos(k.x - omega t)`,
/// `H = k_hat x E`, `A = pol * (amplitude/|k|) sin(k.x - omega t)`, `A0 = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneWave<T> {
    pub k: [T; 3],
    pub polarization: [T; 3],
    pub amplitude: T,
}

impl<T: Real> PlaneWave<T> {
    /// Validated wave; `k` must be nonzero and `polarization` a unit vector
    /// orthogonal to it.
    pub fn new(k: [T; 3], polarization: [T; 3], amplitude: T) -> Result<Self> {
        let kk = dot3(k, k).sqrt();
        if kk == T::zero() {
            return Err(Error::InvalidConfig(
                "plane wave needs a nonzero wavevector".into(),
            ));
        }
        let tol = T::lit(1e-9);
        let pn = dot3(polarization, polarization).sqrt();
        if (pn - T::one()).abs() > tol {
            return Err(Error::InvalidConfig(format!(
                "polarization must be a unit vector (|p| = {pn})"
            )));
        }
        if (dot3(polarization, k) / kk).abs() > tol {
            return Err(Error::InvalidConfig(
                "polarization is not transverse to k".into(),
            ));
        }
        Ok(Self {
            k,
            polarization,
            amplitude,
        })
    }

    /// Wave with integer mode numbers `mode` in a box of edge lengths `extent`.
    pub fn from_mode(
        mode: [i64; 3],
        polarization: [T; 3],
        amplitude: T,
        extent: [T; 3],
    ) -> Result<Self> {
        let two_pi = T::TAU();
        let k = std::array::from_fn(|a| two_pi * T::from_i64(mode[a]).unwrap() / extent[a]);
        Self::new(k, polarization, amplitude)
    }

    pub fn k_norm(&self) -> T {
        dot3(self.k, self.k).sqrt()
    }

    pub fn fields_at(&self, x: [T; 3], t: T, c: T) -> EMFields<T> {
        let kn = self.k_norm();
        let phase = dot3(self.k, x) - c * kn * t;
        let e = self.polarization.map(|p| p * self.amplitude * phase.cos());
        let khat = self.k.map(|v| v / kn);
        let h = cross(khat, e);
        let a = self
            .polarization
            .map(|p| p * self.amplitude / kn * phase.sin());
        EMFields::new(e, h, a, T::zero())
    }

    /// Samples the wave on a lattice; `k` must be periodic in the box.
    pub fn grid(
        &self,
        shape: [usize; 3],
        spacing: T,
        packing: Packing<T>,
        c: T,
        t: T,
    ) -> Result<FieldGrid<T>> {
        let mut g = FieldGrid::zeros(shape, spacing);
        for (a, &len) in g.extent().iter().enumerate() {
            let cycles = self.k[a] * len / T::TAU();
            if (cycles - cycles.round()).abs() > T::lit(1e-9) {
                return Err(Error::InvalidConfig(format!(
                    "k[{a}] = {} is not periodic in a box of length {len}",
                    self.k[a]
                )));
            }
        }
        g.packing = packing;
        g.time = t;
        for idx in 0..g.len() {
            let x = g.position(idx);
            g.data_mut()[idx] = packing.pack(&self.fields_at(x, t, c));
        }
        Ok(g)
    }
}

/// Plane-wave fixture on a lattice (see [`PlaneWave`]).
pub fn make_plane_wave<T: Real>(
    k: [T; 3],
    polarization: [T; 3],
    amplitude: T,
    shape: [usize; 3],
    spacing: T,
) -> Result<FieldGrid<T>> {
    PlaneWave::new(k, polarization, amplitude)?.grid(
        shape,
        spacing,
        Packing::default(),
        T::one(),
        T::zero(),
    )
}

/// Sum of energy density times cell volume of a field list.
pub fn total_energy_of<T: Real>(data: &[FieldVector<T>], spacing: T) -> T {
    data.iter().fold(T::zero(), |a, p| a + energy_density(p)) * spacing * spacing * spacing
}
