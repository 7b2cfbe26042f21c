//! Polarization-entangled two-beam states and analyzer correlations.
//!
//! A single beam travelling along `z` is a combination of the two
//! plane-polarized states `x^` (E along x, H along y) and `y^` (E along y,
//! H along -x). Two beams live in the four-dimensional product space with
//! ordered basis `(x1 x2, x1 y2, y1 x2, y1 y2)`.

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::BetaRep;
use crate::fields::{energy_density, pack, project_gamma, EMFields, FieldVector};
use crate::matrix::{Matrix10, DIM};
use crate::{Error, Real, Result};

/// Normalization tolerance on `sum |amp|^2 = 1`.
pub const NORM_TOL: f64 = 1e-12;

/// Margin above the bound 1 before a combination counts as a violation.
/// The combination equals 1 exactly on large parts of the setting space.
pub const VIOLATION_TOL: f64 = 1e-12;

pub fn violates_bound<T: Real>(lhs: T) -> bool {
    lhs > T::one() + T::lit(VIOLATION_TOL)
}

/// Unit embeddings of the two linear polarization states.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarizationBasis<T> {
    pub xhat: FieldVector<T>,
    pub yhat: FieldVector<T>,
}

impl<T: Real> PolarizationBasis<T> {
    /// Waves along `+z`: `x^ = pack(E = x, H = y)`, `y^ = pack(E = y, H = -x)`,
    /// scaled to unit norm.
    pub fn along_z() -> Self {
        let (o, z) = (T::one(), T::zero());
        let x = pack(&EMFields::from_eh([o, z, z], [z, o, z]));
        let y = pack(&EMFields::from_eh([z, o, z], [-o, z, z]));
        Self {
            xhat: normalize(&x),
            yhat: normalize(&y),
        }
    }

    pub fn vector(&self, which: usize) -> &FieldVector<T> {
        if which == 0 {
            &self.xhat
        } else {
            &self.yhat
        }
    }
}

impl<T: Real> Default for PolarizationBasis<T> {
    fn default() -> Self {
        Self::along_z()
    }
}

/// Scales to unit norm on the field block.
fn normalize<T: Real>(v: &FieldVector<T>) -> FieldVector<T> {
    let n = energy_density(v).sqrt();
    v.scale(Complex::new(T::one() / n, T::zero()))
}

/// The two single-beam states `gamma psi` as 10-component vectors, unit normalized.
pub fn embed_beam_states<T: Real>(pol: &PolarizationBasis<T>) -> (FieldVector<T>, FieldVector<T>) {
    (
        normalize(&project_gamma(&pol.xhat)),
        normalize(&project_gamma(&pol.yhat)),
    )
}

/// Normalized two-beam amplitudes over `(x1 x2, x1 y2, y1 x2, y1 y2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoBeamState<T> {
    amps: [Complex<T>; 4],
}

impl<T: Real> TwoBeamState<T> {
    /// Fails unless the amplitudes are already normalized.
    pub fn new(amps: [Complex<T>; 4]) -> Result<Self> {
        let s = Self { amps };
        s.check_normalized()?;
        Ok(s)
    }

    /// Any nonzero amplitudes, scaled to unit norm.
    pub fn normalized(amps: [Complex<T>; 4]) -> Self {
        let n = amps.iter().fold(T::zero(), |a, z| a + z.norm_sqr()).sqrt();
        Self {
            amps: amps.map(|z| z / n),
        }
    }

    /// `(x1 x2 + y1 y2) / sqrt 2`.
    pub fn entangled() -> Self {
        let s = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
        Self {
            amps: [s, Complex::zero(), Complex::zero(), s],
        }
    }

    /// `(a_x x1 + a_y y1)(b_x x2 + b_y y2)`, normalized.
    pub fn product(first: [Complex<T>; 2], second: [Complex<T>; 2]) -> Self {
        Self::normalized([
            first[0] * second[0],
            first[0] * second[1],
            first[1] * second[0],
            first[1] * second[1],
        ])
    }

    /// Without any normalization check; for exercising error paths.
    pub fn unchecked(amps: [Complex<T>; 4]) -> Self {
        Self { amps }
    }

    pub fn amps(&self) -> &[Complex<T>; 4] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().fold(T::zero(), |a, z| a + z.norm_sqr())
    }

    fn check_normalized(&self) -> Result<()> {
        let n = self.norm_sqr();
        if (n - T::one()).abs() > T::lit(NORM_TOL) {
            return Err(Error::NotNormalized(n.to_f64_lossy()));
        }
        Ok(())
    }

    /// Amplitudes as the 2x2 matrix `m[a][b]` of beam-1 state `a`, beam-2 state `b`.
    pub fn amplitude_matrix(&self) -> [[Complex<T>; 2]; 2] {
        [[self.amps[0], self.amps[1]], [self.amps[2], self.amps[3]]]
    }

    /// Rank of the amplitude matrix: 1 for product states, 2 if entangled.
    pub fn schmidt_rank(&self, tol: T) -> usize {
        let m = self.amplitude_matrix();
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det.norm() > tol {
            2
        } else if self.amps.iter().any(|z| z.norm() > tol) {
            1
        } else {
            0
        }
    }

    /// Same state with the two beams exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            amps: [self.amps[0], self.amps[2], self.amps[1], self.amps[3]],
        }
    }
}

/// Analyzer angles in radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BellSettings<T> {
    pub alpha: T,
    pub beta: T,
    pub gamma_angle: T,
}

impl<T: Real> BellSettings<T> {
    pub fn new(alpha: T, beta: T, gamma_angle: T) -> Self {
        Self {
            alpha,
            beta,
            gamma_angle,
        }
    }

    pub fn from_degrees(alpha: T, beta: T, gamma_angle: T) -> Self {
        Self::new(
            alpha.to_radians(),
            beta.to_radians(),
            gamma_angle.to_radians(),
        )
    }
}

/// Analyzer observable at angle `theta` in the `(x^, y^)` basis:
/// `[[cos 2t, sin 2t], [sin 2t, -cos 2t]]`. Eigenvalues are +1 and -1.
pub fn sigma_theta<T: Real>(theta: T) -> [[T; 2]; 2] {
    let (s, c) = (theta + theta).sin_cos();
    [[c, s], [s, -c]]
}

/// `<state| sigma_alpha (x) sigma_beta |state>` with the Hermitian inner product.
pub fn correlation<T: Real>(state: &TwoBeamState<T>, alpha: T, beta: T) -> Result<T> {
    state.check_normalized()?;
    let a = sigma_theta(alpha);
    let b = sigma_theta(beta);
    let amps = state.amps();
    let mut acc = Complex::zero();
    for (row, psi_row) in amps.iter().enumerate() {
        let (i, j) = (row / 2, row % 2);
        let mut op_psi = Complex::zero();
        for (col, psi_col) in amps.iter().enumerate() {
            let (k, l) = (col / 2, col % 2);
            op_psi += *psi_col * (a[i][k] * b[j][l]);
        }
        acc += psi_row.conj() * op_psi;
    }
    Ok(acc.re)
}

/// `|C(alpha, beta) - C(alpha, gamma)| + C(beta, gamma)`, evaluated from the
/// state. A local model keeps this at or below 1.
pub fn bell_lhs<T: Real>(state: &TwoBeamState<T>, s: &BellSettings<T>) -> Result<T> {
    let ab = correlation(state, s.alpha, s.beta)?;
    let ag = correlation(state, s.alpha, s.gamma_angle)?;
    let bg = correlation(state, s.beta, s.gamma_angle)?;
    Ok((ab - ag).abs() + bg)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRow<T> {
    pub settings: BellSettings<T>,
    pub lhs: T,
}

impl<T: Real> ScanRow<T> {
    pub fn violated(&self) -> bool {
        violates_bound(self.lhs)
    }
}

#[derive(Clone, Debug)]
pub struct ScanResult<T> {
    /// Row-major in (alpha, beta, gamma), gamma fastest.
    pub rows: Vec<ScanRow<T>>,
    pub best: ScanRow<T>,
}

/// Evaluates [`bell_lhs`] on the grid `k * pi / resolution`, `k < resolution`,
/// for each of the three angles.
pub fn violation_scan<T: Real>(
    state: &TwoBeamState<T>,
    resolution: usize,
) -> Result<ScanResult<T>> {
    if resolution < 2 {
        return Err(Error::InvalidConfig(format!(
            "scan resolution must be at least 2, got {resolution}"
        )));
    }
    state.check_normalized()?;
    let n = resolution;
    let angle = |k: usize| T::PI() * T::from_usize_lossy(k) / T::from_usize_lossy(n);
    let rows: Vec<ScanRow<T>> = (0..n * n * n)
        .into_par_iter()
        .map(|idx| {
            let settings =
                BellSettings::new(angle(idx / (n * n)), angle((idx / n) % n), angle(idx % n));
            let lhs = bell_lhs(state, &settings).expect("normalization checked");
            ScanRow { settings, lhs }
        })
        .collect();
    let best = rows
        .iter()
        .copied()
        .reduce(|a, b| if b.lhs > a.lhs { b } else { a })
        .expect("non-empty scan");
    Ok(ScanResult { rows, best })
}

/// The analyzer as a 10x10 operator on single-beam fields,
/// `sum_ab sigma_theta[a][b] v_a v_b^dagger`.
pub fn analyzer_operator<T: Real>(pol: &PolarizationBasis<T>, theta: T) -> Matrix10<T> {
    let s = sigma_theta(theta);
    let (x, y) = embed_beam_states(pol);
    let v = [x, y];
    let mut m = Matrix10::zero();
    for a in 0..2 {
        for b in 0..2 {
            for i in 0..DIM {
                for j in 0..DIM {
                    m[(i, j)] += v[a].0[i] * v[b].0[j].conj() * s[a][b];
                }
            }
        }
    }
    m
}

/// `sum_ab amp_ab v_a (x) v_b` as a 100-component vector, index `10 i + j`.
fn embed_two_beam<T: Real>(pol: &PolarizationBasis<T>, state: &TwoBeamState<T>) -> Vec<Complex<T>> {
    let (x, y) = embed_beam_states(pol);
    let v = [x, y];
    let mut out = vec![Complex::zero(); DIM * DIM];
    for (n, amp) in state.amps().iter().enumerate() {
        let (a, b) = (n / 2, n % 2);
        for i in 0..DIM {
            for j in 0..DIM {
                out[DIM * i + j] += *amp * v[a].0[i] * v[b].0[j];
            }
        }
    }
    out
}

fn kron<T: Real>(a: &Matrix10<T>, b: &Matrix10<T>) -> Vec<Complex<T>> {
    let n = DIM * DIM;
    let mut out = vec![Complex::zero(); n * n];
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                for l in 0..DIM {
                    out[(DIM * i + j) * n + DIM * k + l] = a[(i, k)] * b[(j, l)];
                }
            }
        }
    }
    out
}

fn mul_dense<T: Real>(m: &[Complex<T>], v: &[Complex<T>]) -> Vec<Complex<T>> {
    let n = v.len();
    (0..n)
        .map(|i| {
            m[i * n..(i + 1) * n]
                .iter()
                .zip(v)
                .fold(Complex::zero(), |acc, (a, b)| acc + *a * *b)
        })
        .collect()
}

fn pair<T: Real>(rep: &BetaRep<T>, psi: &[Complex<T>], op: &[Complex<T>]) -> Complex<T> {
    let eta2 = kron(rep.eta(), rep.eta());
    let w = mul_dense(&eta2, &mul_dense(op, psi));
    psi.iter()
        .zip(&w)
        .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * *b)
}

/// The same correlation as [`correlation`], computed on the 100-dimensional
/// product of the 10-component embeddings with the pairing
/// `Psibar O Psi = Psi^dagger (eta (x) eta) O Psi`. Each analyzer is lifted as
/// `eta sigma^_theta` so that the pairing reproduces the Hermitian one.
pub fn correlation_embedded<T: Real>(
    rep: &BetaRep<T>,
    pol: &PolarizationBasis<T>,
    state: &TwoBeamState<T>,
    alpha: T,
    beta: T,
) -> Result<T> {
    state.check_normalized()?;
    let psi = embed_two_beam(pol, state);
    let oa = *rep.eta() * analyzer_operator(pol, alpha);
    let ob = *rep.eta() * analyzer_operator(pol, beta);
    Ok(pair(rep, &psi, &kron(&oa, &ob)).re)
}

/// Pairing with the unlifted analyzers `sigma^_alpha (x) sigma^_beta`.
/// Zero for the plane-wave basis: each basis state is null under `eta`.
pub fn correlation_embedded_unlifted<T: Real>(
    rep: &BetaRep<T>,
    pol: &PolarizationBasis<T>,
    state: &TwoBeamState<T>,
    alpha: T,
    beta: T,
) -> Result<Complex<T>> {
    state.check_normalized()?;
    let psi = embed_two_beam(pol, state);
    let op = kron(
        &analyzer_operator(pol, alpha),
        &analyzer_operator(pol, beta),
    );
    Ok(pair(rep, &psi, &op))
}
