//! The 10-dimensional KDP representation and its identities.
//!
//! Component layout of `psi` (0-based): `0..3` carry `-E`, `3..6` carry `H`,
//! `6..9` carry `-A/l0` and `9` carries `A0/l0`, all times `1/sqrt 2`.
//!
//! Every `beta_mu` is block off-diagonal with respect to the split
//! fields (0..6) / potentials (6..10): the field-from-potential block is
//! `i` times a real 6x4 matrix and the potential-from-field block is `-i`
//! times a real 4x6 matrix. Read row by row, `beta_mu d^mu psi = i/l0 gamma psi`
//! gives
//!
//! * rows 0..3: `E = -grad A0 - d_0 A`
//! * rows 3..6: `H = curl A`
//! * rows 6..9: `curl H - d_0 E = 0`
//! * row 9:     `div E = 0`
//!
//! with `d^0 = d_0 = (1/c) d_t` and `d^i = -d_i`. The row couplings in the last
//! two groups are the unique signs for which the trilinear relation holds.
//! See `docs/representation.md` for the full table.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::matrix::{Matrix10, DIM};
use crate::{Error, Real, Result};

/// Minkowski metric `diag(+1, -1, -1, -1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Metric;

impl Metric {
    pub const SIGNATURE: [i8; 4] = [1, -1, -1, -1];

    pub fn g<T: Real>(mu: usize, nu: usize) -> T {
        if mu == nu {
            T::from_i8(Self::SIGNATURE[mu]).unwrap()
        } else {
            T::zero()
        }
    }
}

/// Number of field-strength components selected by `gamma`.
pub const FIELD_DIM: usize = 6;

/// Relative singular-value threshold used for span ranks.
pub const RANK_THRESHOLD: f64 = 1e-9;

/// The four beta matrices together with everything derived from them.
///
/// Immutable once built; share it freely between threads.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaRep<T: Real> {
    beta: [Matrix10<T>; 4],
    gamma: Matrix10<T>,
    eta: Matrix10<T>,
    beta_tilde: [Matrix10<T>; 3],
}

fn levi_civita(a: usize, b: usize, c: usize) -> i8 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

impl<T: Real> BetaRep<T> {
    /// The standard representation, checked against every identity before it
    /// is returned.
    pub fn standard() -> Result<Self> {
        let rep = Self::from_betas(standard_betas());
        let report = rep.verify(T::zero());
        if !report.passed {
            let worst = report
                .identity_breakdown
                .iter()
                .filter(|(_, r)| *r > T::zero())
                .map(|(n, r)| format!("{n}={r}"))
                .collect::<Vec<_>>()
                .join(", ");
            return Err(Error::Construction(worst));
        }
        if report.span_dimension != DIM * DIM {
            return Err(Error::Construction(format!(
                "algebra spans {} dimensions, expected {}",
                report.span_dimension,
                DIM * DIM
            )));
        }
        Ok(rep)
    }

    /// Builds the derived matrices from four betas. `gamma` is always the
    /// standard field projector; nothing is verified.
    pub fn from_betas(beta: [Matrix10<T>; 4]) -> Self {
        let gamma = standard_gamma();
        let eta = (beta[0] * beta[0]).scale_real(T::lit(2.0)) - Matrix10::identity();
        let beta_tilde = std::array::from_fn(|i| beta[0].commutator(&beta[i + 1]));
        Self {
            beta,
            gamma,
            eta,
            beta_tilde,
        }
    }

    /// Assembles a representation from explicit parts without deriving or
    /// checking anything. Intended for corrupted fixtures.
    pub fn from_parts(
        beta: [Matrix10<T>; 4],
        gamma: Matrix10<T>,
        eta: Matrix10<T>,
        beta_tilde: [Matrix10<T>; 3],
    ) -> Self {
        Self {
            beta,
            gamma,
            eta,
            beta_tilde,
        }
    }

    /// Returns a copy with `beta_mu` replaced and every derived matrix left
    /// as it was.
    pub fn with_beta_replaced(&self, mu: usize, m: Matrix10<T>) -> Self {
        let mut out = self.clone();
        out.beta[mu] = m;
        out
    }

    /// All four betas zero; derived matrices follow from that.
    pub fn zero() -> Self {
        Self::from_betas([Matrix10::zero(); 4])
    }

    pub fn beta(&self, mu: usize) -> &Matrix10<T> {
        &self.beta[mu]
    }

    pub fn betas(&self) -> &[Matrix10<T>; 4] {
        &self.beta
    }

    pub fn gamma(&self) -> &Matrix10<T> {
        &self.gamma
    }

    pub fn eta(&self) -> &Matrix10<T> {
        &self.eta
    }

    /// `beta_0 beta_i - beta_i beta_0` for spatial `i` in `1..=3`.
    pub fn beta_tilde(&self, i: usize) -> &Matrix10<T> {
        &self.beta_tilde[i - 1]
    }

    pub fn sigma(&self, mu: usize, nu: usize) -> Result<Matrix10<T>> {
        sigma(self, mu, nu)
    }

    pub fn verify(&self, tol: T) -> AlgebraReport<T> {
        verify_algebra(self, tol)
    }
}

/// Free-function form of [`BetaRep::standard`].
pub fn build_standard_rep<T: Real>() -> Result<BetaRep<T>> {
    BetaRep::standard()
}

fn standard_gamma<T: Real>() -> Matrix10<T> {
    let mut d = [T::zero(); DIM];
    d[..FIELD_DIM].fill(T::one());
    Matrix10::from_real_diagonal(d)
}

fn standard_betas<T: Real>() -> [Matrix10<T>; 4] {
    let one = T::one();
    // Real blocks: field rows from potential columns, and back.
    let mut up = [[[T::zero(); 4]; FIELD_DIM]; 4];
    let mut down = [[[T::zero(); FIELD_DIM]; 4]; 4];

    for a in 0..3 {
        up[0][a][a] = -one;
        down[0][a][a] = -one;
    }
    for j in 0..3 {
        let mu = j + 1;
        up[mu][j][3] = -one;
        down[mu][3][j] = one;
        for a in 0..3 {
            for c in 0..3 {
                let e = T::from_i8(levi_civita(a, j, c)).unwrap();
                up[mu][3 + a][c] = e;
                down[mu][a][3 + c] = e;
            }
        }
    }

    let i = Complex::<T>::i();
    std::array::from_fn(|mu| {
        let mut m = Matrix10::zero();
        for r in 0..FIELD_DIM {
            for c in 0..4 {
                m[(r, FIELD_DIM + c)] = i * up[mu][r][c];
            }
        }
        for r in 0..4 {
            for c in 0..FIELD_DIM {
                m[(FIELD_DIM + r, c)] = -i * down[mu][r][c];
            }
        }
        m
    })
}

/// Outcome of checking every identity of a representation.
#[derive(Clone, Debug)]
pub struct AlgebraReport<T> {
    /// Maximum of the breakdown residuals.
    pub max_residual: T,
    /// (identity, largest Frobenius residual over its index combinations)
    pub identity_breakdown: Vec<(String, T)>,
    pub span_dimension: usize,
    pub passed: bool,
}

pub fn verify_algebra<T: Real>(rep: &BetaRep<T>, tol: T) -> AlgebraReport<T> {
    let mut breakdown: Vec<(String, T)> = Vec::new();
    let b = &rep.beta;
    let id = Matrix10::<T>::identity();
    let max = |it: &mut dyn Iterator<Item = T>| it.fold(T::zero(), T::max);

    let kdp = max(&mut (0..64).map(|n| {
        let (mu, nu, la) = (n / 16, (n / 4) % 4, n % 4);
        let lhs = b[mu] * b[nu] * b[la] + b[la] * b[nu] * b[mu];
        let rhs = b[mu].scale_real(Metric::g(nu, la)) + b[la].scale_real(Metric::g(nu, mu));
        (lhs - rhs).frobenius_norm()
    }));
    breakdown.push(("kdp_trilinear".into(), kdp));

    let g = &rep.gamma;
    breakdown.push(("gamma_idempotent".into(), (*g * *g - *g).frobenius_norm()));
    breakdown.push((
        "gamma_beta_anticommutator".into(),
        max(&mut b
            .iter()
            .map(|bm| (g.anticommutator(bm) - *bm).frobenius_norm())),
    ));
    breakdown.push((
        "gamma_diagonal_pattern".into(),
        (*g - standard_gamma()).frobenius_norm(),
    ));

    let e = &rep.eta;
    let eta_def = (b[0] * b[0]).scale_real(T::lit(2.0)) - id;
    breakdown.push(("eta_definition".into(), (*e - eta_def).frobenius_norm()));
    breakdown.push(("eta_involution".into(), (*e * *e - id).frobenius_norm()));
    breakdown.push(("eta_beta0".into(), (*e * b[0] - b[0]).frobenius_norm()));
    breakdown.push((
        "eta_beta_i_anticommute".into(),
        max(&mut (1..4).map(|i| e.anticommutator(&b[i]).frobenius_norm())),
    ));
    breakdown.push((
        "beta_tilde_definition".into(),
        max(&mut (1..4).map(|i| (rep.beta_tilde[i - 1] - b[0].commutator(&b[i])).frobenius_norm())),
    ));

    let max_residual = breakdown.iter().map(|(_, r)| *r).fold(T::zero(), T::max);
    let span_dimension = algebra_span_dimension(rep, 2 * DIM);
    AlgebraReport {
        max_residual,
        identity_breakdown: breakdown,
        span_dimension,
        passed: max_residual <= tol,
    }
}

/// `beta_mu beta_nu - beta_nu beta_mu`.
pub fn sigma<T: Real>(rep: &BetaRep<T>, mu: usize, nu: usize) -> Result<Matrix10<T>> {
    for index in [mu, nu] {
        if index > 3 {
            return Err(Error::IndexOutOfRange { index, bound: 4 });
        }
    }
    Ok(rep.beta[mu].commutator(&rep.beta[nu]))
}

fn flatten_f64<T: Real>(m: &Matrix10<T>) -> impl Iterator<Item = Complex<f64>> + '_ {
    m.rows()
        .iter()
        .flatten()
        .map(|z| Complex::new(z.re.to_f64_lossy(), z.im.to_f64_lossy()))
}

/// Orthonormal basis (as rows) of the row space of `rows`, cut at
/// [`RANK_THRESHOLD`] relative to the largest singular value.
fn row_space(rows: &[Vec<Complex<f64>>]) -> Vec<Vec<Complex<f64>>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let data: Vec<Complex<f64>> = rows.iter().flatten().copied().collect();
    let a = DMatrix::from_row_slice(rows.len(), ncols, &data);
    let svd = a.svd(false, true);
    let sv = &svd.singular_values;
    let largest = sv.iter().copied().fold(0.0, f64::max);
    if largest == 0.0 {
        return Vec::new();
    }
    let v_t = svd.v_t.expect("v_t requested");
    sv.iter()
        .enumerate()
        .filter(|(_, &s)| s > RANK_THRESHOLD * largest)
        .map(|(k, _)| v_t.row(k).iter().copied().collect())
        .collect()
}

/// Dimension of the linear span of all products of betas of length at most
/// `max_word_length`, the empty product (identity) included.
///
/// The span of words up to length `L + 1` is `1 + sum_mu beta_mu * S_L`, so
/// each level only multiplies an orthonormal basis of the previous one and
/// the growth stops as soon as a level adds nothing.
pub fn algebra_span_dimension<T: Real>(rep: &BetaRep<T>, max_word_length: usize) -> usize {
    let to_matrix =
        |v: &[Complex<f64>]| -> Matrix10<f64> { Matrix10::from_fn(|i, j| v[i * DIM + j]) };
    let betas: Vec<Matrix10<f64>> = rep
        .beta
        .iter()
        .map(|b| {
            let v: Vec<_> = flatten_f64(b).collect();
            to_matrix(&v)
        })
        .collect();
    let identity: Vec<Complex<f64>> = flatten_f64(&Matrix10::<f64>::identity()).collect();

    let mut basis = vec![identity.clone()];
    for _ in 0..max_word_length {
        let mut rows = vec![identity.clone()];
        for b in &basis {
            let w = to_matrix(b);
            for beta in &betas {
                rows.push(flatten_f64(&(*beta * w)).collect());
            }
        }
        let next = row_space(&rows);
        if next.len() == basis.len() {
            break;
        }
        basis = next;
    }
    basis.len()
}

/// Rank of an explicit list of matrices with the same threshold.
pub fn matrix_rank<T: Real>(mats: &[Matrix10<T>]) -> usize {
    let rows: Vec<Vec<Complex<f64>>> = mats.iter().map(|m| flatten_f64(m).collect()).collect();
    row_space(&rows).len()
}

impl<T: Real> AlgebraReport<T> {
    /// Aligned human-readable table.
    pub fn to_text(&self) -> String {
        let width = self
            .identity_breakdown
            .iter()
            .map(|(n, _)| n.len())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for (name, r) in &self.identity_breakdown {
            out.push_str(&format!("{name:<width$}  {:.3e}\n", r.to_f64_lossy()));
        }
        out.push_str(&format!(
            "{:<width$}  {:.3e}\n",
            "max_residual",
            self.max_residual.to_f64_lossy()
        ));
        out.push_str(&format!(
            "{:<width$}  {}\n",
            "span_dimension", self.span_dimension
        ));
        out.push_str(&format!(
            "{:<width$}  {}\n",
            "status",
            if self.passed { "PASS" } else { "FAIL" }
        ));
        out
    }

    /// `key=value` lines, one per identity.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        for (name, r) in &self.identity_breakdown {
            out.push_str(&format!("{name}={:e}\n", r.to_f64_lossy()));
        }
        out.push_str(&format!(
            "max_residual={:e}\n",
            self.max_residual.to_f64_lossy()
        ));
        out.push_str(&format!("span_dimension={}\n", self.span_dimension));
        out.push_str(&format!("passed={}\n", self.passed));
        out
    }
}

/// `i` as a complex scalar, for callers building operators by hand.
pub fn imag_unit<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}
