//! Physical fields, the packed 10-component wavefunction and its observables.

use num_complex::Complex;
use num_traits::Zero;

use crate::algebra::{BetaRep, Metric, FIELD_DIM};
use crate::matrix::{Matrix10, Vector10, DIM};
use crate::Real;

/// `(E, H, A, A0)` at one point. `S` is `T` for physical data and
/// `Complex<T>` for superpositions.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EMFields<S> {
    pub e: [S; 3],
    pub h: [S; 3],
    pub a: [S; 3],
    pub a0: S,
}

impl<T: Real> EMFields<T> {
    pub fn new(e: [T; 3], h: [T; 3], a: [T; 3], a0: T) -> Self {
        Self { e, h, a, a0 }
    }

    /// Field strengths only, potentials zero.
    pub fn from_eh(e: [T; 3], h: [T; 3]) -> Self {
        Self {
            e,
            h,
            ..Self::default()
        }
    }
}

impl<T: Real> EMFields<Complex<T>> {
    /// Largest absolute imaginary part over all components.
    pub fn max_imag(&self) -> T {
        self.e
            .iter()
            .chain(&self.h)
            .chain(&self.a)
            .chain(std::iter::once(&self.a0))
            .map(|z| z.im.abs())
            .fold(T::zero(), T::max)
    }

    pub fn is_real(&self, tol: T) -> bool {
        self.max_imag() <= tol
    }

    pub fn re(&self) -> EMFields<T> {
        EMFields {
            e: self.e.map(|z| z.re),
            h: self.h.map(|z| z.re),
            a: self.a.map(|z| z.re),
            a0: self.a0.re,
        }
    }
}

/// Packed wavefunction `psi` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldVector<T>(pub Vector10<T>);

impl<T: Real> Default for FieldVector<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Real> FieldVector<T> {
    pub fn zero() -> Self {
        Self([Complex::zero(); DIM])
    }

    pub fn from_real(v: [T; DIM]) -> Self {
        Self(v.map(|x| Complex::new(x, T::zero())))
    }

    pub fn components(&self) -> &Vector10<T> {
        &self.0
    }

    pub fn norm_sqr(&self) -> T {
        self.0.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    /// `sum conj(self_k) other_k`
    pub fn dot(&self, other: &Self) -> Complex<T> {
        self.0
            .iter()
            .zip(&other.0)
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * *b)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(std::array::from_fn(|k| self.0[k] + other.0[k]))
    }

    pub fn max_imag(&self) -> T {
        self.0.iter().map(|z| z.im.abs()).fold(T::zero(), T::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn apply(&self, m: &Matrix10<T>) -> Self {
        Self(m.mul_vec(&self.0))
    }
}

/// Packing convention: the fundamental length `l0` scaling the potentials.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Packing<T> {
    pub l0: T,
}

impl<T: Real> Default for Packing<T> {
    fn default() -> Self {
        Self { l0: T::one() }
    }
}

impl<T: Real> Packing<T> {
    pub fn new(l0: T) -> Self {
        Self { l0 }
    }

    pub fn pack(&self, f: &EMFields<T>) -> FieldVector<T> {
        let s = T::FRAC_1_SQRT_2();
        let p = s / self.l0;
        FieldVector::from_real([
            -f.e[0] * s,
            -f.e[1] * s,
            -f.e[2] * s,
            f.h[0] * s,
            f.h[1] * s,
            f.h[2] * s,
            -f.a[0] * p,
            -f.a[1] * p,
            -f.a[2] * p,
            f.a0 * p,
        ])
    }

    pub fn unpack(&self, psi: &FieldVector<T>) -> EMFields<Complex<T>> {
        let s = T::SQRT_2();
        let p = s * self.l0;
        let v = &psi.0;
        EMFields {
            e: [-v[0] * s, -v[1] * s, -v[2] * s],
            h: [v[3] * s, v[4] * s, v[5] * s],
            a: [-v[6] * p, -v[7] * p, -v[8] * p],
            a0: v[9] * p,
        }
    }

    /// Real parts of [`Packing::unpack`].
    pub fn unpack_real(&self, psi: &FieldVector<T>) -> EMFields<T> {
        self.unpack(psi).re()
    }

    /// Re-expresses `psi` packed with `self` in the convention `to`.
    pub fn repack(&self, psi: &FieldVector<T>, to: &Packing<T>) -> FieldVector<T> {
        let mut out = *psi;
        let ratio = self.l0 / to.l0;
        for z in &mut out.0[FIELD_DIM..] {
            *z *= ratio;
        }
        out
    }
}

/// Packs with `l0 = 1`.
pub fn pack<T: Real>(f: &EMFields<T>) -> FieldVector<T> {
    Packing::default().pack(f)
}

/// Unpacks with `l0 = 1`.
pub fn unpack<T: Real>(psi: &FieldVector<T>) -> EMFields<Complex<T>> {
    Packing::default().unpack(psi)
}

/// `gamma psi`: keeps the six field components.
pub fn project_gamma<T: Real>(psi: &FieldVector<T>) -> FieldVector<T> {
    let mut out = *psi;
    out.0[FIELD_DIM..].fill(Complex::zero());
    out
}

/// `Psi^dagger Psi` with `Psi = gamma psi`.
pub fn energy_density<T: Real>(psi: &FieldVector<T>) -> T {
    psi.0[..FIELD_DIM]
        .iter()
        .fold(T::zero(), |acc, z| acc + z.norm_sqr())
}

/// `Psibar O Psi = (gamma psi)^dagger eta O (gamma psi)`.
pub fn expectation<T: Real>(
    rep: &BetaRep<T>,
    psi: &FieldVector<T>,
    op: &Matrix10<T>,
) -> Complex<T> {
    let big_psi = project_gamma(psi);
    let o_psi = op.mul_vec(&big_psi.0);
    let eta_o_psi = rep.eta().mul_vec(&o_psi);
    big_psi
        .0
        .iter()
        .zip(&eta_o_psi)
        .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * *b)
}

/// Operator whose pairing gives the Poynting component `S_i`, `i` in `1..=3`.
///
/// This is `-c eta beta~_i = -c (beta_0 beta_i + beta_i beta_0)`, so that
/// `Psibar O Psi = c Psi^dagger beta~^i Psi = c Theta_0i`. Pairing `beta~_i`
/// itself with `Psibar` vanishes on every real field, see
/// [`poynting_unraised`].
pub fn poynting_operator<T: Real>(rep: &BetaRep<T>, i: usize, c: T) -> Matrix10<T> {
    (*rep.eta() * *rep.beta_tilde(i)).scale_real(-c)
}

/// Poynting vector `c (E x H)` evaluated through the matrix pairing.
pub fn poynting<T: Real>(rep: &BetaRep<T>, psi: &FieldVector<T>, c: T) -> [T; 3] {
    std::array::from_fn(|k| expectation(rep, psi, &poynting_operator(rep, k + 1, c)).re)
}

/// `c Psibar beta~_i Psi` taken literally; zero for real fields because
/// `eta beta~_i` is antisymmetric on the field block.
pub fn poynting_unraised<T: Real>(rep: &BetaRep<T>, psi: &FieldVector<T>, c: T) -> [Complex<T>; 3] {
    std::array::from_fn(|k| expectation(rep, psi, &rep.beta_tilde(k + 1).scale_real(c)))
}

/// `Theta_mu nu = -Psibar (beta_mu beta_nu + beta_nu beta_mu - g_mu nu) Psi`
/// (real part; exactly real for real fields).
pub fn stress_tensor<T: Real>(rep: &BetaRep<T>, psi: &FieldVector<T>) -> [[T; 4]; 4] {
    let mut theta = [[T::zero(); 4]; 4];
    for mu in 0..4 {
        for nu in mu..4 {
            let op = rep.beta(mu).anticommutator(rep.beta(nu))
                - Matrix10::identity().scale_real(Metric::g(mu, nu));
            let v = -expectation(rep, psi, &op).re;
            theta[mu][nu] = v;
            theta[nu][mu] = v;
        }
    }
    theta
}

/// `Psi_hat = U gamma psi`, the Riemann-Silberstein arrangement
/// `(1/2)(-E + iH, E + iH, 0, 0, 0, 0)` for real fields. `U` is unitary on
/// the field block.
pub fn riemann_silberstein<T: Real>(psi: &FieldVector<T>) -> Vector10<T> {
    let s = T::FRAC_1_SQRT_2();
    let i = Complex::<T>::i();
    let v = &psi.0;
    let mut out = [Complex::zero(); DIM];
    for a in 0..3 {
        out[a] = (v[a] + i * v[3 + a]) * s;
        out[3 + a] = (-v[a] + i * v[3 + a]) * s;
    }
    out
}

/// The map `U` of [`riemann_silberstein`] as a matrix (identity-free on the
/// potential block, which it annihilates).
pub fn riemann_silberstein_matrix<T: Real>() -> Matrix10<T> {
    let s = T::FRAC_1_SQRT_2();
    let mut u = Matrix10::zero();
    for a in 0..3 {
        u[(a, a)] = Complex::new(s, T::zero());
        u[(a, 3 + a)] = Complex::new(T::zero(), s);
        u[(3 + a, a)] = Complex::new(-s, T::zero());
        u[(3 + a, 3 + a)] = Complex::new(T::zero(), s);
    }
    u
}

pub fn cross<T: Real>(a: [T; 3], b: [T; 3]) -> [T; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn dot3<T: Real>(a: [T; 3], b: [T; 3]) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Periodic lattice of [`FieldVector`]s, `x` index fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldGrid<T> {
    shape: [usize; 3],
    spacing: T,
    pub time: T,
    pub packing: Packing<T>,
    data: Vec<FieldVector<T>>,
}

impl<T: Real> FieldGrid<T> {
    pub fn zeros(shape: [usize; 3], spacing: T) -> Self {
        assert!(
            shape.iter().all(|&n| n > 0),
            "grid dimensions must be positive"
        );
        assert!(spacing > T::zero(), "grid spacing must be positive");
        Self {
            shape,
            spacing,
            time: T::zero(),
            packing: Packing::default(),
            data: vec![FieldVector::zero(); shape.iter().product()],
        }
    }

    /// Fills each site from its integer coordinates.
    pub fn from_fn(
        shape: [usize; 3],
        spacing: T,
        packing: Packing<T>,
        mut f: impl FnMut([usize; 3]) -> FieldVector<T>,
    ) -> Self {
        let mut g = Self::zeros(shape, spacing);
        g.packing = packing;
        for idx in 0..g.data.len() {
            g.data[idx] = f(g.coords(idx));
        }
        g
    }

    pub fn with_data(
        shape: [usize; 3],
        spacing: T,
        time: T,
        packing: Packing<T>,
        data: Vec<FieldVector<T>>,
    ) -> Self {
        assert_eq!(data.len(), shape.iter().product::<usize>());
        Self {
            shape,
            spacing,
            time,
            packing,
            data,
        }
    }

    pub fn shape(&self) -> [usize; 3] {
        self.shape
    }

    pub fn spacing(&self) -> T {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[FieldVector<T>] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [FieldVector<T>] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<FieldVector<T>> {
        self.data
    }

    pub fn cell_volume(&self) -> T {
        self.spacing * self.spacing * self.spacing
    }

    /// Box edge lengths.
    pub fn extent(&self) -> [T; 3] {
        self.shape.map(|n| T::from_usize_lossy(n) * self.spacing)
    }

    pub fn index(&self, [x, y, z]: [usize; 3]) -> usize {
        x + self.shape[0] * (y + self.shape[1] * z)
    }

    pub fn coords(&self, idx: usize) -> [usize; 3] {
        let [nx, ny, _] = self.shape;
        [idx % nx, (idx / nx) % ny, idx / (nx * ny)]
    }

    pub fn position(&self, idx: usize) -> [T; 3] {
        self.coords(idx)
            .map(|c| T::from_usize_lossy(c) * self.spacing)
    }

    /// Index of the site `offset` steps along `axis` from `idx`, wrapping.
    pub fn neighbor(&self, idx: usize, axis: usize, offset: isize) -> usize {
        let mut c = self.coords(idx);
        let n = self.shape[axis] as isize;
        c[axis] = (c[axis] as isize + offset).rem_euclid(n) as usize;
        self.index(c)
    }

    pub fn at(&self, c: [usize; 3]) -> &FieldVector<T> {
        &self.data[self.index(c)]
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.shape == other.shape
    }

    /// Sum of energy density times cell volume.
    pub fn total_energy(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, psi| acc + energy_density(psi))
            * self.cell_volume()
    }

    /// Unpacked fields at every site (real parts).
    pub fn fields(&self) -> Vec<EMFields<T>> {
        self.data
            .iter()
            .map(|p| self.packing.unpack_real(p))
            .collect()
    }

    /// Same physical state in another packing convention.
    pub fn repacked(&self, to: Packing<T>) -> Self {
        let data = self
            .data
            .iter()
            .map(|p| self.packing.repack(p, &to))
            .collect();
        Self {
            packing: to,
            data,
            ..self.clone()
        }
    }

    /// Grid L2 norm `sqrt(sum |v|^2 dx^3)` of the selected component range.
    pub fn l2_norm(&self, components: std::ops::Range<usize>) -> T {
        let s = self.data.iter().fold(T::zero(), |acc, p| {
            acc + p.0[components.clone()]
                .iter()
                .fold(T::zero(), |a, z| a + z.norm_sqr())
        });
        (s * self.cell_volume()).sqrt()
    }

    /// Grid L2 norm of the difference to `other` over `components`.
    pub fn l2_distance(&self, other: &Self, components: std::ops::Range<usize>) -> T {
        let s = self
            .data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |acc, (p, q)| {
                acc + components
                    .clone()
                    .fold(T::zero(), |a, k| a + (p.0[k] - q.0[k]).norm_sqr())
            });
        (s * self.cell_volume()).sqrt()
    }

    pub fn max_abs_difference(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .flat_map(|(p, q)| p.0.iter().zip(&q.0).map(|(a, b)| (*a - *b).norm()))
            .fold(T::zero(), T::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rep() -> &'static BetaRep<f64> {
        static REP: std::sync::OnceLock<BetaRep<f64>> = std::sync::OnceLock::new();
        REP.get_or_init(|| BetaRep::standard().unwrap())
    }

    fn approx(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn pack_first_component() {
        let psi = pack(&EMFields::from_eh([1.0f64, 0.0, 0.0], [0.0; 3]));
        assert_eq!(psi.0[0].re, -std::f64::consts::FRAC_1_SQRT_2);
        assert!(psi.0[1..].iter().all(|z| z.is_zero()));
        assert_eq!(pack(&EMFields::<f64>::default()), FieldVector::zero());
    }

    #[test]
    fn unpack_component_order() {
        let mut psi = FieldVector::<f64>::zero();
        psi.0[4] = Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let f = unpack(&psi).re();
        assert!((f.h[1] - 1.0).abs() < 1e-15);
        assert_eq!(f.e, [0.0; 3]);
        assert_eq!([f.h[0], f.h[2]], [0.0, 0.0]);
    }

    #[test]
    fn complex_content_is_flagged() {
        let mut psi = pack(&EMFields::from_eh([1.0, 2.0, 3.0], [0.5; 3]));
        assert!(unpack(&psi).is_real(0.0));
        psi.0[2] = Complex::new(0.0, 1.0);
        let f = unpack(&psi);
        assert!(!f.is_real(1e-12));
        assert!((f.max_imag() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn gamma_projection() {
        let ones = FieldVector::from_real([1.0; 10]);
        let p = project_gamma(&ones);
        assert_eq!(
            p,
            FieldVector::from_real([1., 1., 1., 1., 1., 1., 0., 0., 0., 0.])
        );
        assert_eq!(project_gamma(&p), p);
        let pot = pack(&EMFields::new([0.0; 3], [0.0; 3], [1.0, -2.0, 3.0], 4.0));
        assert_eq!(project_gamma(&pot), FieldVector::zero());
    }

    #[test]
    fn energy_examples() {
        let f = EMFields::from_eh([1.0f64, 0.0, 0.0], [0.0, 1.0, 0.0]);
        assert!((energy_density(&pack(&f)) - 1.0).abs() < 1e-15);
        assert_eq!(energy_density(&FieldVector::<f64>::zero()), 0.0);
    }

    #[test]
    fn poynting_examples() {
        let r = rep();
        let f = EMFields::from_eh([1.0f64, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let s = poynting(r, &pack(&f), 1.0);
        assert!(approx(s[0], 0.0, 1e-15) && approx(s[1], 0.0, 1e-15));
        assert!(approx(s[2], 1.0, 1e-15));
        let par = EMFields::from_eh([1.0, 2.0, 3.0], [2.0, 4.0, 6.0]);
        assert!(poynting(r, &pack(&par), 1.0)
            .iter()
            .all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn unraised_pairing_vanishes_on_real_fields() {
        let f = EMFields::from_eh([0.3, -1.2, 0.7], [1.1, 0.4, -0.9]);
        for z in poynting_unraised(rep(), &pack(&f), 1.0) {
            assert!(z.norm() < 1e-15);
        }
    }

    #[test]
    fn expectation_examples() {
        let r = rep();
        let f = EMFields::new([0.3, -1.2, 0.7], [1.1, 0.4, -0.9], [1.0, 2.0, 3.0], 0.5);
        let psi = pack(&f);
        // eta * op = gamma reproduces Psi^dagger Psi
        let op = *r.eta() * *r.gamma();
        assert!((expectation(r, &psi, &op).re - energy_density(&psi)).abs() < 1e-15);
        assert_eq!(expectation(r, &psi, &Matrix10::zero()), Complex::zero());
    }

    #[test]
    fn stress_tensor_examples() {
        let r = rep();
        let f = EMFields::from_eh([1.0f64, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let t = stress_tensor(r, &pack(&f));
        assert!((-t[0][0] - 1.0).abs() < 1e-15);
        // Theta_0i = (E x H)_i
        assert!((t[0][3] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn riemann_silberstein_pattern() {
        let psi = pack(&EMFields::from_eh([1.0f64, 0.0, 0.0], [0.0; 3]));
        let rs = riemann_silberstein(&psi);
        assert!((rs[0].re + 0.5).abs() < 1e-15);
        assert!((rs[3].re - 0.5).abs() < 1e-15);
        assert!(rs[6..].iter().all(|z| z.is_zero()));
        // matrix form agrees
        let via_u = riemann_silberstein_matrix::<f64>().mul_vec(&psi.0);
        assert_eq!(via_u, rs);
    }

    #[test]
    fn riemann_silberstein_matrix_is_unitary_on_field_block() {
        let u = riemann_silberstein_matrix::<f64>();
        let uu = u.adjoint() * u;
        let mut g = Matrix10::zero();
        for k in 0..6 {
            g[(k, k)] = Complex::new(1.0, 0.0);
        }
        assert!(uu.max_abs_diff(&g) < 1e-15);
    }

    #[test]
    fn grid_indexing_wraps() {
        let g = FieldGrid::<f64>::zeros([4, 3, 2], 0.5);
        let idx = g.index([3, 2, 1]);
        assert_eq!(g.coords(idx), [3, 2, 1]);
        assert_eq!(g.coords(g.neighbor(idx, 0, 1)), [0, 2, 1]);
        assert_eq!(g.coords(g.neighbor(idx, 1, 2)), [3, 1, 1]);
        assert_eq!(g.coords(g.neighbor(idx, 2, -3)), [3, 2, 0]);
        assert_eq!(g.extent(), [2.0, 1.5, 1.0]);
    }

    fn fields_strategy() -> impl Strategy<Value = EMFields<f64>> {
        let v = || prop::array::uniform3(-10.0..10.0f64);
        (v(), v(), v(), -10.0..10.0f64).prop_map(|(e, h, a, a0)| EMFields::new(e, h, a, a0))
    }

    proptest! {
        #[test]
        fn pack_roundtrip(f in fields_strategy(), l0 in 0.1..20.0f64) {
            let p = Packing::new(l0);
            let back = p.unpack(&p.pack(&f));
            prop_assert!(back.is_real(0.0));
            let back = back.re();
            for (x, y) in back.e.iter().chain(&back.h).chain(&back.a).zip(f.e.iter().chain(&f.h).chain(&f.a)) {
                prop_assert!((x - y).abs() <= 1e-14 * (1.0 + y.abs()));
            }
            prop_assert!((back.a0 - f.a0).abs() <= 1e-14 * (1.0 + f.a0.abs()));
        }

        #[test]
        fn observables_match_direct_formulas(f in fields_strategy()) {
            let r = rep();
            let psi = pack(&f);
            let u = (dot3(f.e, f.e) + dot3(f.h, f.h)) / 2.0;
            prop_assert!(approx(energy_density(&psi), u, 1e-14));
            let s = poynting(r, &psi, 1.0);
            let x = cross(f.e, f.h);
            for k in 0..3 {
                prop_assert!((s[k] - x[k]).abs() <= 1e-13 * (1.0 + u));
            }
            let t = stress_tensor(r, &psi);
            for mu in 0..4 {
                for nu in 0..4 {
                    prop_assert_eq!(t[mu][nu], t[nu][mu]);
                }
            }
            prop_assert_eq!(-t[0][0], energy_density(&psi));
        }

        #[test]
        fn riemann_silberstein_preserves_norm(v in prop::array::uniform10((-5.0..5.0f64, -5.0..5.0f64))) {
            let psi = FieldVector(v.map(|(a, b)| Complex::new(a, b)));
            let rs = riemann_silberstein(&psi);
            let n: f64 = rs.iter().map(|z| z.norm_sqr()).sum();
            prop_assert!(approx(n, energy_density(&psi), 1e-14));
        }

        #[test]
        fn magnetic_flip_conjugates_rs(f in fields_strategy()) {
            let flipped = EMFields { h: f.h.map(|x| -x), ..f };
            let a = riemann_silberstein(&pack(&f));
            let b = riemann_silberstein(&pack(&flipped));
            for k in 0..10 {
                prop_assert!((a[k].conj() - b[k]).norm() < 1e-14);
            }
        }
    }
}
