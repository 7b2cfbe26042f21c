//! Finite Lorentz transformations generated by `sigma_mu nu = [beta_mu, beta_nu]`.
//!
//! Conventions, fixed by comparison with the classical transformation laws:
//!
//! * rotation by `theta` about unit axis `n`: `exp(theta (n1 s23 + n2 s31 + n3 s12))`,
//!   the right-handed active rotation of `E`, `H` and `A` (A0 untouched);
//! * boost with rapidity `chi` along unit `n`: `exp(chi n_i s0i)`, the fields
//!   as seen from a frame moving with velocity `tanh(chi) n`.
//!
//! The generators are real, so real fields stay real. A full turn is the
//! identity since the representation carries no spinors.

use rayon::prelude::*;

use crate::algebra::BetaRep;
use crate::fields::{FieldGrid, FieldVector};
use crate::matrix::Matrix10;
use crate::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformKind {
    Rotation,
    Boost,
    General,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LorentzElement<T: Real> {
    /// Antisymmetric `theta^mu nu` with generator `sum_{mu<nu} theta^mu nu sigma_mu nu`;
    /// `None` for products of elements.
    pub params: Option<[[T; 4]; 4]>,
    pub matrix: Matrix10<T>,
    pub kind: TransformKind,
}

fn unit<T: Real>(v: [T; 3]) -> [T; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if n == T::zero() {
        v
    } else {
        v.map(|x| x / n)
    }
}

impl<T: Real> LorentzElement<T> {
    pub fn identity() -> Self {
        Self {
            params: Some([[T::zero(); 4]; 4]),
            matrix: Matrix10::identity(),
            kind: TransformKind::General,
        }
    }

    /// `exp(sum_{mu<nu} theta^mu nu sigma_mu nu)`; the lower triangle of
    /// `params` is ignored and overwritten with the antisymmetric partner.
    pub fn from_params(rep: &BetaRep<T>, params: [[T; 4]; 4], kind: TransformKind) -> Self {
        let mut p = params;
        let mut generator = Matrix10::zero();
        for mu in 0..4 {
            p[mu][mu] = T::zero();
            for nu in mu + 1..4 {
                p[nu][mu] = -p[mu][nu];
                if p[mu][nu] != T::zero() {
                    let s = rep.beta(mu).commutator(rep.beta(nu));
                    generator += s.scale_real(p[mu][nu]);
                }
            }
        }
        Self {
            params: Some(p),
            matrix: generator.exp(),
            kind,
        }
    }

    pub fn rotation(rep: &BetaRep<T>, axis: [T; 3], angle: T) -> Self {
        rotation(rep, axis, angle)
    }

    pub fn boost(rep: &BetaRep<T>, direction: [T; 3], rapidity: T) -> Self {
        boost(rep, direction, rapidity)
    }

    /// `self` after `first`: acting with the result equals acting with
    /// `first` and then `self`.
    pub fn compose(&self, first: &Self) -> Self {
        let kind = if self.kind == first.kind {
            self.kind
        } else {
            TransformKind::General
        };
        Self {
            params: None,
            matrix: self.matrix * first.matrix,
            kind,
        }
    }

    pub fn apply(&self, psi: &FieldVector<T>) -> FieldVector<T> {
        apply(self, psi)
    }

    /// Site-wise action on a grid (no coordinate remapping).
    pub fn apply_to_grid(&self, grid: &FieldGrid<T>) -> FieldGrid<T> {
        let data = grid.data().par_iter().map(|p| self.apply(p)).collect();
        FieldGrid::with_data(grid.shape(), grid.spacing(), grid.time, grid.packing, data)
    }
}

/// Rotation by `angle` radians about `axis` (normalized internally).
pub fn rotation<T: Real>(rep: &BetaRep<T>, axis: [T; 3], angle: T) -> LorentzElement<T> {
    let n = unit(axis);
    let mut p = [[T::zero(); 4]; 4];
    p[2][3] = angle * n[0];
    p[1][3] = -angle * n[1];
    p[1][2] = angle * n[2];
    LorentzElement::from_params(rep, p, TransformKind::Rotation)
}

/// Boost with `rapidity` along `direction` (normalized internally).
pub fn boost<T: Real>(rep: &BetaRep<T>, direction: [T; 3], rapidity: T) -> LorentzElement<T> {
    let n = unit(direction);
    let mut p = [[T::zero(); 4]; 4];
    for i in 0..3 {
        p[0][i + 1] = rapidity * n[i];
    }
    LorentzElement::from_params(rep, p, TransformKind::Boost)
}

pub fn apply<T: Real>(elem: &LorentzElement<T>, psi: &FieldVector<T>) -> FieldVector<T> {
    psi.apply(&elem.matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{energy_density, pack, project_gamma, EMFields};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn rep() -> BetaRep<f64> {
        BetaRep::standard().unwrap()
    }

    #[test]
    fn zero_angle_and_rapidity_are_identity() {
        let r = rep();
        assert_eq!(
            rotation(&r, [0.0, 0.0, 1.0], 0.0).matrix,
            Matrix10::identity()
        );
        assert_eq!(boost(&r, [1.0, 0.0, 0.0], 0.0).matrix, Matrix10::identity());
    }

    #[test]
    fn full_turn_is_identity() {
        let r = rep();
        for axis in [[0.0, 0.0, 1.0], [1.0, 2.0, -0.5]] {
            let m = rotation(&r, axis, 2.0 * PI).matrix;
            assert!(m.max_abs_diff(&Matrix10::identity()) < 1e-12);
        }
    }

    #[test]
    fn quarter_turn_about_z() {
        let r = rep();
        let rot = rotation(&r, [0.0, 0.0, 1.0], FRAC_PI_2);
        let out = rot.apply(&pack(&EMFields::from_eh([1.0, 0.0, 0.0], [0.0; 3])));
        let expected = pack(&EMFields::from_eh([0.0, 1.0, 0.0], [0.0; 3]));
        assert!(out
            .0
            .iter()
            .zip(&expected.0)
            .all(|(a, b)| (a - b).norm() < 1e-15));
    }

    #[test]
    fn boost_along_z_damps_forward_wave() {
        let r = rep();
        let chi = 0.7;
        let b = boost(&r, [0.0, 0.0, 1.0], chi);
        let out = b.apply(&pack(&EMFields::from_eh([1.0, 0.0, 0.0], [0.0, 1.0, 0.0])));
        let f = crate::fields::unpack(&out).re();
        assert!((f.e[0] - (-chi).exp()).abs() < 1e-14);
        assert!((f.h[1] - (-chi).exp()).abs() < 1e-14);
        assert!(f.e[1].abs() < 1e-15 && f.e[2].abs() < 1e-15);
    }

    #[test]
    fn boost_inverse() {
        let r = rep();
        let d = [0.3, -0.4, 0.5];
        let m = boost(&r, d, 0.9).compose(&boost(&r, d, -0.9)).matrix;
        assert!(m.max_abs_diff(&Matrix10::identity()) < 1e-13);
    }

    #[test]
    fn same_axis_rotations_compose() {
        let r = rep();
        let axis = [0.0, 0.0, 1.0];
        let twice = rotation(&r, axis, 0.4).compose(&rotation(&r, axis, 0.4));
        assert_eq!(twice.kind, TransformKind::Rotation);
        assert!(twice.matrix.max_abs_diff(&rotation(&r, axis, 0.8).matrix) < 1e-12);
        let psi = pack(&EMFields::new(
            [1.0, 2.0, 3.0],
            [0.1, -0.2, 0.3],
            [0.5, 0.5, 0.0],
            0.7,
        ));
        let stepwise = rotation(&r, axis, 0.4).apply(&rotation(&r, axis, 0.4).apply(&psi));
        let direct = twice.apply(&psi);
        assert!(stepwise
            .0
            .iter()
            .zip(&direct.0)
            .all(|(a, b)| (a - b).norm() < 1e-14));
    }

    #[test]
    fn rotation_commutes_with_gamma_and_keeps_energy() {
        let r = rep();
        let rot = rotation(&r, [1.0, 1.0, 0.0], 1.1);
        let psi = pack(&EMFields::new(
            [1.0, 2.0, 3.0],
            [0.1, -0.2, 0.3],
            [0.5, 0.5, 0.0],
            0.7,
        ));
        let a = project_gamma(&rot.apply(&psi));
        let b = rot.apply(&project_gamma(&psi));
        assert!(a.0.iter().zip(&b.0).all(|(x, y)| (x - y).norm() < 1e-15));
        assert!((energy_density(&rot.apply(&psi)) - energy_density(&psi)).abs() < 1e-13);
        assert!(rot.apply(&psi).max_imag() == 0.0);
    }

    #[test]
    fn params_are_antisymmetric() {
        let p = rotation(&rep(), [0.0, 1.0, 0.0], 0.3).params.unwrap();
        for mu in 0..4 {
            for nu in 0..4 {
                assert_eq!(p[mu][nu], -p[nu][mu]);
            }
        }
    }
}
