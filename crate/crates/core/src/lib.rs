//! Classical electrodynamics in Kemmer-Duffin-Petiau (KDP) first-order form.
//!
//! The electromagnetic field at a point is a 10-component vector
//!
//! ```text
//! psi = (1/sqrt 2) (-Ex, -Ey, -Ez, Hx, Hy, Hz, -Ax/l0, -Ay/l0, -Az/l0, A0/l0)
//! ```
//!
//! and the free Maxwell equations read `beta_mu d^mu psi - i/l0 gamma psi = 0`
//! for the 10x10 KDP matrices built in [`algebra`]. The crate evolves such
//! fields on a periodic lattice ([`dynamics`]), evaluates observables through
//! the matrix pairing ([`fields`]), realizes Lorentz transformations from the
//! commutator generators ([`lorentz`]) and evaluates polarization correlations
//! of entangled two-beam states ([`bell`]).
//!
//! All numerics are generic over the real scalar `T: Real` (f32 or f64); the
//! `*64` aliases below are what most callers want.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod algebra;
pub mod bell;
pub mod config;
pub mod dynamics;
mod error;
pub mod fields;
pub mod lorentz;
pub mod matrix;
mod scalar;
pub mod snapshot;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub use scalar::Real;

pub use algebra::{AlgebraReport, BetaRep, Metric};
pub use bell::{BellSettings, PolarizationBasis, TwoBeamState};
pub use dynamics::{ConstraintReport, EvolutionConfig, Stencil};
pub use fields::{EMFields, FieldGrid, FieldVector, Packing};
pub use lorentz::{LorentzElement, TransformKind};
pub use matrix::Matrix10;

pub type C64 = num_complex::Complex<f64>;

pub type BetaRep64 = BetaRep<f64>;
pub type BetaRep32 = BetaRep<f32>;
pub type Matrix10f64 = Matrix10<f64>;
pub type FieldVector64 = FieldVector<f64>;
pub type FieldVector32 = FieldVector<f32>;
pub type FieldGrid64 = FieldGrid<f64>;
pub type FieldGrid32 = FieldGrid<f32>;
pub type EMFields64 = EMFields<f64>;
pub type EvolutionConfig64 = EvolutionConfig<f64>;
pub type LorentzElement64 = LorentzElement<f64>;
pub type TwoBeamState64 = TwoBeamState<f64>;
