//! Numerical laboratory for EPRB/CHSH spin-correlation experiments.
//!
//! The crate is organized in four layers:
//!
//! * [`linalg`] — dense complex matrices, Kronecker products, commutators and
//!   a Jacobi eigensolver for Hermitian matrices up to dimension 256;
//! * [`eprb`] — single-pair objects: spin observables σ·u, their left/right
//!   embeddings, the singlet state and the correlation law E(u,v) = −u·v;
//! * [`chsh`] — the four-term Bell combination, its product-eigenvector
//!   analysis, the four-pair (256-dimensional) weak-objective space and a
//!   planar angle optimizer reaching the 2√2 maximum;
//! * [`lhv`] — finite-N local hidden-variable ensembles with deterministic
//!   counter-based sampling, strong/weak CHSH estimators whose per-term
//!   identities are integer-exact, and convergence sweeps.
//!
//! Everything numeric is generic over the [`Real`] scalar; the aliases below
//! fix the `f64` instantiation that the documented tolerances refer to.

pub mod chsh;
pub mod eprb;
pub mod error;
pub mod lhv;
pub mod linalg;
pub mod rng;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex64 = num_complex::Complex<f64>;
pub type Matrix64 = linalg::ComplexMatrix<f64>;
pub type State64 = linalg::StateVector<f64>;
pub type Direction64 = eprb::Direction<f64>;
pub type AngleConfig64 = chsh::AngleConfig<f64>;
pub type Estimate64 = lhv::ChshEstimate<f64>;
