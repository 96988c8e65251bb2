//! Linearizations of matrix polynomials expressed in three-term recurrence
//! (orthogonal) and degree-graded polynomial bases.
//!
//! A polynomial `P(λ) = Σ P_i φ_i(λ)` is linearized by pencils
//! `L(λ) = [v ⊗ I_n  B] · F(λ)`, where `F` is the anchor pencil built from the
//! basis recurrence. The crate builds these pencils, recovers `(v, B)` from a
//! pencil, constructs the block-symmetric ones, tests the rank condition for
//! strong linearizations, and computes and cross-checks spectra.

pub mod ansatz;
pub mod basis;
pub mod blocksym;
pub mod dense;
pub mod error;
pub mod io;
pub mod matpoly;
pub mod oracle;
pub mod pencil;
pub mod random;
pub mod spectral;

pub use ansatz::{AnsatzFactor, Side};
pub use basis::{Basis, BasisKind, DegreeGradedBasis, ThreeTermBasis};
pub use error::{Error, Result};
pub use matpoly::MatrixPolynomial;
pub use pencil::Pencil;
