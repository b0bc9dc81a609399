//! Exact-arithmetic structure theory of hermitian simple Lie algebras and
//! euclidean Jordan algebras, with the classification of the subalgebras
//! generated by minimal-cone slices under an involution.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point and no tolerance anywhere.

pub mod scalar;
pub mod matrix;
pub mod division;
pub mod lie;
pub mod jordan;
pub mod kkt;
pub mod realize;
pub mod catalog;
pub mod wedge;

pub use matrix::{Matrix, Subspace};
pub use scalar::Scalar;
