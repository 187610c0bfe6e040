//! A numerical workbench for finite-dimensional JB*-triples.
//!
//! The crate builds the classical Cartan factors (rectangular, symmetric,
//! antisymmetric, spin) and the two exceptional ones (octonion pairs and
//! hermitian 3×3 octonion matrices), runs Peirce decompositions, decides
//! the order relations `≤`, `≤₂`, `≤₀` and orthogonality on tripotents,
//! and verifies finiteness and lattice-modularity claims by deterministic
//! sampling campaigns.

pub mod cayley;
pub mod engine;
pub mod error;
pub mod exceptional;
pub mod factors;
pub mod lattice;
pub mod linalg;
pub mod space;
pub mod subspace;
pub mod tol;

pub use error::Error;
pub use tol::Tolerance;

/// Complex scalar used throughout.
pub type C = nalgebra::Complex<f64>;
/// Dense complex matrix.
pub type CMat = nalgebra::DMatrix<C>;
/// Dense complex column vector.
pub type CVec = nalgebra::DVector<C>;
