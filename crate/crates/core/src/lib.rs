//! Workbench for the spectral Turán problem of odd prisms `C_{2k+1} □ K_2`.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: bitset-backed simple graphs, the named constructions and
//!   graph6 interchange;
//! * [`spectral`]: shifted power iteration, equitable partitions, quotient
//!   matrices, exact characteristic polynomials and real-root isolation;
//! * [`patterns`]: subgraph containment, the odd-prism detector and the
//!   small structural patterns used by the coloring argument;
//! * [`words`]: cyclic words over `{a,b,c,d}` and exhaustive checks of the
//!   forbidden-factor lemma and its prism-coloring corollary;
//! * [`formulas`]: closed forms for `ex(n, C_{2k+1}^□)` and the spectral
//!   extremal candidate `K_1 ∨ T_{n-1,2}`;
//! * [`search`]: exhaustive small-`n` extremal search with certificates.
//!
//! Numeric routines are generic over the scalar type (see [`Real`]); the
//! aliases below pin the common instantiations.

pub mod error;
pub mod formulas;
pub mod graph;
pub mod patterns;
pub mod scalar;
pub mod search;
pub mod spectral;
pub mod words;

pub use error::{Error, Result};
pub use graph::{EdgeList, Graph};
pub use scalar::Real;

/// Exact integer polynomial; used for characteristic polynomials.
pub type IntPolynomial = spectral::Polynomial<i128>;
/// Double-precision polynomial.
pub type RealPolynomial = spectral::Polynomial<f64>;
/// Single-precision polynomial.
pub type RealPolynomial32 = spectral::Polynomial<f32>;
/// Spectral result in double precision, the default everywhere in the CLI.
pub type SpectralResult = spectral::SpectralResult<f64>;
/// Spectral result in single precision.
pub type SpectralResult32 = spectral::SpectralResult<f32>;

/// Default convergence tolerance for eigenvalue computations.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
