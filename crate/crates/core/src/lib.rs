//! Exact arithmetic for Veronese sifting of multigraded Hilbert-series
//! numerators and the asymptotic K-polynomial of a grading matrix.
//!
//! The core objects:
//!
//! - [`intlat::GradingMatrix`]: an integer d x n matrix of full rank d whose
//!   column span meets the requirements for a positive multigrading
//!   (acyclic: no nonzero nonnegative integer vector in the kernel).
//! - [`laurent::LaurentPoly`]: sparse multivariate Laurent polynomials with
//!   exact coefficients, the carrier for numerators and K-polynomials.
//! - [`veronese`]: the sifting operator `phi_r` on numerators, its product
//!   formula, carry counts, and the asymptotic K-polynomial computed from
//!   fiber-polytope volumes over the interior lattice points of the zonotope.
//! - [`polytope`]: exact rational polytope machinery (vertex enumeration,
//!   normalized volumes in kernel-lattice coordinates, zonotopes, regions).
//! - [`concavity`], [`carries`]: structural checks on K-polynomials and the
//!   stochastic carries matrices.
//!
//! All arithmetic is exact; nothing in the computational path uses floating
//! point. Algorithms are generic over scalar types via `num-traits` bounds,
//! with the concrete aliases [`Int`] and [`Rat`] used throughout the public
//! API.

pub mod carries;
pub mod concavity;
pub mod error;
pub mod fm;
pub mod intlat;
pub mod laurent;
pub mod limits;
pub mod lp;
pub mod matrix;
pub mod polytope;
pub mod veronese;

/// Exact integer scalar used by the public API.
pub type Int = num_bigint::BigInt;

/// Exact rational scalar used by the public API.
pub type Rat = num_rational::BigRational;

pub use error::{Error, Result};
pub use limits::Limits;
