//! Error type shared by every module in the crate.

use num_bigint::BigInt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building configurations or running
/// the lattice pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The grading matrix does not have full row rank.
    RankDeficient { rank: usize, expected: usize },
    /// The columns admit a nonzero nonnegative integer kernel vector, so no
    /// positive grading functional exists; the witness satisfies A·w = 0,
    /// w ≥ 0, w ≠ 0.
    NotAcyclic { witness: Vec<BigInt> },
    /// Some lattice point on the boundary of the zonotope has a
    /// full-dimensional fiber polytope; the asymptotic theory needs the
    /// full-dimensional fibers to sit over interior points only.
    DegenerateMap { witness: Vec<BigInt> },
    /// An enumeration would exceed a configured cap.
    SizeLimit {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    /// The zonotope has no interior lattice point, so there is nothing to
    /// index a carries matrix by.
    EmptyInterior,
    /// Malformed or inconsistent input.
    InvalidInput { detail: String },
    /// A requirement failed for one term of a codimension expansion; the
    /// index identifies the offending term.
    ExpansionTerm { index: usize, cause: Box<Error> },
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::RankDeficient { rank, expected } => {
                write!(f, "matrix has rank {rank}, expected full row rank {expected}")
            }
            Error::NotAcyclic { witness } => {
                write!(f, "columns are not acyclic: {witness:?} is a nonzero nonnegative kernel vector")
            }
            Error::DegenerateMap { witness } => {
                write!(
                    f,
                    "degenerate grading: boundary lattice point {witness:?} has a full-dimensional fiber"
                )
            }
            Error::SizeLimit { what, needed, cap } => {
                write!(f, "{what} needs {needed} items, above the cap {cap}")
            }
            Error::EmptyInterior => write!(f, "zonotope has no interior lattice point"),
            Error::InvalidInput { detail } => write!(f, "invalid input: {detail}"),
            Error::ExpansionTerm { index, cause } => {
                write!(f, "expansion term {index}: {cause}")
            }
        }
    }
}

impl std::error::Error for Error {}
