//! Resource caps for potentially explosive enumerations.

/// Caps applied by operations that enumerate terms, lattice boxes, or minors.
///
/// Exceeding a cap yields [`crate::Error::SizeLimit`] rather than an attempt
/// to allocate. Defaults match the documented CLI limits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of Laurent terms any single result may hold.
    pub term_cap: u128,
    /// Maximum number of integer points in any enumerated box or fiber scan.
    pub box_cap: u128,
    /// Maximum number of square minors examined by exhaustive tests.
    pub minor_cap: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { term_cap: 1_000_000, box_cap: 10_000_000, minor_cap: 10_000_000 }
    }
}
