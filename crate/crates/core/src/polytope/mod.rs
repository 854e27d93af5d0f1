//! Exact polyhedral geometry: vertex enumeration, normalized volumes by
//! pulling triangulations, zonotopes of column vectors, fiber polytopes,
//! region volumes from the block decomposition, and lattice-point counters.

pub(crate) mod counting;
mod fiber;
mod partition;
mod region;
mod solve;
mod vertices;
mod volume;
mod zonotope;

pub use counting::{image_counts, ImageCounts, KernelScanner};
pub(crate) use fiber::degenerate_witness;
pub use fiber::{fiber_polytope, is_degenerate, FiberPolytope};
pub use partition::partition_count;
pub use region::{region_support, region_volume, RegionSupport};
pub use vertices::enumerate_vertices;
pub use volume::normalized_volume;
pub use zonotope::{dilated_interior_points, zonotope, Zonotope};

use crate::Rat;
use num_traits::Zero;

/// Affine dimension of a point set: −1 when empty, else the rank of the
/// difference vectors from the first point.
pub(crate) fn affine_dim(points: &[Vec<Rat>]) -> i64 {
    if points.is_empty() {
        return -1;
    }
    let base = &points[0];
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    if diffs.is_empty() {
        return 0;
    }
    crate::matrix::rank(&crate::matrix::Mat::from_rows(&diffs)) as i64
}

/// Evaluates an integer functional on a rational point.
pub(crate) fn dot_i64_rat(a: &[i64], x: &[Rat]) -> Rat {
    a.iter()
        .zip(x)
        .map(|(&c, v)| Rat::from_integer(c.into()) * v)
        .fold(Rat::zero(), |acc, t| acc + t)
}
