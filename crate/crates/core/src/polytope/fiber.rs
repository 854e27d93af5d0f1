//! Fiber polytopes P(u) = {x ∈ [0,1]^n : A·x = u} and the degeneracy test.

use super::volume::normalized_volume;
use super::{affine_dim, zonotope};
use crate::intlat::{combinations, GradingMatrix};
use crate::{Int, Limits, Rat, Result};
use num_traits::{FromPrimitive, One, Signed, Zero};
use std::collections::BTreeSet;

/// A fiber of the cube over a graded point, with its normalized volume
/// measured against the kernel lattice.
#[derive(Debug, Clone)]
pub struct FiberPolytope {
    /// The graded point u.
    pub point: Vec<i64>,
    /// Vertices in the cube's coordinates, lexicographic.
    pub vertices: Vec<Vec<Rat>>,
    /// Dimension: −1 when empty, up to n−d.
    pub dim: i64,
    /// (n−d)! times the Euclidean volume w.r.t. the kernel lattice; zero
    /// unless the fiber is full-dimensional.
    pub normalized_volume: Rat,
}

/// Builds the fiber over u by pinning each choice of n−d coordinates to 0/1
/// and solving the remaining square system.
pub fn fiber_polytope(config: &GradingMatrix, u: &[i64]) -> FiberPolytope {
    let (d, n) = (config.d(), config.n());
    assert_eq!(u.len(), d);
    let one = Rat::one();
    let mut seen: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for pinned in combinations(n, n - d) {
        let free: Vec<usize> = (0..n).filter(|j| !pinned.contains(j)).collect();
        let m: Vec<Vec<i64>> = (0..d)
            .map(|i| free.iter().map(|&j| config.rows_i64()[i][j]).collect())
            .collect();
        // Singularity of the free block is independent of the pinned values.
        if super::solve::solve_square(&m, &vec![0; d]).is_none() {
            continue;
        }
        for bits in 0u32..(1 << (n - d)) {
            let rhs: Vec<i64> = (0..d)
                .map(|i| {
                    u[i]
                        - pinned
                            .iter()
                            .enumerate()
                            .filter(|(t, _)| bits >> t & 1 == 1)
                            .map(|(_, &j)| config.rows_i64()[i][j])
                            .sum::<i64>()
                })
                .collect();
            let Some(x_free) = super::solve::solve_square(&m, &rhs) else {
                continue;
            };
            if !x_free.iter().all(|v| !v.is_negative() && *v <= one) {
                continue;
            }
            let mut x = vec![Rat::zero(); n];
            for (t, &j) in pinned.iter().enumerate() {
                if bits >> t & 1 == 1 {
                    x[j] = one.clone();
                }
            }
            for (idx, &j) in free.iter().enumerate() {
                x[j] = x_free[idx].clone();
            }
            seen.insert(x);
        }
    }
    let vertices: Vec<Vec<Rat>> = seen.into_iter().collect();
    let dim = affine_dim(&vertices);
    let normalized_volume = if dim == (n - d) as i64 {
        kernel_coordinate_volume(config, &vertices)
    } else {
        Rat::zero()
    };
    FiberPolytope { point: u.to_vec(), vertices, dim, normalized_volume }
}

/// Maps the fiber into coordinates over the kernel lattice and measures it
/// there, so a fundamental cell of the lattice has normalized volume (n−d)!.
fn kernel_coordinate_volume(config: &GradingMatrix, vertices: &[Vec<Rat>]) -> Rat {
    let n = config.n();
    let k = n - config.d();
    if k == 0 {
        return Rat::one();
    }
    // Column-echelon basis of the kernel lattice: pivot rows make the
    // coordinate solve a forward substitution.
    let kmat = crate::matrix::Mat::from_rows(config.kernel_lattice());
    let (u_w, h_w) = crate::matrix::row_hermite(&kmat);
    debug_assert_eq!(u_w.rows(), k);
    let e = h_w.transpose(); // n×k, column j zero above its pivot row
    let e_i64: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..k)
                .map(|j| num_traits::ToPrimitive::to_i64(e.at(i, j)).expect("echelon entry fits i64"))
                .collect()
        })
        .collect();
    let pivot_rows: Vec<usize> = (0..k)
        .map(|j| (0..n).find(|&i| e_i64[i][j] != 0).expect("echelon column has a pivot"))
        .collect();
    let base = &vertices[0];
    let to_kernel = |v: &[Rat]| -> Vec<Rat> {
        let mut y = vec![Rat::zero(); k];
        for j in 0..k {
            let row = pivot_rows[j];
            let mut acc = &v[row] - &base[row];
            for (t, y_t) in y.iter().enumerate().take(j) {
                acc -= Rat::from_i64(e_i64[row][t]).unwrap() * y_t;
            }
            y[j] = acc / Rat::from_i64(e_i64[row][j]).unwrap();
        }
        y
    };
    let y_verts: Vec<Vec<Rat>> = vertices.iter().map(|v| to_kernel(v)).collect();
    // The cube constraints 0 ≤ base + E·y ≤ 1 become integer inequalities
    // after clearing each base denominator.
    let mut ineqs: Vec<(Vec<i64>, i64)> = Vec::new();
    for i in 0..n {
        let den = base[i].denom().clone();
        let num = base[i].numer().clone();
        let den_i = num_traits::ToPrimitive::to_i64(&den).expect("denominator fits i64");
        let num_i = num_traits::ToPrimitive::to_i64(&num).expect("numerator fits i64");
        let row: Vec<i64> = (0..k).map(|j| den_i * e_i64[i][j]).collect();
        // E_i·y ≤ 1 − base_i and −E_i·y ≤ base_i.
        ineqs.push((row.iter().map(|&v| v).collect(), den_i - num_i));
        ineqs.push((row.iter().map(|&v| -v).collect(), num_i));
    }
    normalized_volume(&y_verts, &ineqs, k)
}

/// Returns the first boundary lattice point (lexicographic) whose fiber is
/// full-dimensional, the witness that the grading is degenerate; None means
/// non-degenerate.
pub fn is_degenerate(config: &GradingMatrix, limits: &Limits) -> Result<Option<Vec<i64>>> {
    let z = zonotope::zonotope(config, limits)?;
    let interior: BTreeSet<&Vec<i64>> = z.interior_points.iter().collect();
    let full = (config.n() - config.d()) as i64;
    for u in &z.lattice_points {
        if interior.contains(u) {
            continue;
        }
        if fiber_polytope(config, u).dim == full {
            return Ok(Some(u.clone()));
        }
    }
    Ok(None)
}

/// Convenience: the witness as big integers, for error payloads.
pub(crate) fn degenerate_witness(u: &[i64]) -> Vec<Int> {
    u.iter().map(|&v| Int::from(v)).collect()
}
