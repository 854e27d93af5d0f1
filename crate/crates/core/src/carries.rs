//! The generalized carries matrix: entries C_r(u,v)/r^{n−d} over the
//! interior lattice points of the zonotope, with exact verification of
//! column-stochasticity, the stationary vector, the spectrum, and the
//! semigroup law C(r₁)·C(r₂) = C(r₁·r₂).

use crate::intlat::GradingMatrix;
use crate::matrix::{charpoly, eval_poly, nullspace, rref, Mat};
use crate::polytope::{is_degenerate, zonotope, KernelScanner};
use crate::veronese::AsymptoticKPoly;
use crate::{Error, Int, Limits, Rat, Result};
use num_traits::{One, Zero};

/// Square matrix of shifted-count frequencies in a fixed interior-point
/// index order; entry (i, j) is C_r(index[i], index[j])/r^{n−d}.
#[derive(Debug, Clone)]
pub struct CarriesMatrix {
    pub r: i64,
    pub index: Vec<Vec<i64>>,
    pub entries: Mat<Rat>,
}

/// Builds the matrix with the default lexicographic index order. Strides
/// must be multiples of the lattice index; off-stride matrices are
/// available through [`build_carries_ordered`].
pub fn build_carries(config: &GradingMatrix, r: i64, limits: &Limits) -> Result<CarriesMatrix> {
    let interior = interior_index(config, limits)?;
    build_with_index(config, r, interior, false)
}

/// Builds the matrix in a caller-supplied index order (any permutation of
/// the interior lattice points), optionally allowing strides that are not
/// multiples of the lattice index.
pub fn build_carries_ordered(
    config: &GradingMatrix,
    r: i64,
    order: &[Vec<i64>],
    allow_off_stride: bool,
    limits: &Limits,
) -> Result<CarriesMatrix> {
    let interior = interior_index(config, limits)?;
    let mut sorted_order = order.to_vec();
    sorted_order.sort();
    if sorted_order != interior {
        return Err(Error::InvalidInput {
            detail: "index order is not a permutation of the interior lattice points".into(),
        });
    }
    build_with_index(config, r, order.to_vec(), allow_off_stride)
}

fn interior_index(config: &GradingMatrix, limits: &Limits) -> Result<Vec<Vec<i64>>> {
    if let Some(witness) = is_degenerate(config, limits)? {
        return Err(Error::DegenerateMap {
            witness: crate::polytope::degenerate_witness(&witness),
        });
    }
    let z = zonotope(config, limits)?;
    if z.interior_points.is_empty() {
        return Err(Error::EmptyInterior);
    }
    Ok(z.interior_points.clone())
}

fn build_with_index(
    config: &GradingMatrix,
    r: i64,
    index: Vec<Vec<i64>>,
    allow_off_stride: bool,
) -> Result<CarriesMatrix> {
    if r < 2 {
        return Err(Error::InvalidInput { detail: format!("stride {r} must be at least 2") });
    }
    let m = config.lattice_index_i64();
    if r % m != 0 && !allow_off_stride {
        return Err(Error::InvalidInput {
            detail: format!(
                "stride {r} is not a multiple of the lattice index {m}; off-stride matrices must be requested explicitly"
            ),
        });
    }
    let codim = (config.n() - config.d()) as u32;
    let denom = Int::from(r).pow(codim);
    let scanner = KernelScanner::new(config);
    let rows: Vec<Vec<Rat>> = index
        .iter()
        .map(|u| {
            index
                .iter()
                .map(|v| {
                    let rhs: Vec<i64> = u.iter().zip(v).map(|(a, b)| r * a - b).collect();
                    Rat::new(Int::from(scanner.count(&rhs, 0, r - 1)), denom.clone())
                })
                .collect()
        })
        .collect();
    Ok(CarriesMatrix { r, index, entries: Mat::from_rows(&rows) })
}

/// Exact verification results; failed checks are data, not errors.
#[derive(Debug, Clone)]
pub struct StochasticReport {
    pub column_sums_ok: bool,
    /// Columns whose entries do not sum to 1, with their sums.
    pub bad_columns: Vec<(usize, Rat)>,
    pub stationary_ok: bool,
    /// Componentwise C·k − k for the volume vector k.
    pub stationary_residual: Vec<Rat>,
    pub spectrum_ok: bool,
    /// Characteristic polynomial evaluated at r^{−i} for 0 ≤ i < n−d.
    pub charpoly_values: Vec<(usize, Rat)>,
    /// dim ker(C − r^{−i}·I) for the same i.
    pub nullspace_dims: Vec<(usize, usize)>,
    /// Whether the candidate eigenspaces match another stride's, if given.
    pub eigenspaces_stable: Option<bool>,
}

/// Checks column sums, the stationary equation C·k = k for k the
/// fiber-volume vector scaled by 1/(n−d)!, vanishing of the characteristic
/// polynomial at the powers r^{−i}, and the corresponding nullspace
/// dimensions — all in exact rational arithmetic. When `other` is a matrix
/// for the same grading at a different stride, the candidate eigenspaces
/// are compared for stride-independence.
pub fn verify_stochastic(
    c: &CarriesMatrix,
    k: &AsymptoticKPoly,
    other: Option<&CarriesMatrix>,
) -> StochasticReport {
    let size = c.index.len();
    let mut bad_columns = Vec::new();
    for j in 0..size {
        let sum: Rat = (0..size).map(|i| c.entries.at(i, j).clone()).sum();
        if !sum.is_one() {
            bad_columns.push((j, sum));
        }
    }
    let column_sums_ok = bad_columns.is_empty();

    let scale = Rat::from(factorial(k.codim));
    let k_vec: Vec<Rat> =
        c.index.iter().map(|u| k.k_poly.coeff_or_zero(u) / &scale).collect();
    let image = c.entries.mul_vec(&k_vec);
    let stationary_residual: Vec<Rat> =
        image.iter().zip(&k_vec).map(|(a, b)| a - b).collect();
    let stationary_ok = stationary_residual.iter().all(|x| x.is_zero());

    let poly = charpoly(&c.entries);
    let mut charpoly_values = Vec::new();
    let mut nullspace_dims = Vec::new();
    for i in 0..k.codim {
        let lambda = Rat::new(Int::one(), Int::from(c.r).pow(i as u32));
        charpoly_values.push((i, eval_poly(&poly, &lambda)));
        nullspace_dims.push((i, eigenspace(&c.entries, &lambda).len()));
    }
    let spectrum_ok = charpoly_values.iter().all(|(_, v)| v.is_zero());

    let eigenspaces_stable = other.map(|o| {
        if o.index != c.index {
            return false;
        }
        (0..k.codim).all(|i| {
            let l1 = Rat::new(Int::one(), Int::from(c.r).pow(i as u32));
            let l2 = Rat::new(Int::one(), Int::from(o.r).pow(i as u32));
            same_span(&eigenspace(&c.entries, &l1), &eigenspace(&o.entries, &l2))
        })
    });

    StochasticReport {
        column_sums_ok,
        bad_columns,
        stationary_ok,
        stationary_residual,
        spectrum_ok,
        charpoly_values,
        nullspace_dims,
        eigenspaces_stable,
    }
}

fn factorial(k: usize) -> Int {
    (1..=k as u64).map(Int::from).fold(Int::one(), |a, b| a * b)
}

fn eigenspace(m: &Mat<Rat>, lambda: &Rat) -> Vec<Vec<Rat>> {
    let size = m.rows();
    let shifted: Vec<Vec<Rat>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    if i == j {
                        m.at(i, j) - lambda
                    } else {
                        m.at(i, j).clone()
                    }
                })
                .collect()
        })
        .collect();
    nullspace(&Mat::from_rows(&shifted))
}

fn same_span(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let (ra, _) = rref(&Mat::from_rows(a));
    let (rb, _) = rref(&Mat::from_rows(b));
    let (rows, cols) = (ra.rows(), ra.cols());
    rows == rb.rows()
        && cols == rb.cols()
        && (0..rows).all(|i| (0..cols).all(|j| ra.at(i, j) == rb.at(i, j)))
}

/// Result of the exact semigroup test C(r₁)·C(r₂) = C(r₁·r₂).
#[derive(Debug, Clone)]
pub struct SemigroupCheck {
    pub holds: bool,
    /// First differing entry: (u, v, product entry, direct entry).
    pub discrepancy: Option<(Vec<i64>, Vec<i64>, Rat, Rat)>,
}

pub fn semigroup_check(
    config: &GradingMatrix,
    r1: i64,
    r2: i64,
    limits: &Limits,
) -> Result<SemigroupCheck> {
    if r1 < 2 || r2 < 2 {
        return Err(Error::InvalidInput {
            detail: format!("strides ({r1}, {r2}) must both be at least 2"),
        });
    }
    let index = interior_index(config, limits)?;
    let c1 = build_with_index(config, r1, index.clone(), true)?;
    let c2 = build_with_index(config, r2, index.clone(), true)?;
    let c12 = build_with_index(config, r1 * r2, index.clone(), true)?;
    let product = c1.entries.mul(&c2.entries);
    for i in 0..index.len() {
        for j in 0..index.len() {
            if product.at(i, j) != c12.entries.at(i, j) {
                return Ok(SemigroupCheck {
                    holds: false,
                    discrepancy: Some((
                        index[i].clone(),
                        index[j].clone(),
                        product.at(i, j).clone(),
                        c12.entries.at(i, j).clone(),
                    )),
                });
            }
        }
    }
    Ok(SemigroupCheck { holds: true, discrepancy: None })
}
