//! The zonotope of a grading: the Minkowski sum of the segments [0, a_j]
//! over the columns, with facets, vertices, and lattice points.

use crate::intlat::{combinations, GradingMatrix};
use crate::lp::point_in_hull;
use crate::matrix::{kernel_basis, Mat};
use crate::{Error, Int, Limits, Rat, Result};
use num_traits::{FromPrimitive, ToPrimitive};
use std::collections::BTreeSet;

/// The zonotope Z = Σ_j [0, a_j] of the grading columns.
#[derive(Debug, Clone)]
pub struct Zonotope {
    /// Ambient dimension d.
    pub dim: usize,
    /// Irredundant facet inequalities c·u ≤ b, deduplicated and sorted.
    pub facets: Vec<(Vec<i64>, i64)>,
    /// Vertices, integer because they are subset sums of the columns.
    pub vertices: Vec<Vec<i64>>,
    /// All lattice points of Z, lexicographic.
    pub lattice_points: Vec<Vec<i64>>,
    /// Lattice points strictly inside every facet, lexicographic.
    pub interior_points: Vec<Vec<i64>>,
}

/// Builds the zonotope of the columns of the grading.
pub fn zonotope(config: &GradingMatrix, limits: &Limits) -> Result<Zonotope> {
    let d = config.d();
    let n = config.n();
    let cols: Vec<Vec<i64>> = (0..n).map(|j| config.column_i64(j)).collect();
    let facets = facet_inequalities(d, &cols);
    let vertices = minkowski_vertices(d, &cols);
    let (lattice_points, interior_points) = lattice_points(d, &cols, &facets, 1, limits)?;
    Ok(Zonotope { dim: d, facets, vertices, lattice_points, interior_points })
}

/// Lattice points strictly inside the dilate k·Z, lexicographic.
pub fn dilated_interior_points(
    config: &GradingMatrix,
    z: &Zonotope,
    k: i64,
    limits: &Limits,
) -> Result<Vec<Vec<i64>>> {
    assert!(k >= 1);
    let cols: Vec<Vec<i64>> = (0..config.n()).map(|j| config.column_i64(j)).collect();
    let (_, interior) = lattice_points(z.dim, &cols, &z.facets, k, limits)?;
    Ok(interior)
}

/// One inequality per orientation of each hyperplane spanned by columns;
/// every such halfspace is facet-defining because the columns orthogonal to
/// the normal span the hyperplane.
fn facet_inequalities(d: usize, cols: &[Vec<i64>]) -> Vec<(Vec<i64>, i64)> {
    let mut out: BTreeSet<(Vec<i64>, i64)> = BTreeSet::new();
    if d == 1 {
        let hi: i64 = cols.iter().map(|c| c[0].max(0)).sum();
        let lo: i64 = cols.iter().map(|c| c[0].min(0)).sum();
        out.insert((vec![1], hi));
        out.insert((vec![-1], -lo));
        return out.into_iter().collect();
    }
    for subset in combinations(cols.len(), d - 1) {
        let rows: Vec<Vec<Int>> = subset
            .iter()
            .map(|&j| cols[j].iter().map(|&v| Int::from(v)).collect())
            .collect();
        let kernel = kernel_basis(&Mat::from_rows(&rows));
        if kernel.len() != 1 {
            continue; // the subset does not span a hyperplane
        }
        let normal: Vec<i64> = kernel[0]
            .iter()
            .map(|v| v.to_i64().expect("facet normal fits i64"))
            .collect();
        for c in [normal.clone(), normal.iter().map(|&v| -v).collect()] {
            let b: i64 = cols
                .iter()
                .map(|col| c.iter().zip(col).map(|(&x, &y)| x * y).sum::<i64>().max(0))
                .sum();
            out.insert((c, b));
        }
    }
    out.into_iter().collect()
}

/// Vertices by incremental Minkowski sums, pruning interior points exactly.
fn minkowski_vertices(d: usize, cols: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut pts: BTreeSet<Vec<i64>> = BTreeSet::new();
    pts.insert(vec![0; d]);
    for col in cols {
        let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
        for p in &pts {
            next.insert(p.clone());
            next.insert(p.iter().zip(col).map(|(&a, &b)| a + b).collect());
        }
        let candidates: Vec<Vec<i64>> = next.into_iter().collect();
        let as_rat: Vec<Vec<Rat>> = candidates
            .iter()
            .map(|p| p.iter().map(|&v| Rat::from_i64(v).unwrap()).collect())
            .collect();
        pts = candidates
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                let others: Vec<Vec<Rat>> = as_rat
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| j != i)
                    .map(|(_, p)| p.clone())
                    .collect();
                !point_in_hull(&others, &as_rat[*i])
            })
            .map(|(_, p)| p.clone())
            .collect();
    }
    pts.into_iter().collect()
}

/// Lattice points of k·Z (and its strict interior) by scanning the bounding
/// box of the scaled columns and filtering with the scaled facets.
fn lattice_points(
    d: usize,
    cols: &[Vec<i64>],
    facets: &[(Vec<i64>, i64)],
    k: i64,
    limits: &Limits,
) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let lo: Vec<i64> = (0..d)
        .map(|i| k * cols.iter().map(|c| c[i].min(0)).sum::<i64>())
        .collect();
    let hi: Vec<i64> = (0..d)
        .map(|i| k * cols.iter().map(|c| c[i].max(0)).sum::<i64>())
        .collect();
    let mut size: u128 = 1;
    for i in 0..d {
        size = size.saturating_mul((hi[i] - lo[i] + 1) as u128);
    }
    if size > limits.box_cap {
        return Err(Error::SizeLimit { what: "zonotope bounding box", needed: size, cap: limits.box_cap });
    }
    let mut all = Vec::new();
    let mut interior = Vec::new();
    let mut cur = lo.clone();
    'outer: loop {
        let mut inside = true;
        let mut strict = true;
        for (a, b) in facets {
            let dot: i64 = a.iter().zip(&cur).map(|(&x, &y)| x * y).sum();
            if dot > k * b {
                inside = false;
                strict = false;
                break;
            }
            if dot == k * b {
                strict = false;
            }
        }
        if inside {
            all.push(cur.clone());
            if strict {
                interior.push(cur.clone());
            }
        }
        // Odometer advance.
        for i in (0..d).rev() {
            if cur[i] < hi[i] {
                cur[i] += 1;
                continue 'outer;
            }
            cur[i] = lo[i];
        }
        break;
    }
    Ok((all, interior))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(rows: &[Vec<i64>]) -> GradingMatrix {
        GradingMatrix::build(rows).unwrap()
    }

    #[test]
    fn hexagon_of_the_running_example() {
        // Columns (2,0), (1,1), (0,2): a hexagon with a single interior point
        // pattern matching the asymptotic support {1,2}².
        let z = zonotope(&config(&[vec![2, 1, 0], vec![0, 1, 2]]), &Limits::default()).unwrap();
        assert_eq!(z.vertices.len(), 6);
        assert!(z.vertices.contains(&vec![3, 3]));
        assert!(z.vertices.contains(&vec![0, 0]));
        assert_eq!(
            z.interior_points,
            vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]
        );
        assert_eq!(z.lattice_points.len(), 14);
    }

    #[test]
    fn interval_zonotope_in_one_dimension() {
        let z = zonotope(&config(&[vec![1, 1, 1]]), &Limits::default()).unwrap();
        assert_eq!(z.facets, vec![(vec![-1], 0), (vec![1], 3)]);
        assert_eq!(z.vertices, vec![vec![0], vec![3]]);
        assert_eq!(z.interior_points, vec![vec![1], vec![2]]);
    }

    #[test]
    fn mixed_sign_columns_shift_the_box() {
        let z = zonotope(&config(&[vec![1, 1, 0, 0, -1], vec![0, 0, 1, 1, 1]]), &Limits::default())
            .unwrap();
        assert!(z.lattice_points.contains(&vec![-1, 1]));
        assert_eq!(
            z.interior_points,
            vec![vec![0, 1], vec![0, 2], vec![1, 1], vec![1, 2]]
        );
    }

    #[test]
    fn dilation_scales_interior() {
        let cfg = config(&[vec![2, 1, 0], vec![0, 1, 2]]);
        let z = zonotope(&cfg, &Limits::default()).unwrap();
        let doubled = dilated_interior_points(&cfg, &z, 2, &Limits::default()).unwrap();
        // 2·Z has interior lattice points strictly between the scaled facets.
        assert!(doubled.contains(&vec![2, 2]));
        assert!(doubled.contains(&vec![1, 1]));
        assert!(!doubled.contains(&vec![0, 0]));
        assert!(doubled.len() > z.interior_points.len());
    }

    #[test]
    fn box_cap_is_enforced() {
        let cfg = config(&[vec![3, 3, 3], vec![0, 3, 1]]);
        let limits = Limits { box_cap: 4, ..Limits::default() };
        match zonotope(&cfg, &limits) {
            Err(Error::SizeLimit { .. }) => {}
            other => panic!("expected size limit, got {other:?}"),
        }
    }
}
