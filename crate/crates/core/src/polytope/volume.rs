//! Normalized volume (dim! times Euclidean volume) of a polytope from its
//! vertex set and defining inequalities, by a recursive pulling
//! triangulation: pull the lexicographically smallest vertex, triangulate
//! the facets that miss it, and cone.

use super::solve::det_rat;
use super::{affine_dim, dot_i64_rat};
use crate::Rat;
use num_traits::{FromPrimitive, One, Signed, Zero};
use std::collections::BTreeSet;

/// Computes the normalized volume of conv(vertices), where `ineqs` is a
/// complete inequality description (every facet appears; redundant rows are
/// harmless) and `dim` is the ambient dimension. Lower-dimensional input
/// yields zero.
pub fn normalized_volume(vertices: &[Vec<Rat>], ineqs: &[(Vec<i64>, i64)], dim: usize) -> Rat {
    if dim == 0 {
        return if vertices.is_empty() { Rat::zero() } else { Rat::one() };
    }
    if affine_dim(vertices) < dim as i64 {
        return Rat::zero();
    }
    let all: Vec<usize> = (0..vertices.len()).collect();
    let mut simplices: Vec<Vec<usize>> = Vec::new();
    let mut chain: Vec<usize> = Vec::new();
    triangulate(&all, vertices, ineqs, dim, &mut chain, &mut simplices);
    let mut total = Rat::zero();
    for s in &simplices {
        let base = &vertices[s[0]];
        let edges: Vec<Vec<Rat>> = s[1..]
            .iter()
            .map(|&i| vertices[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        total += det_rat(edges).abs();
    }
    total
}

fn triangulate(
    current: &[usize],
    vertices: &[Vec<Rat>],
    ineqs: &[(Vec<i64>, i64)],
    level: usize,
    chain: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if level == 0 {
        debug_assert_eq!(current.len(), 1);
        let mut simplex = chain.clone();
        simplex.push(current[0]);
        out.push(simplex);
        return;
    }
    let apex = *current
        .iter()
        .min_by(|&&a, &&b| vertices[a].cmp(&vertices[b]))
        .expect("faces are nonempty");
    chain.push(apex);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (a, b) in ineqs {
        let rhs = Rat::from_i64(*b).unwrap();
        let tight: Vec<usize> = current
            .iter()
            .copied()
            .filter(|&i| dot_i64_rat(a, &vertices[i]) == rhs)
            .collect();
        if tight.is_empty() || tight.contains(&apex) || tight.len() < level {
            continue;
        }
        let pts: Vec<Vec<Rat>> = tight.iter().map(|&i| vertices[i].clone()).collect();
        if affine_dim(&pts) != level as i64 - 1 {
            continue;
        }
        if seen.insert(tight.clone()) {
            triangulate(&tight, vertices, ineqs, level - 1, chain, out);
        }
    }
    chain.pop();
}
