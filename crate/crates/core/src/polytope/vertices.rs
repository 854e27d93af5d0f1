//! Vertex enumeration for bounded polyhedra given by integer inequalities.

use super::dot_i64_rat;
use super::solve::solve_square;
use crate::intlat::combinations;
use crate::Rat;
use num_traits::FromPrimitive;
use std::collections::BTreeSet;

/// Vertices of the bounded polyhedron {x ∈ R^dim : a·x ≤ b for each (a, b)},
/// sorted lexicographically. Every basic solution — each choice of dim
/// inequalities turned into equations — is solved and kept when feasible.
pub fn enumerate_vertices(ineqs: &[(Vec<i64>, i64)], dim: usize) -> Vec<Vec<Rat>> {
    if dim == 0 {
        // A zero-dimensional space has one candidate point, the empty tuple.
        return if ineqs.iter().all(|(_, b)| *b >= 0) {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut seen: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for subset in combinations(ineqs.len(), dim) {
        let m: Vec<Vec<i64>> = subset.iter().map(|&i| ineqs[i].0.clone()).collect();
        let rhs: Vec<i64> = subset.iter().map(|&i| ineqs[i].1).collect();
        let Some(x) = solve_square(&m, &rhs) else {
            continue;
        };
        let feasible = ineqs
            .iter()
            .all(|(a, b)| dot_i64_rat(a, &x) <= Rat::from_i64(*b).unwrap());
        if feasible {
            seen.insert(x);
        }
    }
    seen.into_iter().collect()
}
