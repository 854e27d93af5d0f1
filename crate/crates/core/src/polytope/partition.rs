//! Vector partition counting: the number of ways to write a target as a
//! nonnegative integer combination of the grading columns.

use crate::intlat::GradingMatrix;
use crate::polytope::dot_i64_rat;
use crate::{Int, Rat};
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::HashMap;

/// Counts {x ∈ Z^n, x ≥ 0 : A·x = u}. Finite because the grading admits a
/// positive functional; the recursion prunes with it and memoizes on the
/// (column, remaining target) subproblem.
pub fn partition_count(config: &GradingMatrix, u: &[i64]) -> Int {
    assert_eq!(u.len(), config.d());
    let y = config.positive_functional();
    // Greedier columns first keeps the recursion shallow.
    let mut order: Vec<usize> = (0..config.n()).collect();
    let weights: Vec<Rat> =
        (0..config.n()).map(|j| dot_i64_rat(&config.column_i64(j), y)).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]));
    let cols: Vec<Vec<i64>> = order.iter().map(|&j| config.column_i64(j)).collect();
    let mut memo = HashMap::new();
    count_from(&cols, y, 0, u.to_vec(), &mut memo)
}

fn count_from(
    cols: &[Vec<i64>],
    y: &[Rat],
    idx: usize,
    target: Vec<i64>,
    memo: &mut HashMap<(usize, Vec<i64>), Int>,
) -> Int {
    if dot_i64_rat(&target, y).is_negative() {
        return Int::zero();
    }
    if idx == cols.len() {
        return if target.iter().all(|&t| t == 0) { Int::from(1) } else { Int::zero() };
    }
    if let Some(hit) = memo.get(&(idx, target.clone())) {
        return hit.clone();
    }
    let col = &cols[idx];
    let weight = dot_i64_rat(col, y);
    let budget = dot_i64_rat(&target, y);
    let max_copies = (budget / weight).floor().to_integer().to_i64().expect("copy count fits i64");
    let mut total = Int::zero();
    for k in 0..=max_copies {
        let rest: Vec<i64> = target.iter().zip(col).map(|(t, c)| t - k * c).collect();
        total += count_from(cols, y, idx + 1, rest, memo);
    }
    memo.insert((idx, target), total.clone());
    total
}
