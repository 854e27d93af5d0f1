//! Exact convex-hull membership via a phase-1 simplex over rationals.

use crate::Rat;
use num_traits::{One, Signed, Zero};

/// Decides whether q lies in the convex hull of the given points (closed hull,
/// boundary included), exactly.
pub fn point_in_hull(points: &[Vec<Rat>], q: &[Rat]) -> bool {
    if points.is_empty() {
        return false;
    }
    let dim = q.len();
    assert!(points.iter().all(|p| p.len() == dim));
    // Feasibility of Σ μ_i p_i = q, Σ μ_i = 1, μ ≥ 0 as a phase-1 program.
    let m = dim + 1;
    let n = points.len();
    let mut a: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i < dim {
                        points[j][i].clone()
                    } else {
                        Rat::one()
                    }
                })
                .collect()
        })
        .collect();
    let mut b: Vec<Rat> = (0..m)
        .map(|i| if i < dim { q[i].clone() } else { Rat::one() })
        .collect();
    for i in 0..m {
        if b[i].is_negative() {
            b[i] = -b[i].clone();
            for j in 0..n {
                a[i][j] = -a[i][j].clone();
            }
        }
    }
    // Append artificial columns forming an identity, basic at the start.
    for (i, row) in a.iter_mut().enumerate() {
        for k in 0..m {
            row.push(if i == k { Rat::one() } else { Rat::zero() });
        }
    }
    let total = n + m;
    let mut basis: Vec<usize> = (n..total).collect();
    // Reduced costs for minimizing the sum of artificials.
    let mut obj: Vec<Rat> = (0..total)
        .map(|j| {
            let col_sum: Rat = (0..m).map(|i| a[i][j].clone()).sum();
            let cost = if j >= n { Rat::one() } else { Rat::zero() };
            col_sum - cost
        })
        .collect();
    let mut value: Rat = b.iter().cloned().sum();
    loop {
        // Bland's rule: smallest improving column, then smallest basis row.
        let Some(enter) = (0..total).find(|&j| obj[j].is_positive()) else {
            break;
        };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !a[i][enter].is_positive() {
                continue;
            }
            let better = match leave {
                None => true,
                Some(l) => {
                    let cand = &b[i] / &a[i][enter];
                    let best = &b[l] / &a[l][enter];
                    cand < best || (cand == best && basis[i] < basis[l])
                }
            };
            if better {
                leave = Some(i);
            }
        }
        let Some(l) = leave else {
            // A phase-1 objective is bounded below by zero, so this cannot
            // happen on exact data; treat it as infeasible defensively.
            return false;
        };
        let pivot = a[l][enter].clone();
        for j in 0..total {
            a[l][j] = &a[l][j] / &pivot;
        }
        b[l] = &b[l] / &pivot;
        for i in 0..m {
            if i == l || a[i][enter].is_zero() {
                continue;
            }
            let f = a[i][enter].clone();
            for j in 0..total {
                a[i][j] = &a[i][j] - &f * &a[l][j];
            }
            b[i] = &b[i] - &f * &b[l];
        }
        let f = obj[enter].clone();
        for j in 0..total {
            obj[j] = &obj[j] - &f * &a[l][j];
        }
        value = &value - &f * &b[l];
        basis[l] = enter;
    }
    value.is_zero()
}
