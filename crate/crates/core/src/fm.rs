//! Fourier–Motzkin elimination with certificate multipliers, used to decide
//! whether the columns of a grading matrix admit a positive functional.
//!
//! The system is y·a_j ≥ 1 for every column a_j. Feasibility yields an
//! explicit rational functional by back-substitution; infeasibility yields a
//! Farkas combination, i.e. an integer vector w ≥ 0, w ≠ 0 with A·w = 0.

use crate::matrix::Mat;
use crate::{Int, Rat};
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Outcome of the positive-functional search.
pub enum FmOutcome {
    /// A rational y with y·a_j ≥ 1 for every column j.
    Feasible(Vec<Rat>),
    /// An integer witness w ≥ 0, w ≠ 0 with A·w = 0.
    Infeasible(Vec<Int>),
}

#[derive(Clone)]
struct FmRow {
    /// Inequality coeffs·y ≤ rhs over the original d variables.
    coeffs: Vec<Rat>,
    rhs: Rat,
    /// Nonnegative multipliers expressing this row in terms of the original rows.
    mult: Vec<Rat>,
}

/// Searches for y with y·a_j ≥ 1 for all columns a_j of `a`.
pub fn positive_functional(a: &Mat<Int>) -> FmOutcome {
    let d = a.rows();
    let n = a.cols();
    // Original rows: −a_j·y ≤ −1.
    let mut systems: Vec<Vec<FmRow>> = vec![Vec::new(); d + 1];
    systems[d] = (0..n)
        .map(|j| {
            let mut mult = vec![Rat::zero(); n];
            mult[j] = Rat::from_integer(Int::from(1));
            FmRow {
                coeffs: (0..d).map(|i| -Rat::from_integer(a.at(i, j).clone())).collect(),
                rhs: -Rat::from_integer(Int::from(1)),
                mult,
            }
        })
        .collect();
    for k in (0..d).rev() {
        systems[k] = eliminate(&systems[k + 1], k);
    }
    // The fully eliminated system is a set of constraints 0 ≤ rhs.
    if let Some(bad) = systems[0].iter().find(|row| row.rhs.is_negative()) {
        let witness = integer_witness(&bad.mult);
        debug_assert!(witness.iter().all(|w| !w.is_negative()));
        debug_assert!(witness.iter().any(|w| !w.is_zero()));
        for i in 0..d {
            let s: Int = (0..n).map(|j| a.at(i, j) * &witness[j]).sum();
            assert!(s.is_zero(), "Farkas witness must lie in the kernel");
        }
        return FmOutcome::Infeasible(witness);
    }
    // Back-substitute, fixing y_0, y_1, … from each partial system in turn.
    let mut y = vec![Rat::zero(); d];
    for k in 0..d {
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for row in &systems[k + 1] {
            if row.coeffs[k].is_zero() {
                continue;
            }
            let partial: Rat = (0..k).map(|i| &row.coeffs[i] * &y[i]).sum();
            let bound = (&row.rhs - partial) / &row.coeffs[k];
            if row.coeffs[k].is_positive() {
                hi = Some(hi.map_or(bound.clone(), |h: Rat| h.min(bound)));
            } else {
                lo = Some(lo.map_or(bound.clone(), |l: Rat| l.max(bound)));
            }
        }
        y[k] = match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / Rat::from_integer(Int::from(2)),
            (Some(l), None) => l,
            (None, Some(h)) => h,
            (None, None) => Rat::zero(),
        };
    }
    for j in 0..n {
        let dot: Rat = (0..d).map(|i| &y[i] * Rat::from_integer(a.at(i, j).clone())).sum();
        assert!(dot >= Rat::from_integer(Int::from(1)), "functional must grade every column");
    }
    FmOutcome::Feasible(y)
}

/// Eliminates variable `k` from a system whose active variables are 0..=k.
fn eliminate(rows: &[FmRow], k: usize) -> Vec<FmRow> {
    let mut out: Vec<FmRow> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut push = |row: FmRow, out: &mut Vec<FmRow>| {
        let key: (Vec<String>, String) = (
            row.coeffs.iter().map(|c| c.to_string()).collect(),
            row.rhs.to_string(),
        );
        if seen.insert(key) {
            out.push(row);
        }
    };
    let (uppers, rest): (Vec<&FmRow>, Vec<&FmRow>) =
        rows.iter().partition(|r| r.coeffs[k].is_positive());
    let (lowers, carried): (Vec<&FmRow>, Vec<&FmRow>) =
        rest.into_iter().partition(|r| r.coeffs[k].is_negative());
    for row in carried {
        push(row.clone(), &mut out);
    }
    for up in &uppers {
        for lo in &lowers {
            let cu = up.coeffs[k].clone();
            let cl = -lo.coeffs[k].clone();
            let combine = |a: &Rat, b: &Rat| a / &cu + b / &cl;
            push(
                FmRow {
                    coeffs: up
                        .coeffs
                        .iter()
                        .zip(&lo.coeffs)
                        .map(|(a, b)| combine(a, b))
                        .collect(),
                    rhs: combine(&up.rhs, &lo.rhs),
                    mult: up.mult.iter().zip(&lo.mult).map(|(a, b)| combine(a, b)).collect(),
                },
                &mut out,
            );
        }
    }
    out
}

/// Clears denominators of a nonnegative rational vector and reduces by the gcd.
fn integer_witness(mult: &[Rat]) -> Vec<Int> {
    let lcm = mult
        .iter()
        .fold(Int::from(1), |acc, m| acc.lcm(m.denom()));
    let scaled: Vec<Int> = mult.iter().map(|m| m.numer() * (&lcm / m.denom())).collect();
    let gcd = scaled.iter().fold(Int::zero(), |acc, v| acc.gcd(v));
    if gcd.is_zero() {
        scaled
    } else {
        scaled.iter().map(|v| v / &gcd).collect()
    }
}
