//! Square integer linear solves: an i128 fraction-free fast path with
//! overflow detection, falling back to rational elimination.

use crate::matrix::{self, Mat};
use crate::{Int, Rat};
use num_traits::{FromPrimitive, Zero};

/// Determinant by fraction-free elimination over i128.
/// None signals overflow; singular matrices return Some(0).
fn det_i128(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return Some(0);
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[k][k].checked_mul(m[i][j])?;
                let b = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    m[n - 1][n - 1].checked_mul(sign)
}

/// Solves M·x = rhs for a square integer system, exactly, by Cramer's rule
/// over i128 when it fits and by rational elimination otherwise.
/// None means M is singular.
pub(crate) fn solve_square(m: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<Rat>> {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n) && rhs.len() == n);
    let wide: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    if let Some(det) = det_i128(wide.clone()) {
        if det == 0 {
            return None;
        }
        let mut out = Vec::with_capacity(n);
        for col in 0..n {
            let mut replaced = wide.clone();
            for i in 0..n {
                replaced[i][col] = rhs[i] as i128;
            }
            let num = det_i128(replaced)?;
            out.push(
                Rat::new(Int::from_i128(num).unwrap(), Int::from_i128(det).unwrap()),
            );
        }
        return Some(out);
    }
    // Overflow: redo over rationals.
    let mat = Mat::from_rows(
        &m.iter()
            .map(|r| r.iter().map(|&v| Rat::from_i64(v).unwrap()).collect())
            .collect::<Vec<_>>(),
    );
    if matrix::rank(&mat) < n {
        return None;
    }
    let b: Vec<Rat> = rhs.iter().map(|&v| Rat::from_i64(v).unwrap()).collect();
    matrix::solve(&mat, &b)
}

/// Exact determinant of a square rational matrix by Gaussian elimination.
pub(crate) fn det_rat(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::from_i64(1).unwrap();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Rat::zero();
        };
        if p != k {
            m.swap(k, p);
            det = -det;
        }
        det *= m[k][k].clone();
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &pivot;
            for j in k..n {
                let v = &m[i][j] - &f * &m[k][j];
                m[i][j] = v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cramer_solves_small_systems() {
        let m = vec![vec![2, 1], vec![0, 1]];
        let x = solve_square(&m, &[4, 2]).unwrap();
        assert_eq!(x[0], Rat::from_i64(1).unwrap());
        assert_eq!(x[1], Rat::from_i64(2).unwrap());
        assert!(solve_square(&[vec![1, 2], vec![2, 4]], &[1, 1]).is_none());
    }

    #[test]
    fn rational_determinant() {
        let half = Rat::new(Int::from(1), Int::from(2));
        let d = det_rat(vec![
            vec![half.clone(), Rat::zero()],
            vec![Rat::from_i64(3).unwrap(), Rat::from_i64(4).unwrap()],
        ]);
        assert_eq!(d, Rat::from_i64(2).unwrap());
        assert!(det_i128(vec![vec![i128::MAX, 1], vec![1, i128::MAX]]).is_none());
    }
}
