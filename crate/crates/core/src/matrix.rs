//! Dense matrices over exact scalars, with the integer-lattice and
//! rational-elimination algorithms the rest of the crate is built on.
//!
//! Integer routines (Hermite form, Smith invariants, Bareiss determinant,
//! adjugate) require `num_integer::Integer`; elimination routines (rref,
//! solve, nullspace, inverse, characteristic polynomial) require a field
//! scalar such as `BigRational` — they divide freely.

use num_integer::Integer;
use num_traits::{Num, One, Signed, Zero};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Mat<T> {
    /// Builds a matrix from explicit rows; every row must have equal length.
    pub fn from_rows(rows: &[Vec<T>]) -> Mat<T> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.iter().flat_map(|row| row.iter().cloned()).collect(),
        }
    }

    /// Fills an r×c matrix with copies of one value.
    pub fn filled(rows: usize, cols: usize, v: T) -> Mat<T> {
        Mat { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    /// Borrows row i as a slice.
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat<T> {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.at(i, j).clone());
            }
        }
        Mat { rows: self.cols, cols: self.rows, data }
    }

    /// Applies a function entrywise.
    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Keeps the listed columns, in the order given.
    pub fn select_columns(&self, cols: &[usize]) -> Mat<T> {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self.at(i, j).clone());
            }
        }
        Mat { rows: self.rows, cols: cols.len(), data }
    }

    /// Stacks `self` on top of `below`; column counts must match.
    pub fn vstack(&self, below: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, below.cols);
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Mat { rows: self.rows + below.rows, cols: self.cols, data }
    }

    /// Concatenates `right` to the right of `self`; row counts must match.
    pub fn hstack(&self, right: &Mat<T>) -> Mat<T> {
        assert_eq!(self.rows, right.rows);
        let mut data = Vec::with_capacity((self.cols + right.cols) * self.rows);
        for i in 0..self.rows {
            data.extend(self.row(i).iter().cloned());
            data.extend(right.row(i).iter().cloned());
        }
        Mat { rows: self.rows, cols: self.cols + right.cols, data }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.rows {
            self.data.swap(k * self.cols + i, k * self.cols + j);
        }
    }
}

impl<T: Clone + Zero> Mat<T> {
    pub fn zero(rows: usize, cols: usize) -> Mat<T> {
        Mat::filled(rows, cols, T::zero())
    }
}

impl<T: Clone + Zero + One> Mat<T> {
    pub fn identity(k: usize) -> Mat<T> {
        let mut m = Mat::zero(k, k);
        for i in 0..k {
            m.set(i, i, T::one());
        }
        m
    }
}

impl<T> Mat<T>
where
    T: Clone + Zero + std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
{
    /// Matrix product self·other.
    pub fn mul(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, other.rows);
        let mut out: Mat<T> = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j).clone() + a.clone() * other.at(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Matrix–vector product self·v.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }
}

impl<T> Mat<T>
where
    T: Clone + std::ops::Sub<Output = T> + std::ops::Mul<Output = T>,
{
    /// row_i ← row_i − q·row_j.
    fn row_sub_mul(&mut self, i: usize, j: usize, q: &T) {
        for k in 0..self.cols {
            let v = self.at(i, k).clone() - q.clone() * self.at(j, k).clone();
            self.set(i, k, v);
        }
    }

    /// col_i ← col_i − q·col_j.
    fn col_sub_mul(&mut self, i: usize, j: usize, q: &T) {
        for k in 0..self.rows {
            let v = self.at(k, i).clone() - q.clone() * self.at(k, j).clone();
            self.set(k, i, v);
        }
    }
}

impl<T: Clone + Signed> Mat<T> {
    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -self.at(i, k).clone();
            self.set(i, k, v);
        }
    }
}

/// Row Hermite normal form: returns unimodular U and echelon H with U·A = H.
///
/// Pivots are positive, entries above each pivot are reduced into [0, pivot),
/// and zero rows sit at the bottom.
pub fn row_hermite<T: Integer + Signed + Clone>(a: &Mat<T>) -> (Mat<T>, Mat<T>) {
    let m = a.rows();
    let mut h = a.clone();
    let mut u = Mat::identity(m);
    let mut r = 0;
    for c in 0..a.cols() {
        if r == m {
            break;
        }
        loop {
            let mut piv: Option<usize> = None;
            for i in r..m {
                if !h.at(i, c).is_zero()
                    && piv.is_none_or(|p| h.at(i, c).abs() < h.at(p, c).abs())
                {
                    piv = Some(i);
                }
            }
            let Some(p) = piv else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..m {
                if h.at(i, c).is_zero() {
                    continue;
                }
                let q = h.at(i, c).div_floor(h.at(r, c));
                h.row_sub_mul(i, r, &q);
                u.row_sub_mul(i, r, &q);
                if !h.at(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.at(r, c).is_zero() {
            continue;
        }
        if h.at(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h.at(i, c).div_floor(h.at(r, c));
            if !q.is_zero() {
                h.row_sub_mul(i, r, &q);
                u.row_sub_mul(i, r, &q);
            }
        }
        r += 1;
    }
    (u, h)
}

/// Rank of an integer matrix, read off its Hermite form.
pub fn integer_rank<T: Integer + Signed + Clone>(a: &Mat<T>) -> usize {
    let (_, h) = row_hermite(a);
    (0..h.rows())
        .filter(|&i| (0..h.cols()).any(|j| !h.at(i, j).is_zero()))
        .count()
}

/// Basis of the integer kernel lattice {x ∈ Z^n : A·x = 0}.
///
/// The rows of the returned vectors generate the full (saturated) kernel
/// lattice because they come from a unimodular transform.
pub fn kernel_basis<T: Integer + Signed + Clone>(a: &Mat<T>) -> Vec<Vec<T>> {
    let (u, h) = row_hermite(&a.transpose());
    let rank = (0..h.rows())
        .filter(|&i| (0..h.cols()).any(|j| !h.at(i, j).is_zero()))
        .count();
    (rank..u.rows()).map(|i| u.row(i).to_vec()).collect()
}

/// Smith normal form invariants s_1 | s_2 | … (positive, one per rank).
pub fn smith_invariants<T: Integer + Signed + Clone>(a: &Mat<T>) -> Vec<T> {
    let mut h = a.clone();
    let (m, n) = (h.rows(), h.cols());
    let mut k = 0;
    while k < m.min(n) {
        // Move a minimal-magnitude nonzero entry of the trailing block to (k,k).
        let mut piv: Option<(usize, usize)> = None;
        for i in k..m {
            for j in k..n {
                if !h.at(i, j).is_zero()
                    && piv.is_none_or(|(pi, pj)| h.at(i, j).abs() < h.at(pi, pj).abs())
                {
                    piv = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        h.swap_rows(k, pi);
        h.swap_cols(k, pj);
        loop {
            let mut clean = true;
            for i in k + 1..m {
                if h.at(i, k).is_zero() {
                    continue;
                }
                let q = h.at(i, k).div_floor(h.at(k, k));
                h.row_sub_mul(i, k, &q);
                if !h.at(i, k).is_zero() {
                    h.swap_rows(k, i);
                    clean = false;
                }
            }
            for j in k + 1..n {
                if h.at(k, j).is_zero() {
                    continue;
                }
                let q = h.at(k, j).div_floor(h.at(k, k));
                h.col_sub_mul(j, k, &q);
                if !h.at(k, j).is_zero() {
                    h.swap_cols(k, j);
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        // Enforce divisibility of the rest of the block by the pivot.
        let mut fixed = true;
        'scan: for i in k + 1..m {
            for j in k + 1..n {
                if !h.at(i, j).mod_floor(h.at(k, k)).is_zero() {
                    for t in 0..n {
                        let v = h.at(k, t).clone() + h.at(i, t).clone();
                        h.set(k, t, v);
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            k += 1;
        }
    }
    (0..k).map(|i| h.at(i, i).abs()).collect()
}

/// Exact determinant of a square integer matrix by fraction-free elimination.
pub fn det_bareiss<T: Integer + Signed + Clone>(a: &Mat<T>) -> T {
    assert_eq!(a.rows(), a.cols());
    let n = a.rows();
    if n == 0 {
        return T::one();
    }
    let mut m = a.clone();
    let mut sign = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m.at(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m.at(i, k).is_zero()) else {
                return T::zero();
            };
            m.swap_rows(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m.at(k, k).clone() * m.at(i, j).clone()
                    - m.at(i, k).clone() * m.at(k, j).clone())
                    / prev.clone();
                m.set(i, j, v);
            }
            m.set(i, k, T::zero());
        }
        prev = m.at(k, k).clone();
    }
    let d = m.at(n - 1, n - 1).clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Adjugate matrix: adj(A)·A = det(A)·I, computed from cofactors.
pub fn adjugate<T: Integer + Signed + Clone>(a: &Mat<T>) -> Mat<T> {
    assert_eq!(a.rows(), a.cols());
    let n = a.rows();
    let mut adj = Mat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor_rows: Vec<Vec<T>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| a.at(r, c).clone())
                        .collect()
                })
                .collect();
            let mut cof = det_bareiss(&Mat::from_rows(&minor_rows));
            if (i + j) % 2 == 1 {
                cof = -cof;
            }
            adj.set(j, i, cof);
        }
    }
    adj
}

/// Reduced row echelon form over a field; returns (rref, pivot columns).
pub fn rref<T: Num + Signed + Clone>(a: &Mat<T>) -> (Mat<T>, Vec<usize>) {
    let mut h = a.clone();
    let (m, n) = (h.rows(), h.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !h.at(i, c).is_zero()) else {
            continue;
        };
        h.swap_rows(r, p);
        let inv = T::one() / h.at(r, c).clone();
        for k in 0..n {
            let v = h.at(r, k).clone() * inv.clone();
            h.set(r, k, v);
        }
        for i in 0..m {
            if i != r && !h.at(i, c).is_zero() {
                let q = h.at(i, c).clone();
                h.row_sub_mul(i, r, &q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (h, pivots)
}

/// Rank over a field.
pub fn rank<T: Num + Signed + Clone>(a: &Mat<T>) -> usize {
    rref(a).1.len()
}

/// One solution of A·x = b over a field, or None when inconsistent.
pub fn solve<T: Num + Signed + Clone>(a: &Mat<T>, b: &[T]) -> Option<Vec<T>> {
    assert_eq!(a.rows(), b.len());
    let aug = a.hstack(&Mat::from_rows(
        &b.iter().map(|v| vec![v.clone()]).collect::<Vec<_>>(),
    ));
    let (h, pivots) = rref(&aug);
    if pivots.contains(&a.cols()) {
        return None;
    }
    let mut x = vec![T::zero(); a.cols()];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = h.at(r, a.cols()).clone();
    }
    Some(x)
}

/// Basis of the right kernel {x : A·x = 0} over a field.
pub fn nullspace<T: Num + Signed + Clone>(a: &Mat<T>) -> Vec<Vec<T>> {
    let (h, pivots) = rref(a);
    let n = a.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![T::zero(); n];
            v[fc] = T::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -h.at(r, fc).clone();
            }
            v
        })
        .collect()
}

/// Inverse over a field, or None when singular.
pub fn inverse<T: Num + Signed + Clone>(a: &Mat<T>) -> Option<Mat<T>> {
    assert_eq!(a.rows(), a.cols());
    let n = a.rows();
    let aug = a.hstack(&Mat::identity(n));
    let (h, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    let mut inv = Mat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, h.at(i, n + j).clone());
        }
    }
    Some(inv)
}

fn from_usize<T: Zero + One>(k: usize) -> T {
    let mut v = T::zero();
    for _ in 0..k {
        v = v + T::one();
    }
    v
}

/// Monic characteristic polynomial coefficients [1, c_1, …, c_n] with
/// p(λ) = λ^n + c_1·λ^(n−1) + … + c_n, by the Faddeev–LeVerrier recurrence.
pub fn charpoly<T: Num + Signed + Clone>(a: &Mat<T>) -> Vec<T> {
    assert_eq!(a.rows(), a.cols());
    let n = a.rows();
    let mut coeffs = vec![T::one()];
    let mut m: Mat<T> = Mat::identity(n);
    for k in 1..=n {
        let am = a.mul(&m);
        let trace = (0..n).fold(T::zero(), |acc, i| acc + am.at(i, i).clone());
        let c = -(trace / from_usize::<T>(k));
        coeffs.push(c.clone());
        m = am;
        for i in 0..n {
            let v = m.at(i, i).clone() + c.clone();
            m.set(i, i, v);
        }
    }
    coeffs
}

/// Evaluates a coefficient list from `charpoly` at a point.
pub fn eval_poly<T: Num + Clone>(coeffs: &[T], x: &T) -> T {
    coeffs
        .iter()
        .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Int, Rat};
    use num_traits::FromPrimitive;

    fn int_mat(rows: &[Vec<i64>]) -> Mat<Int> {
        Mat::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&v| Int::from(v)).collect())
                .collect::<Vec<_>>(),
        )
    }

    fn rat_mat(rows: &[Vec<i64>]) -> Mat<Rat> {
        Mat::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&v| Rat::from_i64(v).unwrap()).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn hermite_is_unimodular_echelon() {
        let a = int_mat(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let (u, h) = row_hermite(&a);
        assert_eq!(u.mul(&a), h);
        assert_eq!(det_bareiss(&u).abs(), Int::from(1));
        // Echelon with positive pivots and reduced entries above them.
        assert_eq!(*h.at(0, 0), Int::from(2));
        assert!(h.at(1, 0).is_zero() && h.at(2, 0).is_zero() && h.at(2, 1).is_zero());
    }

    #[test]
    fn kernel_basis_spans_kernel() {
        let a = int_mat(&[vec![2, 1, 0], vec![0, 1, 2]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        for i in 0..2 {
            let s: Int = (0..3).map(|j| a.at(i, j) * &v[j]).sum();
            assert!(s.is_zero());
        }
        // (1, -2, 1) generates this kernel lattice.
        assert_eq!(v[0].abs(), Int::from(1));
        assert_eq!(v[1].abs(), Int::from(2));
    }

    #[test]
    fn smith_invariants_divide_in_order() {
        let a = int_mat(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_invariants(&a);
        assert_eq!(s.len(), 3);
        for w in s.windows(2) {
            assert!(w[1].mod_floor(&w[0]).is_zero());
        }
        let det: Int = s.iter().product();
        assert_eq!(det, det_bareiss(&a).abs());
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let a = int_mat(&[vec![3, 1, -2], vec![0, 4, 1], vec![5, -1, 2]]);
        assert_eq!(det_bareiss(&a), Int::from(3 * (8 + 1) - 1 * (-5) + (-2) * (-20)));
        let adj = adjugate(&a);
        let prod = adj.mul(&a);
        let d = det_bareiss(&a);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { d.clone() } else { Int::from(0) };
                assert_eq!(*prod.at(i, j), want);
            }
        }
    }

    #[test]
    fn solve_and_nullspace_are_consistent() {
        let a = rat_mat(&[vec![1, 2, 3], vec![2, 4, 7]]);
        let b = vec![Rat::from_i64(1).unwrap(), Rat::from_i64(3).unwrap()];
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(Zero::is_zero));
        assert!(solve(&rat_mat(&[vec![1, 1], vec![1, 1]]), &b[..2].to_vec()).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = rat_mat(&[vec![2, 1], vec![1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(2));
        assert!(inverse(&rat_mat(&[vec![1, 2], vec![2, 4]])).is_none());
    }

    #[test]
    fn charpoly_of_companion_matrix() {
        // Companion of λ² − 3λ + 2 = (λ−1)(λ−2).
        let a = rat_mat(&[vec![3, -2], vec![1, 0]]);
        let p = charpoly(&a);
        assert_eq!(
            p,
            vec![
                Rat::from_i64(1).unwrap(),
                Rat::from_i64(-3).unwrap(),
                Rat::from_i64(2).unwrap()
            ]
        );
        assert!(eval_poly(&p, &Rat::from_i64(1).unwrap()).is_zero());
        assert!(eval_poly(&p, &Rat::from_i64(2).unwrap()).is_zero());
        assert!(!eval_poly(&p, &Rat::from_i64(3).unwrap()).is_zero());
    }
}
