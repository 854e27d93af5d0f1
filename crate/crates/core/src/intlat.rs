//! Integer-lattice data attached to a grading matrix: rank and kernel
//! lattice, the index of the column lattice in Z^d, a positive grading
//! functional, total unimodularity, and the Gale-style block decomposition
//! used by the region volumes.

use crate::fm::{positive_functional, FmOutcome};
use crate::matrix::{
    adjugate, det_bareiss, integer_rank, kernel_basis, row_hermite, smith_invariants, Mat,
};
use crate::{Error, Int, Limits, Rat, Result};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// All subsets of {0, …, n−1} of size k, in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Advance the rightmost index that can still move.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Binomial coefficient, saturating at u128::MAX.
pub(crate) fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// A validated grading: an integer d×n matrix of full row rank whose columns
/// admit a positive functional, together with its kernel lattice and the
/// index of the column lattice in Z^d.
#[derive(Debug, Clone)]
pub struct GradingMatrix {
    a: Mat<Int>,
    rows_i64: Vec<Vec<i64>>,
    lattice_index: Int,
    kernel: Vec<Vec<Int>>,
    kernel_i64: Vec<Vec<i64>>,
    functional: Vec<Rat>,
}

impl GradingMatrix {
    /// Validates a matrix given by rows and computes its lattice data.
    pub fn build(rows: &[Vec<i64>]) -> Result<Self> {
        let d = rows.len();
        if d == 0 {
            return Err(Error::InvalidInput { detail: "matrix has no rows".into() });
        }
        let n = rows[0].len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput { detail: "matrix rows must be nonempty and equal length".into() });
        }
        if n < d {
            return Err(Error::InvalidInput {
                detail: format!("need at least as many columns as rows, got {n} < {d}"),
            });
        }
        let a = Mat::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&v| Int::from(v)).collect())
                .collect::<Vec<_>>(),
        );
        let rank = integer_rank(&a);
        if rank < d {
            return Err(Error::RankDeficient { rank, expected: d });
        }
        let kernel = kernel_basis(&a);
        assert_eq!(kernel.len(), n - d);
        for v in &kernel {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero), "kernel vector check");
        }
        if n > d {
            let kmat = Mat::from_rows(&kernel).transpose();
            let sm = smith_invariants(&kmat);
            assert!(
                sm.len() == n - d && sm.iter().all(One::is_one),
                "kernel basis must generate the saturated kernel lattice"
            );
        }
        // Lattice index two ways: gcd of maximal minors, and the product of
        // the Smith invariants.
        let mut minor_gcd = Int::zero();
        for subset in combinations(n, d) {
            let det = det_bareiss(&a.select_columns(&subset));
            minor_gcd = num_integer::Integer::gcd(&minor_gcd, &det);
        }
        let smith: Vec<Int> = smith_invariants(&a);
        let smith_product: Int = smith.iter().product();
        if minor_gcd != smith_product {
            return Err(Error::InvalidInput {
                detail: format!(
                    "lattice index mismatch: minor gcd {minor_gcd} vs Smith product {smith_product}"
                ),
            });
        }
        let functional = match positive_functional(&a) {
            FmOutcome::Feasible(y) => y,
            FmOutcome::Infeasible(witness) => return Err(Error::NotAcyclic { witness }),
        };
        let kernel_i64 = kernel
            .iter()
            .map(|v| v.iter().map(|x| x.to_i64().expect("kernel entry fits i64")).collect())
            .collect();
        Ok(GradingMatrix {
            a,
            rows_i64: rows.to_vec(),
            lattice_index: minor_gcd,
            kernel,
            kernel_i64,
            functional,
        })
    }

    pub fn d(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn matrix(&self) -> &Mat<Int> {
        &self.a
    }

    /// The matrix rows as machine integers.
    pub fn rows_i64(&self) -> &[Vec<i64>] {
        &self.rows_i64
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.d()).map(|i| self.a.at(i, j).clone()).collect()
    }

    pub fn column_i64(&self, j: usize) -> Vec<i64> {
        self.rows_i64.iter().map(|r| r[j]).collect()
    }

    /// Index of the column lattice Z·A inside Z^d.
    pub fn lattice_index(&self) -> &Int {
        &self.lattice_index
    }

    /// The lattice index as a machine integer.
    pub fn lattice_index_i64(&self) -> i64 {
        self.lattice_index.to_i64().expect("lattice index fits i64")
    }

    /// Basis of the kernel lattice ker(A) ∩ Z^n.
    pub fn kernel_lattice(&self) -> &[Vec<Int>] {
        &self.kernel
    }

    pub fn kernel_lattice_i64(&self) -> &[Vec<i64>] {
        &self.kernel_i64
    }

    /// A rational y with y·a_j ≥ 1 for every column.
    pub fn positive_functional(&self) -> &[Rat] {
        &self.functional
    }

    /// A·x for an integer vector x of length n.
    pub fn grade(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.n());
        self.rows_i64
            .iter()
            .map(|row| row.iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// Rebuilds the grading with the listed columns removed (0-based).
    pub fn drop_columns(&self, drop: &[usize]) -> Result<GradingMatrix> {
        let mut sorted = drop.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != drop.len() || sorted.iter().any(|&j| j >= self.n()) {
            return Err(Error::InvalidInput {
                detail: format!("column indices {drop:?} are not distinct indices below {}", self.n()),
            });
        }
        let keep: Vec<usize> = (0..self.n()).filter(|j| !sorted.contains(j)).collect();
        let rows: Vec<Vec<i64>> = self
            .rows_i64
            .iter()
            .map(|r| keep.iter().map(|&j| r[j]).collect())
            .collect();
        GradingMatrix::build(&rows)
    }
}

/// Checks every square minor for membership in {−1, 0, 1}.
pub fn is_totally_unimodular(config: &GradingMatrix, limits: &Limits) -> Result<bool> {
    let (d, n) = (config.d(), config.n());
    let mut needed: u128 = 0;
    for k in 1..=d.min(n) {
        needed = needed.saturating_add(binomial_u128(d, k).saturating_mul(binomial_u128(n, k)));
    }
    if needed > limits.minor_cap {
        return Err(Error::SizeLimit { what: "square minors", needed, cap: limits.minor_cap });
    }
    let a64: Mat<i64> = config.matrix().map(|v| v.to_i64().expect("entry fits i64"));
    for k in 1..=d.min(n) {
        for rows in combinations(d, k) {
            let picked = Mat::from_rows(&rows.iter().map(|&i| a64.row(i).to_vec()).collect::<Vec<_>>());
            for cols in combinations(n, k) {
                let det = det_bareiss(&picked.select_columns(&cols));
                if det.abs() > 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The block decomposition V·A·P = [H | B′] with integer certificates
/// B, J, L used by the region-volume formulas.
#[derive(Debug, Clone)]
pub struct GaleBlocks {
    /// Unimodular row transform V.
    pub row_transform: Mat<Int>,
    /// Column permutation: position i holds the original column index.
    pub column_order: Vec<usize>,
    /// Lower-triangular d×d block with positive diagonal.
    pub h: Mat<Int>,
    /// The remaining d×(n−d) block B′.
    pub b_prime: Mat<Int>,
    /// n×(n−d) integer matrix with (V·A·P)·B = 0 and L·B = −h_det·I.
    pub b: Mat<Int>,
    /// n×d integer matrix with (V·A·P)·J = h_det·I and L·J = 0.
    pub j: Mat<Int>,
    /// The projection (n−d)×n matrix [0 | I].
    pub l: Mat<Int>,
    /// det(H) = product of the diagonal of H (positive).
    pub h_det: Int,
}

/// Reverses both the row order and the column order.
fn conjugate_reverse(m: &Mat<Int>) -> Mat<Int> {
    let mut out = Vec::with_capacity(m.rows());
    for i in (0..m.rows()).rev() {
        out.push(m.row(i).iter().rev().cloned().collect::<Vec<_>>());
    }
    Mat::from_rows(&out)
}

/// Chooses the basis columns with the smallest nonzero |minor| (leftmost on
/// ties), brings them to lower-triangular Hermite form by a unimodular row
/// transform, and assembles the integer certificate blocks.
pub fn gale_blocks(config: &GradingMatrix, limits: &Limits) -> Result<GaleBlocks> {
    let (d, n) = (config.d(), config.n());
    let needed = binomial_u128(n, d);
    if needed > limits.minor_cap {
        return Err(Error::SizeLimit { what: "basis column choices", needed, cap: limits.minor_cap });
    }
    let a = config.matrix();
    let mut best: Option<(Int, Vec<usize>)> = None;
    for subset in combinations(n, d) {
        let det = det_bareiss(&a.select_columns(&subset)).abs();
        if det.is_zero() {
            continue;
        }
        if best.as_ref().is_none_or(|(b, _)| det < *b) {
            best = Some((det, subset));
        }
    }
    let (_, basis) = best.expect("full-rank matrix has a nonzero maximal minor");
    let rest: Vec<usize> = (0..n).filter(|j| !basis.contains(j)).collect();
    let column_order: Vec<usize> = basis.iter().chain(&rest).copied().collect();

    let s = a.select_columns(&basis);
    let (u_up, _h_up) = row_hermite(&conjugate_reverse(&s));
    let v = conjugate_reverse(&u_up);
    let h = v.mul(&s);
    for i in 0..d {
        assert!(h.at(i, i).is_positive(), "Hermite diagonal must be positive");
        for j in i + 1..d {
            assert!(h.at(i, j).is_zero(), "H must be lower triangular");
        }
    }
    let b_prime = v.mul(&a.select_columns(&rest));
    let h_det = det_bareiss(&h);
    let adj = adjugate(&h);

    let k = n - d;
    let b_top = adj.mul(&b_prime);
    let b_bottom = Mat::<Int>::identity(k).map(|x| -(x.clone() * h_det.clone()));
    let b = b_top.vstack(&b_bottom);
    let j = adj.vstack(&Mat::zero(k, d));
    let l = Mat::<Int>::zero(k, d).hstack(&Mat::identity(k));

    let vap = v.mul(&a.select_columns(&column_order));
    assert_eq!(vap, h.hstack(&b_prime), "V·A·P must equal [H | B′]");
    assert_eq!(vap.mul(&b), Mat::zero(d, k), "(V·A·P)·B must vanish");
    assert_eq!(
        vap.mul(&j),
        Mat::<Int>::identity(d).map(|x| x.clone() * h_det.clone()),
        "(V·A·P)·J must be h_det·I"
    );
    assert_eq!(l.mul(&j), Mat::zero(k, d), "L·J must vanish");
    assert_eq!(
        l.mul(&b),
        Mat::<Int>::identity(k).map(|x| -(x.clone() * h_det.clone())),
        "L·B must be −h_det·I"
    );
    Ok(GaleBlocks {
        row_transform: v,
        column_order,
        h,
        b_prime,
        b,
        j,
        l,
        h_det,
    })
}

impl GaleBlocks {
    /// V·u for an integer point u, in machine integers.
    pub fn transform_point(&self, u: &[i64]) -> Vec<i64> {
        let v = self
            .row_transform
            .mul_vec(&u.iter().map(|&x| Int::from(x)).collect::<Vec<_>>());
        v.iter()
            .map(|x| x.to_i64().expect("transformed point fits i64"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> GradingMatrix {
        GradingMatrix::build(&[vec![2, 1, 0], vec![0, 1, 2]]).unwrap()
    }

    #[test]
    fn combinations_are_lexicographic_and_complete() {
        let c = combinations(4, 2);
        assert_eq!(c.len(), 6);
        assert_eq!(c[0], vec![0, 1]);
        assert_eq!(c[5], vec![2, 3]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(binomial_u128(14, 7), 3432);
    }

    #[test]
    fn build_computes_lattice_data() {
        let config = example();
        assert_eq!(config.d(), 2);
        assert_eq!(config.n(), 3);
        assert_eq!(*config.lattice_index(), Int::from(2));
        let kernel = config.kernel_lattice_i64();
        assert_eq!(kernel.len(), 1);
        let v = &kernel[0];
        assert_eq!(v.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 2, 1]);
        assert_eq!(config.grade(&[1, 1, 0]), vec![3, 1]);
    }

    #[test]
    fn build_rejects_rank_deficient_and_cyclic() {
        match GradingMatrix::build(&[vec![1, 2], vec![2, 4]]) {
            Err(Error::RankDeficient { rank: 1, expected: 2 }) => {}
            other => panic!("expected rank deficiency, got {other:?}"),
        }
        match GradingMatrix::build(&[vec![1, -1]]) {
            Err(Error::NotAcyclic { witness }) => {
                assert_eq!(witness, vec![Int::from(1), Int::from(1)]);
            }
            other => panic!("expected acyclicity failure, got {other:?}"),
        }
    }

    #[test]
    fn unimodularity_detection() {
        let limits = Limits::default();
        assert!(!is_totally_unimodular(&example(), &limits).unwrap());
        let ones = GradingMatrix::build(&[vec![1, 1, 1, 1]]).unwrap();
        assert!(is_totally_unimodular(&ones, &limits).unwrap());
        let interval = GradingMatrix::build(&[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert!(is_totally_unimodular(&interval, &limits).unwrap());
    }

    #[test]
    fn gale_blocks_satisfy_their_identities() {
        let config = example();
        let blocks = gale_blocks(&config, &Limits::default()).unwrap();
        // The minimal |minor| is 2, attained first by columns {0, 1}.
        assert_eq!(blocks.column_order, vec![0, 1, 2]);
        assert_eq!(blocks.h_det, Int::from(2));
        assert_eq!(
            det_bareiss(&blocks.row_transform).abs(),
            Int::from(1),
            "V is unimodular"
        );
        // Identities beyond the constructor asserts: B's columns lie in ker(A·P).
        let ap = config.matrix().select_columns(&blocks.column_order);
        assert_eq!(ap.mul(&blocks.b), Mat::zero(2, 1));
    }

    #[test]
    fn gale_blocks_on_a_wider_matrix() {
        let config = GradingMatrix::build(&[vec![1, 1, 0, 0, -1], vec![0, 0, 1, 1, 1]]).unwrap();
        let blocks = gale_blocks(&config, &Limits::default()).unwrap();
        assert_eq!(blocks.h_det, Int::from(1));
        let ap = config.matrix().select_columns(&blocks.column_order);
        assert_eq!(ap.mul(&blocks.b), Mat::zero(2, 3));
        assert_eq!(blocks.l.mul(&blocks.j), Mat::zero(3, 2));
    }

    #[test]
    fn drop_columns_rebuilds() {
        let config = GradingMatrix::build(&[vec![2, 1, 2, 0, 1, 2], vec![0, 1, 1, 2, 2, 2]]).unwrap();
        let sub = config.drop_columns(&[1, 2, 4]).unwrap();
        assert_eq!(sub.n(), 3);
        assert_eq!(sub.rows_i64()[0], vec![2, 0, 2]);
        assert_eq!(sub.rows_i64()[1], vec![0, 2, 2]);
        assert_eq!(*sub.lattice_index(), Int::from(4));
        assert!(config.drop_columns(&[9]).is_err());
    }
}
