//! Exact counters for {x ∈ Z^n ∩ box : A·x = w}: a sliding-window array
//! engine over the image box (cheap for small d), and a per-fiber scanner
//! that enumerates the kernel lattice along an echelon basis.

use crate::intlat::GradingMatrix;
use crate::matrix::{row_hermite, Mat};
use crate::{Error, Limits, Result};
use num_traits::ToPrimitive;

/// Counts of A·x over all x ∈ [0, r−1]^n, stored on the exact image box.
#[derive(Debug, Clone)]
pub struct ImageCounts {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
    strides: Vec<usize>,
    data: Vec<u64>,
}

impl ImageCounts {
    /// The number of x ∈ [0, r−1]^n with A·x = w (zero off the box).
    pub fn get(&self, w: &[i64]) -> u64 {
        let mut flat = 0usize;
        for i in 0..w.len() {
            if w[i] < self.lo[i] || w[i] > self.hi[i] {
                return 0;
            }
            flat += (w[i] - self.lo[i]) as usize * self.strides[i];
        }
        self.data[flat]
    }
}

/// Builds the image counts for stride r by one sliding-window accumulation
/// per column: cost proportional to the box size, independent of r.
pub fn image_counts(config: &GradingMatrix, r: i64, limits: &Limits) -> Result<ImageCounts> {
    assert!(r >= 1);
    let d = config.d();
    let cols: Vec<Vec<i64>> = (0..config.n()).map(|j| config.column_i64(j)).collect();
    let lo: Vec<i64> = (0..d)
        .map(|i| cols.iter().map(|c| ((r - 1) * c[i]).min(0)).sum())
        .collect();
    let hi: Vec<i64> = (0..d)
        .map(|i| cols.iter().map(|c| ((r - 1) * c[i]).max(0)).sum())
        .collect();
    let dims: Vec<usize> = (0..d).map(|i| (hi[i] - lo[i] + 1) as usize).collect();
    let size: u128 = dims.iter().fold(1u128, |acc, &s| acc.saturating_mul(s as u128));
    if size > limits.box_cap {
        return Err(Error::SizeLimit { what: "image box", needed: size, cap: limits.box_cap });
    }
    let total = size as usize;
    let mut strides = vec![1usize; d];
    for i in (0..d.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let mut data = vec![0u64; total];
    let origin: usize = (0..d).map(|i| (-lo[i]) as usize * strides[i]).sum();
    data[origin] = 1;
    for a in &cols {
        let axis = (0..d).find(|&i| a[i] != 0).expect("columns are nonzero");
        let delta: i64 = (0..d).map(|i| a[i] * strides[i] as i64).sum();
        // Pass 1: g[w] = Σ_{t ≥ 0} data[w − t·a], filled along the axis.
        let mut g = data.clone();
        let mut coords = vec![0usize; d];
        let axis_vals: Vec<usize> = if a[axis] > 0 {
            (0..dims[axis]).collect()
        } else {
            (0..dims[axis]).rev().collect()
        };
        for &av in &axis_vals {
            coords[axis] = av;
            // Odometer over the remaining axes.
            for c in coords.iter_mut().enumerate().filter(|(i, _)| *i != axis) {
                *c.1 = 0;
            }
            loop {
                let flat: usize = (0..d).map(|i| coords[i] * strides[i]).sum();
                let in_box = (0..d).all(|i| {
                    let w_i = lo[i] + coords[i] as i64 - a[i];
                    w_i >= lo[i] && w_i <= hi[i]
                });
                if in_box {
                    g[flat] += g[(flat as i64 - delta) as usize];
                }
                // Advance the non-axis odometer.
                let mut done = true;
                for i in (0..d).rev() {
                    if i == axis {
                        continue;
                    }
                    if coords[i] + 1 < dims[i] {
                        coords[i] += 1;
                        done = false;
                        break;
                    }
                    coords[i] = 0;
                }
                if done {
                    break;
                }
            }
        }
        // Pass 2: window of length r ends the geometric sum.
        let mut out = vec![0u64; total];
        let mut coords = vec![0usize; d];
        loop {
            let flat: usize = (0..d).map(|i| coords[i] * strides[i]).sum();
            let in_box = (0..d).all(|i| {
                let w_i = lo[i] + coords[i] as i64 - r * a[i];
                w_i >= lo[i] && w_i <= hi[i]
            });
            out[flat] = g[flat]
                - if in_box {
                    g[(flat as i64 - r * delta) as usize]
                } else {
                    0
                };
            let mut done = true;
            for i in (0..d).rev() {
                if coords[i] + 1 < dims[i] {
                    coords[i] += 1;
                    done = false;
                    break;
                }
                coords[i] = 0;
            }
            if done {
                break;
            }
        }
        data = out;
    }
    Ok(ImageCounts { lo, hi, strides, data })
}

/// Per-fiber counter: solves one integer representative of A·x = rhs and
/// enumerates the kernel lattice along a column-echelon basis, pruning with
/// the box bounds at every level.
#[derive(Debug, Clone)]
pub struct KernelScanner {
    n: usize,
    d: usize,
    /// First d columns of Uᵗ, where U·Aᵗ is the column-space echelon.
    particular: Vec<Vec<i64>>,
    /// Lower-triangular T with A·Uᵗ = [T | 0].
    t_low: Vec<Vec<i64>>,
    /// Column-echelon kernel basis (n×(n−d)).
    echelon: Vec<Vec<i64>>,
    /// Rows grouped by the last basis column touching them.
    rows_by_level: Vec<Vec<usize>>,
    /// Rows no kernel vector touches; fixed once the representative is known.
    static_rows: Vec<usize>,
}

impl KernelScanner {
    pub fn new(config: &GradingMatrix) -> Self {
        let (d, n) = (config.d(), config.n());
        let k = n - d;
        let (u, h) = row_hermite(&config.matrix().transpose());
        let ut = u.transpose();
        let to_i64 = |m: &Mat<crate::Int>, i: usize, j: usize| {
            m.at(i, j).to_i64().expect("transform entry fits i64")
        };
        let particular: Vec<Vec<i64>> =
            (0..n).map(|i| (0..d).map(|j| to_i64(&ut, i, j)).collect()).collect();
        // A·Uᵗ = Hᵗ; the top d rows of H form an upper triangle, so Hᵗ's
        // left block is lower triangular.
        let t_low: Vec<Vec<i64>> =
            (0..d).map(|i| (0..d).map(|j| to_i64(&h, j, i)).collect()).collect();
        let kmat = Mat::from_rows(config.kernel_lattice());
        let echelon: Vec<Vec<i64>> = if k == 0 {
            vec![Vec::new(); n]
        } else {
            let (_, h_w) = row_hermite(&kmat);
            (0..n).map(|i| (0..k).map(|j| to_i64(&h_w, j, i)).collect()).collect()
        };
        let mut rows_by_level = vec![Vec::new(); k];
        let mut static_rows = Vec::new();
        for i in 0..n {
            match (0..k).rev().find(|&j| echelon[i][j] != 0) {
                Some(j) => rows_by_level[j].push(i),
                None => static_rows.push(i),
            }
        }
        KernelScanner { n, d, particular, t_low, echelon, rows_by_level, static_rows }
    }

    /// Counts {x ∈ Z^n : A·x = rhs, lo ≤ x_i ≤ hi}.
    pub fn count(&self, rhs: &[i64], lo: i64, hi: i64) -> u64 {
        assert_eq!(rhs.len(), self.d);
        // Forward substitution; a non-integer step means no integer solution.
        let mut c = vec![0i64; self.d];
        for i in 0..self.d {
            let acc: i64 = (0..i).map(|j| self.t_low[i][j] * c[j]).sum();
            let num = rhs[i] - acc;
            if num % self.t_low[i][i] != 0 {
                return 0;
            }
            c[i] = num / self.t_low[i][i];
        }
        let x0: Vec<i64> = (0..self.n)
            .map(|i| (0..self.d).map(|j| self.particular[i][j] * c[j]).sum())
            .collect();
        for &r in &self.static_rows {
            if x0[r] < lo || x0[r] > hi {
                return 0;
            }
        }
        let k = self.n - self.d;
        if k == 0 {
            return 1;
        }
        let mut partial = x0;
        self.scan(0, k, lo, hi, &mut partial)
    }

    fn scan(&self, level: usize, k: usize, lo: i64, hi: i64, partial: &mut Vec<i64>) -> u64 {
        // Intersect the bounds every row at this level imposes on y_level.
        let mut y_lo = i64::MIN;
        let mut y_hi = i64::MAX;
        for &r in &self.rows_by_level[level] {
            let coeff = self.echelon[r][level];
            let low = lo - partial[r];
            let high = hi - partial[r];
            let (a, b) = if coeff > 0 {
                (div_ceil(low, coeff), div_floor(high, coeff))
            } else {
                (div_ceil(high, coeff), div_floor(low, coeff))
            };
            y_lo = y_lo.max(a);
            y_hi = y_hi.min(b);
        }
        if y_lo > y_hi {
            return 0;
        }
        let mut total = 0u64;
        for y in y_lo..=y_hi {
            let mut touched = Vec::new();
            for r in 0..self.n {
                let e = self.echelon[r][level];
                if e != 0 {
                    partial[r] += e * y;
                    touched.push((r, e));
                }
            }
            total += if level + 1 == k {
                1
            } else {
                self.scan(level + 1, k, lo, hi, partial)
            };
            for (r, e) in touched {
                partial[r] -= e * y;
            }
        }
        total
    }
}

pub(crate) fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

pub(crate) fn div_ceil(a: i64, b: i64) -> i64 {
    -div_floor(-a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(rows: &[Vec<i64>]) -> GradingMatrix {
        GradingMatrix::build(rows).unwrap()
    }

    #[test]
    fn image_counts_total_is_a_power() {
        let cfg = config(&[vec![2, 1, 0], vec![0, 1, 2]]);
        for r in 1..5i64 {
            let counts = image_counts(&cfg, r, &Limits::default()).unwrap();
            let mut total = 0u64;
            for w0 in counts.lo[0]..=counts.hi[0] {
                for w1 in counts.lo[1]..=counts.hi[1] {
                    total += counts.get(&[w0, w1]);
                }
            }
            assert_eq!(total, (r * r * r) as u64);
        }
    }

    #[test]
    fn image_counts_spot_values() {
        let cfg = config(&[vec![2, 1, 0], vec![0, 1, 2]]);
        let counts = image_counts(&cfg, 2, &Limits::default()).unwrap();
        assert_eq!(counts.get(&[0, 0]), 1);
        assert_eq!(counts.get(&[2, 2]), 1); // x = (1, 0, 1)
        assert_eq!(counts.get(&[3, 3]), 1); // x = (1, 1, 1)
        assert_eq!(counts.get(&[1, 0]), 0);
        assert_eq!(counts.get(&[9, 9]), 0); // off the box
    }

    #[test]
    fn scanner_matches_array_engine() {
        for rows in [
            vec![vec![2, 1, 0], vec![0, 1, 2]],
            vec![vec![1, 1, 0, 0, -1], vec![0, 0, 1, 1, 1]],
            vec![vec![1, 1, 1, 1]],
        ] {
            let cfg = config(&rows);
            let scanner = KernelScanner::new(&cfg);
            for r in [2i64, 3] {
                let counts = image_counts(&cfg, r, &Limits::default()).unwrap();
                let mut w = counts.lo.clone();
                'outer: loop {
                    assert_eq!(
                        scanner.count(&w, 0, r - 1),
                        counts.get(&w),
                        "disagreement at {w:?} for {rows:?} r={r}"
                    );
                    for i in (0..w.len()).rev() {
                        if w[i] < counts.hi[i] {
                            w[i] += 1;
                            continue 'outer;
                        }
                        w[i] = counts.lo[i];
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn scanner_handles_negative_boxes() {
        // x ∈ [0, 2]^5 with mixed-sign columns.
        let cfg = config(&[vec![1, 1, 0, 0, -1], vec![0, 0, 1, 1, 1]]);
        let scanner = KernelScanner::new(&cfg);
        // A·x = (−2, 2) forces x₅ = 2, x₁ = x₂ = 0, x₃ + x₄ = 0: one point.
        assert_eq!(scanner.count(&[-2, 2], 0, 2), 1);
        assert_eq!(scanner.count(&[-3, 0], 0, 2), 0);
    }

    #[test]
    fn division_helpers_round_correctly() {
        assert_eq!(div_floor(7, 2), 3);
        assert_eq!(div_floor(-7, 2), -4);
        assert_eq!(div_ceil(7, 2), 4);
        assert_eq!(div_ceil(-7, 2), -3);
        assert_eq!(div_floor(7, -2), -4);
        assert_eq!(div_ceil(7, -2), -3);
    }
}
