//! The stride-r sifting operator on graded numerators, its exact count
//! coefficients, the asymptotic K-polynomial, the codimension-ℓ limit
//! formula, and convergence diagnostics along stride sequences.

use crate::concavity::{is_log_concave, is_quasi_concave};
use crate::intlat::GradingMatrix;
use crate::laurent::{geometric_factor, one_minus_monomial, LaurentPoly};
use crate::polytope::counting::{div_ceil, div_floor};
use crate::polytope::{fiber_polytope, image_counts, is_degenerate, zonotope, KernelScanner};
use crate::{Error, Int, Limits, Rat, Result};
use num_traits::{One, Signed, Zero};

/// Applies the stride-r operator: the t^u coefficient of the result is
/// Σ_v C_r(u,v)·f_v, where C_r(u,v) counts x ∈ [0,r−1]^n with A·x = ru − v.
pub fn phi(
    config: &GradingMatrix,
    f: &LaurentPoly<Rat>,
    r: i64,
    limits: &Limits,
) -> Result<LaurentPoly<Rat>> {
    if r < 1 {
        return Err(Error::InvalidInput { detail: format!("stride {r} must be at least 1") });
    }
    if f.nvars() != config.d() {
        return Err(Error::InvalidInput {
            detail: format!("numerator has {} variables, grading has {}", f.nvars(), config.d()),
        });
    }
    if r == 1 || f.is_zero() {
        return Ok(f.clone());
    }
    match image_counts(config, r, limits) {
        Ok(counts) => {
            accumulate(config, f, r, limits, &counts.lo.clone(), &counts.hi.clone(), |w| {
                counts.get(w)
            })
        }
        Err(Error::SizeLimit { .. }) => {
            let d = config.d();
            let cols: Vec<Vec<i64>> = (0..config.n()).map(|j| config.column_i64(j)).collect();
            let lo: Vec<i64> = (0..d)
                .map(|i| cols.iter().map(|c| ((r - 1) * c[i]).min(0)).sum())
                .collect();
            let hi: Vec<i64> = (0..d)
                .map(|i| cols.iter().map(|c| ((r - 1) * c[i]).max(0)).sum())
                .collect();
            let scanner = KernelScanner::new(config);
            accumulate(config, f, r, limits, &lo, &hi, |w| scanner.count(w, 0, r - 1))
        }
        Err(e) => Err(e),
    }
}

/// Shared grid walk over all u with r·u − v inside the image box.
fn accumulate(
    config: &GradingMatrix,
    f: &LaurentPoly<Rat>,
    r: i64,
    limits: &Limits,
    lo: &[i64],
    hi: &[i64],
    count: impl Fn(&[i64]) -> u64,
) -> Result<LaurentPoly<Rat>> {
    let d = config.d();
    let mut out = LaurentPoly::new(d);
    for (v, fv) in f.terms() {
        let u_lo: Vec<i64> = (0..d).map(|i| div_ceil(lo[i] + v[i], r)).collect();
        let u_hi: Vec<i64> = (0..d).map(|i| div_floor(hi[i] + v[i], r)).collect();
        if (0..d).any(|i| u_lo[i] > u_hi[i]) {
            continue;
        }
        let cells: u128 = (0..d).map(|i| (u_hi[i] - u_lo[i] + 1) as u128).product();
        if cells > limits.term_cap {
            return Err(Error::SizeLimit {
                what: "operator support grid",
                needed: cells,
                cap: limits.term_cap,
            });
        }
        let mut u = u_lo.clone();
        'grid: loop {
            let w: Vec<i64> = (0..d).map(|i| r * u[i] - v[i]).collect();
            let c = count(&w);
            if c > 0 {
                out.add_term(u.clone(), Rat::from(Int::from(c)) * fv);
            }
            for i in (0..d).rev() {
                if u[i] < u_hi[i] {
                    u[i] += 1;
                    continue 'grid;
                }
                u[i] = u_lo[i];
            }
            break;
        }
    }
    Ok(out)
}

/// Cross-check path: multiply by the truncated geometric factor per column
/// and keep every exponent divisible by r, then divide exponents by r.
pub fn phi_product(
    config: &GradingMatrix,
    f: &LaurentPoly<Rat>,
    r: i64,
    limits: &Limits,
) -> Result<LaurentPoly<Rat>> {
    if r < 1 {
        return Err(Error::InvalidInput { detail: format!("stride {r} must be at least 1") });
    }
    let g = geometric_factor(config, r, limits)?;
    Ok(f.mul(&g).sieve(r))
}

/// The single count C_r(u,v) = #{x ∈ Z^n ∩ [0,r−1]^n : A·x = r·u − v}.
pub fn c_coeff(config: &GradingMatrix, r: i64, u: &[i64], v: &[i64]) -> Int {
    assert!(r >= 1);
    let rhs: Vec<i64> = u.iter().zip(v).map(|(a, b)| r * a - b).collect();
    Int::from(KernelScanner::new(config).count(&rhs, 0, r - 1))
}

/// The limit object of the operator: fiber-volume generating polynomial on
/// the interior lattice points of the zonotope, with bookkeeping.
#[derive(Debug, Clone)]
pub struct AsymptoticKPoly {
    pub k_poly: LaurentPoly<Rat>,
    pub lattice_index: Int,
    pub codim: usize,
    pub coefficient_sum: Rat,
    pub per_point: Vec<(Vec<i64>, Rat)>,
}

/// Computes K(t) = Σ_u vol(P(u))·t^u over interior lattice points u, with
/// volumes normalized against the kernel lattice.
pub fn asymptotic_k_polynomial(config: &GradingMatrix, limits: &Limits) -> Result<AsymptoticKPoly> {
    if let Some(witness) = is_degenerate(config, limits)? {
        return Err(Error::DegenerateMap {
            witness: crate::polytope::degenerate_witness(&witness),
        });
    }
    let z = zonotope(config, limits)?;
    let mut k_poly = LaurentPoly::new(config.d());
    let mut per_point = Vec::new();
    for u in &z.interior_points {
        let fiber = fiber_polytope(config, u);
        per_point.push((u.clone(), fiber.normalized_volume.clone()));
        k_poly.add_term(u.clone(), fiber.normalized_volume);
    }
    let coefficient_sum = k_poly.eval_at_one();
    Ok(AsymptoticKPoly {
        k_poly,
        lattice_index: config.lattice_index().clone(),
        codim: config.n() - config.d(),
        coefficient_sum,
        per_point,
    })
}

fn factorial(k: usize) -> Int {
    (1..=k as u64).map(Int::from).fold(Int::one(), |a, b| a * b)
}

/// The codimension-ℓ limit: given the expansion terms (s, μ_s) of the
/// numerator, returns (1/e!)·Σ_s (μ_s / m_ŝ^e)·K_ŝ(t)·∏_{i∈s}(1 − t^{a_i})
/// with e = n − ℓ − d, where ŝ deletes the columns in s.
pub fn codim_asymptotic(
    config: &GradingMatrix,
    codim: usize,
    terms: &[(Vec<usize>, Int)],
    limits: &Limits,
) -> Result<LaurentPoly<Rat>> {
    let (n, d) = (config.n(), config.d());
    if codim == 0 || n < codim || n - codim < d {
        return Err(Error::InvalidInput {
            detail: format!("codimension {codim} incompatible with a {d}×{n} grading"),
        });
    }
    if terms.is_empty() {
        return Err(Error::InvalidInput { detail: "expansion has no terms".into() });
    }
    let e = n - codim - d;
    let e_fact = factorial(e);
    let mut acc = LaurentPoly::new(d);
    for (index, (s_raw, mu)) in terms.iter().enumerate() {
        let mut s = s_raw.clone();
        s.sort_unstable();
        s.dedup();
        if s.len() != codim || s.iter().any(|&i| i >= n) {
            return Err(Error::InvalidInput {
                detail: format!("term {index}: index set {s_raw:?} is not {codim} distinct columns"),
            });
        }
        if !mu.is_positive() {
            return Err(Error::InvalidInput {
                detail: format!("term {index}: multiplicity {mu} must be positive"),
            });
        }
        let wrap = |cause: Error| Error::ExpansionTerm { index, cause: Box::new(cause) };
        let sub = config.drop_columns(&s).map_err(wrap)?;
        let k_sub = asymptotic_k_polynomial(&sub, limits).map_err(wrap)?;
        let mut m_pow = Int::one();
        for _ in 0..e {
            m_pow *= &k_sub.lattice_index;
        }
        let mut term = k_sub.k_poly;
        for &i in &s {
            term = term.mul(&one_minus_monomial(&config.column_i64(i)));
        }
        let scale = Rat::new(mu.clone(), m_pow * &e_fact);
        acc = acc.add(&term.map_coeffs(|c| c * &scale));
    }
    Ok(acc)
}

/// Convergence diagnostics for Φ_r[F] along strides r = m, 2m, …, ≤ r_max:
/// exact differences against the top-order prediction, a detected growth
/// order with its limit polynomial (exact finite differences, no floats),
/// lower-order residual data, the empirical settling stride for
/// nonnegativity + concavity, and per-residue diagnostics when m > 1.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub lattice_index: i64,
    pub growth_bound: usize,
    pub strides: Vec<i64>,
    pub operator_values: Vec<LaurentPoly<Rat>>,
    pub scaled_differences: Vec<LaurentPoly<Rat>>,
    pub difference_norms: Vec<Rat>,
    pub observed_growth: Option<usize>,
    pub observed_limit: Option<LaurentPoly<Rat>>,
    pub residuals: Vec<LaurentPoly<Rat>>,
    pub empirical_r0: Option<i64>,
    pub r0_caveat: String,
    pub off_stride: Vec<OffStrideClass>,
    pub oscillation: bool,
}

/// Diagnostic sequence for one residue class r ≡ residue mod m.
#[derive(Debug, Clone)]
pub struct OffStrideClass {
    pub residue: i64,
    pub strides: Vec<i64>,
    /// Detected limit of Φ_r[F]/r^growth along this class, at the main
    /// class's growth order; None when the class does not stabilize.
    pub limit: Option<LaurentPoly<Rat>>,
}

pub fn convergence_report(
    config: &GradingMatrix,
    f: &LaurentPoly<Rat>,
    r_max: i64,
    limits: &Limits,
) -> Result<ConvergenceReport> {
    let m = config.lattice_index_i64();
    if r_max < m {
        return Err(Error::InvalidInput {
            detail: format!("r_max {r_max} is below the lattice index {m}"),
        });
    }
    let growth_bound = config.n() - config.d();
    let k = asymptotic_k_polynomial(config, limits)?;
    let f_one = f.eval_at_one();
    let scale = f_one / Rat::from(factorial(growth_bound));
    let target = k.k_poly.map_coeffs(|c| c * &scale);

    let strides: Vec<i64> = (1..).map(|i| i * m).take_while(|&r| r <= r_max).collect();
    let mut operator_values = Vec::new();
    for &r in &strides {
        operator_values.push(phi(config, f, r, limits)?);
    }
    let mut scaled_differences = Vec::new();
    let mut difference_norms = Vec::new();
    for (i, &r) in strides.iter().enumerate() {
        let denom = Rat::from(Int::from(r).pow(growth_bound as u32));
        let diff = operator_values[i].map_coeffs(|c| c / &denom).sub(&target);
        difference_norms.push(diff.max_abs_coeff());
        scaled_differences.push(diff);
    }

    // Growth detection on the tail of the main class, widening the period
    // to 2 if the coefficient sequences are quasi-polynomial of period 2.
    let detect_points: Vec<(i64, &LaurentPoly<Rat>)> = strides
        .iter()
        .zip(&operator_values)
        .filter(|(&r, _)| r >= 2)
        .map(|(&r, p)| (r, p))
        .collect();
    let main_profile = class_profile(&detect_points, growth_bound)
        .or_else(|| class_profile(&subsample(&detect_points, 2), growth_bound));
    let (observed_growth, observed_limit) = match &main_profile {
        Some((deg, lim)) => (Some(*deg), Some(lim.clone())),
        None => (None, None),
    };

    let residuals: Vec<LaurentPoly<Rat>> = strides
        .iter()
        .enumerate()
        .map(|(i, &r)| match &main_profile {
            Some((deg, lim)) => {
                let lead = Rat::from(Int::from(r).pow(*deg as u32));
                operator_values[i].sub(&lim.map_coeffs(|c| c * &lead))
            }
            None => operator_values[i].clone(),
        })
        .collect();

    // Smallest tested stride from which every later tested stride is
    // simultaneously nonnegative, log-concave, and quasi-concave.
    let well_behaved: Vec<bool> = operator_values
        .iter()
        .map(|p| {
            p.terms().all(|(_, c)| !c.is_negative())
                && is_log_concave(p).holds
                && is_quasi_concave(p).holds
        })
        .collect();
    let mut empirical_r0 = None;
    for i in (0..strides.len()).rev() {
        if well_behaved[i] {
            empirical_r0 = Some(strides[i]);
        } else {
            break;
        }
    }
    let r0_caveat = format!("empirical settling stride only; unverified beyond r = {r_max}");

    // Off-stride residue classes as diagnostics when m > 1.
    let mut off_stride = Vec::new();
    let mut oscillation = false;
    for residue in 1..m {
        let class_strides: Vec<i64> =
            (0..).map(|i| residue + i * m).skip_while(|&r| r < 2).take_while(|&r| r <= r_max).collect();
        let mut polys = Vec::new();
        for &r in &class_strides {
            polys.push(phi(config, f, r, limits)?);
        }
        let points: Vec<(i64, &LaurentPoly<Rat>)> =
            class_strides.iter().copied().zip(polys.iter()).collect();
        let profile =
            class_profile(&points, growth_bound).or_else(|| class_profile(&subsample(&points, 2), growth_bound));
        let limit = match (&profile, &main_profile) {
            (Some((deg, lim)), Some((main_deg, _))) => {
                if deg == main_deg {
                    Some(lim.clone())
                } else if deg < main_deg {
                    Some(LaurentPoly::new(config.d()))
                } else {
                    Some(lim.clone())
                }
            }
            (Some((_, lim)), None) => Some(lim.clone()),
            (None, _) => None,
        };
        let class_disagrees = match (&limit, &observed_limit, &profile, &main_profile) {
            (Some(l), Some(main), Some((deg, _)), Some((main_deg, _))) => {
                deg > main_deg || l != main
            }
            (None, _, _, _) => true,
            _ => false,
        };
        oscillation = oscillation || class_disagrees;
        off_stride.push(OffStrideClass { residue, strides: class_strides, limit });
    }

    Ok(ConvergenceReport {
        lattice_index: m,
        growth_bound,
        strides,
        operator_values,
        scaled_differences,
        difference_norms,
        observed_growth,
        observed_limit,
        residuals,
        empirical_r0,
        r0_caveat,
        off_stride,
        oscillation,
    })
}

/// Keeps every `step`-th point from the end, preserving equal spacing.
fn subsample<'a>(
    points: &[(i64, &'a LaurentPoly<Rat>)],
    step: usize,
) -> Vec<(i64, &'a LaurentPoly<Rat>)> {
    let mut picked: Vec<(i64, &LaurentPoly<Rat>)> =
        points.iter().rev().step_by(step).copied().collect();
    picked.reverse();
    picked
}

/// Detects, for each exponent, the exact degree and leading coefficient of
/// the (eventually polynomial) coefficient sequence along equally spaced
/// strides, from a tail window of the data. Returns the maximal degree and
/// the polynomial of its leading coefficients, or None if any sequence
/// fails to be polynomial of degree ≤ max_deg on the window.
fn class_profile(
    points: &[(i64, &LaurentPoly<Rat>)],
    max_deg: usize,
) -> Option<(usize, LaurentPoly<Rat>)> {
    let window = max_deg + 4;
    let tail: Vec<&(i64, &LaurentPoly<Rat>)> =
        points.iter().skip(points.len().saturating_sub(window)).collect();
    if tail.len() < max_deg + 2 {
        return None;
    }
    let h = tail[1].0 - tail[0].0;
    if tail.windows(2).any(|w| w[1].0 - w[0].0 != h) {
        return None;
    }
    let mut exponents: Vec<Vec<i64>> = Vec::new();
    for (_, p) in &tail {
        for e in p.support() {
            if !exponents.contains(&e) {
                exponents.push(e);
            }
        }
    }
    exponents.sort();
    let nvars = tail[0].1.nvars();
    let mut best_deg = 0usize;
    let mut profiles = Vec::new();
    for e in &exponents {
        let vals: Vec<Rat> = tail.iter().map(|(_, p)| p.coeff_or_zero(e)).collect();
        let (deg, lead) = newton_profile(&vals, h, max_deg)?;
        if !lead.is_zero() {
            best_deg = best_deg.max(deg);
        }
        profiles.push((e.clone(), deg, lead));
    }
    let mut limit = LaurentPoly::new(nvars);
    for (e, deg, lead) in profiles {
        if deg == best_deg {
            limit.add_term(e, lead);
        }
    }
    Some((best_deg, limit))
}

/// Exact Newton finite differences on equally spaced values: returns the
/// polynomial degree and leading coefficient, or None if no difference row
/// of order ≤ max_deg + 1 vanishes with at least two confirming entries.
fn newton_profile(vals: &[Rat], h: i64, max_deg: usize) -> Option<(usize, Rat)> {
    let mut rows = vec![vals.to_vec()];
    while rows.last().unwrap().len() > 1 {
        let prev = rows.last().unwrap();
        let next: Vec<Rat> = prev.windows(2).map(|w| &w[1] - &w[0]).collect();
        rows.push(next);
        if rows.len() > max_deg + 2 {
            break;
        }
    }
    for (k, row) in rows.iter().enumerate() {
        if k > max_deg + 1 || row.len() < 2 {
            break;
        }
        if row.iter().all(|v| v.is_zero()) {
            if k == 0 {
                return Some((0, Rat::zero()));
            }
            let deg = k - 1;
            let denom = Rat::from(factorial(deg) * Int::from(h).pow(deg as u32));
            return Some((deg, &rows[deg][0] / denom));
        }
    }
    None
}

/// Both readings of the factor-commutation identity at one (column, stride):
/// the verbatim form keeps the same grading on both sides; the rebased form
/// drops the factored column from the grading on the right.
#[derive(Debug, Clone)]
pub struct CommutationCheck {
    pub verbatim_holds: bool,
    pub verbatim_diff: LaurentPoly<Rat>,
    pub rebased_holds: bool,
    pub rebased_diff: LaurentPoly<Rat>,
}

pub fn commutation_check(
    config: &GradingMatrix,
    f: &LaurentPoly<Rat>,
    column: usize,
    r: i64,
    limits: &Limits,
) -> Result<CommutationCheck> {
    if column >= config.n() {
        return Err(Error::InvalidInput {
            detail: format!("column {column} out of range for n = {}", config.n()),
        });
    }
    let factor = one_minus_monomial(&config.column_i64(column));
    let lhs = phi(config, &f.mul(&factor), r, limits)?;
    let verbatim_rhs = factor.mul(&phi(config, f, r, limits)?);
    let verbatim_diff = lhs.sub(&verbatim_rhs);
    let sub = config.drop_columns(&[column])?;
    let rebased_rhs = factor.mul(&phi(&sub, f, r, limits)?);
    let rebased_diff = lhs.sub(&rebased_rhs);
    Ok(CommutationCheck {
        verbatim_holds: verbatim_diff.is_zero(),
        verbatim_diff,
        rebased_holds: rebased_diff.is_zero(),
        rebased_diff,
    })
}

/// A test numerator supported on the interior of the m-dilated zonotope:
/// Σ t^{m·w} over interior lattice points w (empty interior gives zero).
pub fn interior_supported_numerator(
    config: &GradingMatrix,
    limits: &Limits,
) -> Result<LaurentPoly<Rat>> {
    let z = zonotope(config, limits)?;
    let m = config.lattice_index_i64();
    let mut f = LaurentPoly::new(config.d());
    for w in &z.interior_points {
        f.add_term(w.iter().map(|&c| m * c).collect(), Rat::one());
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn config(rows: &[Vec<i64>]) -> GradingMatrix {
        GradingMatrix::build(rows).unwrap()
    }

    fn poly(nvars: usize, terms: &[(Vec<i64>, i64)]) -> LaurentPoly<Rat> {
        let mut f = LaurentPoly::new(nvars);
        for (e, c) in terms {
            f.add_term(e.clone(), Rat::from(Int::from(*c)));
        }
        f
    }

    fn hexagon() -> GradingMatrix {
        config(&[vec![2, 1, 0], vec![0, 1, 2]])
    }

    #[test]
    fn even_strides_match_the_closed_form() {
        let cfg = hexagon();
        let limits = Limits::default();
        for k in 3..6i64 {
            let got = phi(&cfg, &poly(2, &[(vec![0, 0], 1)]), 2 * k, &limits).unwrap();
            let want = poly(
                2,
                &[
                    (vec![2, 2], k - 1),
                    (vec![2, 1], k - 1),
                    (vec![1, 2], k - 1),
                    (vec![1, 1], k),
                    (vec![1, 0], 1),
                    (vec![0, 1], 1),
                    (vec![0, 0], 1),
                ],
            );
            assert_eq!(got, want, "stride {}", 2 * k);
        }
    }

    #[test]
    fn odd_strides_match_the_closed_form() {
        let cfg = hexagon();
        let limits = Limits::default();
        for k in 1..6i64 {
            let got = phi(&cfg, &poly(2, &[(vec![0, 0], 1)]), 2 * k + 1, &limits).unwrap();
            let want = poly(2, &[(vec![2, 2], k), (vec![1, 1], k), (vec![0, 0], 1)]);
            assert_eq!(got, want, "stride {}", 2 * k + 1);
        }
    }

    #[test]
    fn stride_one_is_the_identity() {
        let cfg = hexagon();
        let f = poly(2, &[(vec![1, 1], 3), (vec![-1, 2], 7)]);
        assert_eq!(phi(&cfg, &f, 1, &Limits::default()).unwrap(), f);
    }

    #[test]
    fn counts_match_direct_enumeration() {
        let cfg = hexagon();
        assert_eq!(c_coeff(&cfg, 3, &[1, 1], &[0, 0]), Int::from(1));
        let ones = config(&[vec![1, 1, 1]]);
        assert_eq!(c_coeff(&ones, 2, &[1], &[1]), Int::from(3));
    }

    #[test]
    fn product_path_agrees_with_enumeration() {
        let limits = Limits::default();
        for rows in [
            vec![vec![2, 1, 0], vec![0, 1, 2]],
            vec![vec![1, 1, 0, 0, -1], vec![0, 0, 1, 1, 1]],
        ] {
            let cfg = config(&rows);
            let f = poly(cfg.d(), &[(vec![0; cfg.d()], 1)]);
            for r in 2..5i64 {
                assert_eq!(
                    phi(&cfg, &f, r, &limits).unwrap(),
                    phi_product(&cfg, &f, r, &limits).unwrap(),
                    "{rows:?} at stride {r}"
                );
            }
        }
    }

    #[test]
    fn k_polynomial_of_the_hexagon() {
        let k = asymptotic_k_polynomial(&hexagon(), &Limits::default()).unwrap();
        let half = Rat::new(Int::from(1), Int::from(2));
        let mut want = LaurentPoly::new(2);
        for e in [[1, 1], [2, 1], [1, 2], [2, 2]] {
            want.add_term(e.to_vec(), half.clone());
        }
        assert_eq!(k.k_poly, want);
        assert_eq!(k.coefficient_sum, Rat::from(Int::from(2)));
        assert_eq!(k.lattice_index, Int::from(2));
        assert_eq!(k.codim, 1);
    }

    #[test]
    fn k_polynomial_of_the_carries_grading() {
        let cfg = config(&[vec![1, 1, 0, 0, -1], vec![0, 0, 1, 1, 1]]);
        let k = asymptotic_k_polynomial(&cfg, &Limits::default()).unwrap();
        let want = poly(2, &[(vec![1, 2], 1), (vec![1, 1], 2), (vec![0, 2], 2), (vec![0, 1], 1)]);
        assert_eq!(k.k_poly, want);
        assert_eq!(k.coefficient_sum, Rat::from(Int::from(6)));
    }

    #[test]
    fn eulerian_k_polynomial_for_three_ones() {
        let k = asymptotic_k_polynomial(&config(&[vec![1, 1, 1]]), &Limits::default()).unwrap();
        assert_eq!(k.k_poly, poly(1, &[(vec![1], 1), (vec![2], 1)]));
    }

    #[test]
    fn degenerate_grading_is_rejected() {
        let cfg = config(&[vec![1, 1, 0], vec![0, 0, 1]]);
        match asymptotic_k_polynomial(&cfg, &Limits::default()) {
            Err(Error::DegenerateMap { witness }) => {
                assert_eq!(witness, vec![Int::from(1), Int::from(0)]);
            }
            other => panic!("expected degeneracy, got {other:?}"),
        }
    }

    #[test]
    fn newton_profile_detects_degree_and_leading() {
        // vals = (2k+1)² − 3 at k = 1..7, spacing 2.
        let vals: Vec<Rat> =
            (1..8i64).map(|k| Rat::from(Int::from((2 * k + 1) * (2 * k + 1) - 3))).collect();
        let (deg, lead) = newton_profile(&vals, 2, 4).unwrap();
        assert_eq!(deg, 2);
        assert_eq!(lead, Rat::from(Int::from(1)));
        // A parity-dependent sequence is rejected.
        let vals: Vec<Rat> = (1..8i64).map(|k| Rat::from(Int::from(k / 2))).collect();
        assert!(newton_profile(&vals, 1, 4).is_none());
    }

    #[test]
    fn hexagon_report_converges_with_odd_oscillation() {
        let cfg = hexagon();
        let f = poly(2, &[(vec![0, 0], 1)]);
        let report = convergence_report(&cfg, &f, 24, &Limits::default()).unwrap();
        assert_eq!(report.strides, (1..=12).map(|k| 2 * k).collect::<Vec<_>>());
        assert_eq!(report.observed_growth, Some(1));
        let k = asymptotic_k_polynomial(&cfg, &Limits::default()).unwrap();
        assert_eq!(report.observed_limit.as_ref(), Some(&k.k_poly));
        assert_eq!(report.empirical_r0, Some(2));
        assert!(report.oscillation, "odd strides disagree with the even-stride limit");
        let odd = &report.off_stride[0];
        let half = Rat::new(Int::from(1), Int::from(2));
        let mut odd_limit = LaurentPoly::new(2);
        odd_limit.add_term(vec![1, 1], half.clone());
        odd_limit.add_term(vec![2, 2], half);
        assert_eq!(odd.limit.as_ref(), Some(&odd_limit));
        // Differences against the top-order prediction shrink.
        let norms = &report.difference_norms;
        assert!(norms.last().unwrap() < &norms[1]);
    }

    #[test]
    fn single_term_expansion_matches_the_observed_limit() {
        // F = 1 − t² factors out the third column of [1 1 2]; the kept
        // grading [1 1] contributes K = t, so the predicted limit of
        // Φ_r[F]/r is t·(1 − t²).
        let cfg = config(&[vec![1, 1, 2]]);
        let f = one_minus_monomial(&[2]);
        let report = convergence_report(&cfg, &f, 14, &Limits::default()).unwrap();
        let expansion = codim_asymptotic(&cfg, 1, &[(vec![2], Int::one())], &Limits::default())
            .unwrap();
        assert_eq!(report.observed_growth, Some(1));
        assert_eq!(report.observed_limit.as_ref(), Some(&expansion));
        assert_eq!(expansion, poly(1, &[(vec![1], 1), (vec![3], -1)]));
    }

    #[test]
    fn square_submatrices_are_rejected_as_degenerate() {
        // Deleting one column of [2 1] leaves a square grading, whose
        // boundary fibers are full-dimensional points.
        let cfg = config(&[vec![2, 1]]);
        match codim_asymptotic(&cfg, 1, &[(vec![1], Int::one())], &Limits::default()) {
            Err(Error::ExpansionTerm { index: 0, cause }) => {
                assert!(matches!(*cause, Error::DegenerateMap { .. }));
            }
            other => panic!("expected a degenerate expansion term, got {other:?}"),
        }
    }

    #[test]
    fn commutation_rebased_form_always_holds() {
        let cfg = config(&[vec![1, 1]]);
        let f = poly(1, &[(vec![0], 1)]);
        for r in 2..6i64 {
            let check = commutation_check(&cfg, &f, 0, r, &Limits::default()).unwrap();
            assert!(check.rebased_holds, "stride {r}");
            assert!(!check.verbatim_holds, "verbatim form fails on [1,1] at stride {r}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn phi_is_linear_and_shifts_factor_out(
            c0 in 1i64..5, c1 in 0i64..5, shift in -2i64..3, r in 2i64..5,
        ) {
            let cfg = config(&[vec![2, 1, 0], vec![0, 1, 2]]);
            let limits = Limits::default();
            let f = poly(2, &[(vec![0, 0], c0), (vec![1, 1], c1)]);
            let doubled = phi(&cfg, &f.map_coeffs(|c| c * Rat::from(Int::from(2))), r, &limits)
                .unwrap();
            prop_assert_eq!(
                doubled,
                phi(&cfg, &f, r, &limits).unwrap().map_coeffs(|c| c * Rat::from(Int::from(2)))
            );
            let shifted = f.translate(&[r * shift, r * shift]);
            prop_assert_eq!(
                phi(&cfg, &shifted, r, &limits).unwrap(),
                phi(&cfg, &f, r, &limits).unwrap().translate(&[shift, shift])
            );
        }
    }
}
