//! Laurent polynomials in several variables with exact coefficients, plus
//! the sieving, geometric-factor, and truncated-series operations used by
//! the Veronese pipeline.

use crate::intlat::GradingMatrix;
use crate::{Error, Int, Limits, Rat, Result};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// A Laurent polynomial: finitely many integer exponent vectors mapped to
/// nonzero coefficients. Exponent maps are ordered, so iteration and
/// equality are canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly<T> {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, T>,
}

impl<T: Clone + Zero + PartialEq> LaurentPoly<T> {
    /// The zero polynomial in `nvars` variables.
    pub fn new(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    /// The constant polynomial c.
    pub fn constant(nvars: usize, c: T) -> Self {
        let mut p = Self::new(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The monomial c·t^exp.
    pub fn monomial(exp: Vec<i64>, c: T) -> Self {
        let mut p = Self::new(exp.len());
        p.add_term(exp, c);
        p
    }

    /// Builds from (exponent, coefficient) pairs, accumulating duplicates.
    pub fn from_terms(nvars: usize, terms: Vec<(Vec<i64>, T)>) -> Self {
        let mut p = Self::new(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of t^exp, if nonzero.
    pub fn coeff(&self, exp: &[i64]) -> Option<&T> {
        self.terms.get(exp)
    }

    /// The coefficient of t^exp, with absent terms read as zero.
    pub fn coeff_or_zero(&self, exp: &[i64]) -> T {
        self.terms.get(exp).cloned().unwrap_or_else(T::zero)
    }

    /// Iterates terms in exponent-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &T)> {
        self.terms.iter()
    }

    /// Exponents of the nonzero terms, in lexicographic order.
    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    /// Adds c·t^exp, dropping the term if the sum cancels.
    pub fn add_term(&mut self, exp: Vec<i64>, c: T) {
        assert_eq!(exp.len(), self.nvars, "exponent arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// Sum of all coefficients, i.e. the value at t = (1, …, 1).
    pub fn eval_at_one(&self) -> T {
        self.terms
            .values()
            .fold(T::zero(), |acc, c| acc + c.clone())
    }

    /// Keeps only terms whose exponents are divisible by r componentwise,
    /// dividing those exponents by r.
    pub fn sieve(&self, r: i64) -> Self {
        assert!(r >= 1);
        let mut out = Self::new(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().all(|&x| x % r == 0) {
                out.add_term(e.iter().map(|&x| x / r).collect(), c.clone());
            }
        }
        out
    }

    /// Multiplies by the monomial t^shift.
    pub fn translate(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.nvars);
        let mut out = Self::new(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone());
        }
        out
    }

    /// Applies a function to every coefficient, dropping zero results.
    pub fn map_coeffs<F: Fn(&T) -> T>(&self, f: F) -> Self {
        let mut out = Self::new(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }
}

impl<T> LaurentPoly<T>
where
    T: Clone + Zero + PartialEq + std::ops::Mul<Output = T>,
{
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::new(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exp: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exp, c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::new(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * s.clone());
        }
        out
    }
}

impl<T: Clone + Zero + PartialEq + PartialOrd + Signed> LaurentPoly<T> {
    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Largest absolute value among the coefficients (zero for the zero
    /// polynomial); a convenient exact norm for convergence reporting.
    pub fn max_abs_coeff(&self) -> T {
        self.terms
            .values()
            .fold(T::zero(), |acc, c| if c.abs() > acc { c.abs() } else { acc })
    }
}

/// 1 − t^exp.
pub fn one_minus_monomial(exp: &[i64]) -> LaurentPoly<Rat> {
    let mut p = LaurentPoly::constant(exp.len(), Rat::from_integer(Int::from(1)));
    p.add_term(exp.to_vec(), -Rat::from_integer(Int::from(1)));
    p
}

/// ∏_j (1 + t^{a_j} + … + t^{(r−1)·a_j}) over the columns a_j of the grading.
///
/// Its value at t = 1 is r^n exactly.
pub fn geometric_factor(config: &GradingMatrix, r: i64, limits: &Limits) -> Result<LaurentPoly<Rat>> {
    assert!(r >= 1);
    let d = config.d();
    let mut acc = LaurentPoly::constant(d, Rat::from_integer(Int::from(1)));
    for j in 0..config.n() {
        let a_j = config.column_i64(j);
        let needed = (acc.num_terms() as u128).saturating_mul(r as u128);
        if needed > limits.term_cap {
            return Err(Error::SizeLimit { what: "geometric factor terms", needed, cap: limits.term_cap });
        }
        let mut factor = LaurentPoly::new(d);
        for k in 0..r {
            factor.add_term(a_j.iter().map(|&v| v * k).collect(), Rat::from_integer(Int::from(1)));
        }
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// A truncated expansion of F/∏(1−t^{a_j}): all series coefficients on the
/// region y·w ≤ bound, where y is the grading's positive functional.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesBox {
    pub bound: Rat,
    pub functional: Vec<Rat>,
    pub coefficients: BTreeMap<Vec<i64>, Rat>,
}

/// Expands F·∏_j (1 + t^{a_j} + t^{2a_j} + …) keeping exponents w with
/// y·w ≤ bound; complete on that region because every column has y·a_j ≥ 1.
pub fn series_expand(
    f: &LaurentPoly<Rat>,
    config: &GradingMatrix,
    bound: &Rat,
    limits: &Limits,
) -> Result<SeriesBox> {
    assert_eq!(f.nvars(), config.d());
    let y = config.positive_functional().to_vec();
    let dot = |e: &[i64]| -> Rat {
        e.iter()
            .zip(&y)
            .map(|(&x, yi)| Rat::from_integer(Int::from(x)) * yi)
            .sum()
    };
    let truncate = |p: &LaurentPoly<Rat>| -> LaurentPoly<Rat> {
        let mut out = LaurentPoly::new(p.nvars());
        for (e, c) in p.terms() {
            if dot(e) <= *bound {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    };
    let mut acc = truncate(f);
    for j in 0..config.n() {
        let a_j = config.column_i64(j);
        let mut out = acc.clone();
        let mut cur = truncate(&acc.translate(&a_j));
        while !cur.is_zero() {
            out = out.add(&cur);
            if out.num_terms() as u128 > limits.term_cap {
                return Err(Error::SizeLimit {
                    what: "series box terms",
                    needed: out.num_terms() as u128,
                    cap: limits.term_cap,
                });
            }
            cur = truncate(&cur.translate(&a_j));
        }
        acc = out;
    }
    Ok(SeriesBox {
        bound: bound.clone(),
        functional: y,
        coefficients: acc.terms().map(|(e, c)| (e.clone(), c.clone())).collect(),
    })
}

/// Numerator of the Hilbert series of a monomial quotient: the
/// inclusion–exclusion sum Σ_σ (−1)^{|σ|} t^{A·lcm(σ)} over subsets σ of the
/// generators, with exponents graded through the matrix.
pub fn monomial_quotient_numerator(
    config: &GradingMatrix,
    generators: &[Vec<i64>],
) -> Result<LaurentPoly<Rat>> {
    let n = config.n();
    for g in generators {
        if g.len() != n || g.iter().any(|&e| e < 0) {
            return Err(Error::InvalidInput {
                detail: format!("generator {g:?} is not a length-{n} nonnegative exponent vector"),
            });
        }
    }
    if generators.len() > 40 {
        return Err(Error::SizeLimit {
            what: "monomial quotient subsets",
            needed: u128::MAX,
            cap: 1 << 40,
        });
    }
    let mut out = LaurentPoly::new(config.d());
    let mut stack: Vec<(usize, Vec<i64>, bool)> = vec![(0, vec![0; n], false)];
    while let Some((idx, lcm, odd)) = stack.pop() {
        if idx == generators.len() {
            let graded = config.grade(&lcm);
            let one = Rat::from_integer(Int::from(1));
            out.add_term(graded, if odd { -one } else { one });
            continue;
        }
        stack.push((idx + 1, lcm.clone(), odd));
        let joined: Vec<i64> = lcm
            .iter()
            .zip(&generators[idx])
            .map(|(&a, &b)| a.max(b))
            .collect();
        stack.push((idx + 1, joined, !odd));
    }
    Ok(out)
}
