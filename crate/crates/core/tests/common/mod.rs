//! Shared fixtures for the integration suite: a deterministic battery of
//! random gradings plus small exact helpers.

use kapoly::intlat::GradingMatrix;
use kapoly::laurent::LaurentPoly;
use kapoly::polytope::is_degenerate;
use kapoly::veronese::{asymptotic_k_polynomial, AsymptoticKPoly};
use kapoly::{Int, Limits, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

static BATTERY: OnceLock<Vec<GradingMatrix>> = OnceLock::new();
static K_POLYS: OnceLock<Vec<AsymptoticKPoly>> = OnceLock::new();

/// Twenty-five random gradings with d ≤ 3, n ≤ 7, entries in [−3, 3],
/// deterministic across runs. A draw is rejected only when it fails to be a
/// grading at all (rank-deficient or not acyclic) or when the map is
/// degenerate; nothing else is filtered, so the battery exercises whatever
/// lattice index, codimension, and coefficient structure the draws produce.
pub fn battery() -> &'static [GradingMatrix] {
    BATTERY.get_or_init(|| {
        let limits = Limits::default();
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
        let mut members = Vec::new();
        while members.len() < 25 {
            let d: usize = rng.gen_range(1..=3);
            let n: usize = rng.gen_range(d + 1..=7);
            let rows: Vec<Vec<i64>> = (0..d)
                .map(|_| (0..n).map(|_| rng.gen_range(-3..=3i64)).collect())
                .collect();
            let Ok(config) = GradingMatrix::build(&rows) else { continue };
            if is_degenerate(&config, &limits).expect("degeneracy scan").is_none() {
                members.push(config);
            }
        }
        members
    })
}

/// The limit polynomial of every battery member, computed once and shared
/// by the criteria that consume it.
pub fn battery_k() -> &'static [AsymptoticKPoly] {
    K_POLYS.get_or_init(|| {
        let limits = Limits::default();
        battery()
            .iter()
            .map(|cfg| asymptotic_k_polynomial(cfg, &limits).expect("limit polynomial"))
            .collect()
    })
}

/// Compact description of a battery member for failure messages.
pub fn describe(config: &GradingMatrix) -> String {
    format!(
        "{:?} (d={}, n={}, m={})",
        config.rows_i64(),
        config.d(),
        config.n(),
        config.lattice_index_i64()
    )
}

/// Builds an exact polynomial from integer-coefficient terms.
pub fn poly(nvars: usize, terms: &[(&[i64], i64)]) -> LaurentPoly<Rat> {
    let mut f = LaurentPoly::new(nvars);
    for (exp, c) in terms {
        f.add_term(exp.to_vec(), Rat::from_integer(Int::from(*c)));
    }
    f
}

/// A rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Row k ≥ 1 of the ascent triangle: entry i counts the permutations of
/// {1, …, k} with exactly i ascents, computed by brute force.
pub fn ascent_row(k: usize) -> Vec<Int> {
    let mut row = vec![Int::from(0); k];
    let mut items: Vec<usize> = (1..=k).collect();
    permute(&mut items, 0, &mut |perm| {
        let ascents = perm.windows(2).filter(|w| w[0] < w[1]).count();
        row[ascents] += 1;
    });
    row
}

fn permute(items: &mut Vec<usize>, start: usize, visit: &mut impl FnMut(&[usize])) {
    if start == items.len() {
        visit(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute(items, start + 1, visit);
        items.swap(start, i);
    }
}
