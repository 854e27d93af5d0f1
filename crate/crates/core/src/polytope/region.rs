//! Box-slab regions attached to the block decomposition: for a transformed
//! point u, R(u) = {p ∈ [0, m]^(n−d) : m(u_i − 1) ≤ b_i·p ≤ m·u_i} with b_i
//! the i-th row of B′. Volumes are normalized against Z^(n−d).

use super::vertices::enumerate_vertices;
use super::volume::normalized_volume;
use super::dot_i64_rat;
use crate::intlat::{GaleBlocks, GradingMatrix};
use crate::{Error, Limits, Rat, Result};
use num_traits::{FromPrimitive, ToPrimitive, Zero};

fn b_prime_rows(blocks: &GaleBlocks) -> Vec<Vec<i64>> {
    (0..blocks.b_prime.rows())
        .map(|i| {
            blocks
                .b_prime
                .row(i)
                .iter()
                .map(|v| v.to_i64().expect("block entry fits i64"))
                .collect()
        })
        .collect()
}

/// Inequalities of the partial region after fixing the first `depth` slabs.
fn region_ineqs(
    rows: &[Vec<i64>],
    m: i64,
    u: &[i64],
    depth: usize,
    k: usize,
) -> Vec<(Vec<i64>, i64)> {
    let mut ineqs = Vec::with_capacity(2 * k + 2 * depth);
    for j in 0..k {
        let mut e = vec![0; k];
        e[j] = 1;
        ineqs.push((e.clone(), m));
        e[j] = -1;
        ineqs.push((e, 0));
    }
    for i in 0..depth {
        ineqs.push((rows[i].clone(), m * u[i]));
        ineqs.push((rows[i].iter().map(|&v| -v).collect(), -(m * (u[i] - 1))));
    }
    ineqs
}

/// Normalized volume of the region over a transformed point u (length d).
pub fn region_volume(config: &GradingMatrix, blocks: &GaleBlocks, u: &[i64]) -> Rat {
    let d = config.d();
    let k = config.n() - d;
    assert_eq!(u.len(), d);
    let m = config.lattice_index_i64();
    let rows = b_prime_rows(blocks);
    let ineqs = region_ineqs(&rows, m, u, d, k);
    let verts = enumerate_vertices(&ineqs, k);
    normalized_volume(&verts, &ineqs, k)
}

/// Every region with positive volume, found by scanning slab prefixes.
#[derive(Debug, Clone)]
pub struct RegionSupport {
    /// (transformed point, volume), lexicographic in the point.
    pub regions: Vec<(Vec<i64>, Rat)>,
    /// Sum of the volumes.
    pub total: Rat,
    /// The box identity target m^(n−d)·(n−d)!.
    pub expected_total: Rat,
    /// Rows of B′ that vanish identically; such rows make neighboring
    /// regions coincide, so the total double-counts.
    pub zero_rows: Vec<usize>,
}

/// Enumerates all u with positive region volume. Each prefix (u_1, …, u_i)
/// is explored only when its partial region is nonempty, and the range of
/// the next slab functional is read off the partial region's vertices.
pub fn region_support(
    config: &GradingMatrix,
    blocks: &GaleBlocks,
    limits: &Limits,
) -> Result<RegionSupport> {
    let d = config.d();
    let k = config.n() - d;
    let m = config.lattice_index_i64();
    let rows = b_prime_rows(blocks);
    let mut regions: Vec<(Vec<i64>, Rat)> = Vec::new();
    let mut prefix: Vec<i64> = Vec::new();
    descend(&rows, m, d, k, &mut prefix, &mut regions, limits)?;
    regions.sort_by(|a, b| a.0.cmp(&b.0));
    let total: Rat = regions.iter().map(|(_, v)| v.clone()).sum();
    let mut expected_total = Rat::from_i64((1..=k as i64).product()).unwrap();
    for _ in 0..k {
        expected_total *= Rat::from_i64(m).unwrap();
    }
    let zero_rows = (0..d).filter(|&i| rows[i].iter().all(|&v| v == 0)).collect();
    Ok(RegionSupport { regions, total, expected_total, zero_rows })
}

fn descend(
    rows: &[Vec<i64>],
    m: i64,
    d: usize,
    k: usize,
    prefix: &mut Vec<i64>,
    regions: &mut Vec<(Vec<i64>, Rat)>,
    limits: &Limits,
) -> Result<()> {
    let depth = prefix.len();
    let ineqs = region_ineqs(rows, m, prefix, depth, k);
    let verts = enumerate_vertices(&ineqs, k);
    if verts.is_empty() {
        return Ok(());
    }
    if depth == d {
        let vol = normalized_volume(&verts, &ineqs, k);
        if !vol.is_zero() {
            if regions.len() as u128 >= limits.term_cap {
                return Err(Error::SizeLimit {
                    what: "positive regions",
                    needed: regions.len() as u128 + 1,
                    cap: limits.term_cap,
                });
            }
            regions.push((prefix.clone(), vol));
        }
        return Ok(());
    }
    // The image of the partial region under p ↦ b·p is the exact interval
    // between the extreme vertex values.
    let values: Vec<Rat> = verts.iter().map(|v| dot_i64_rat(&rows[depth], v)).collect();
    let lo = values.iter().min().cloned().expect("nonempty");
    let hi = values.iter().max().cloned().expect("nonempty");
    let m_rat = Rat::from_i64(m).unwrap();
    let u_min = (lo / &m_rat).ceil().to_integer();
    let u_max = (hi / &m_rat).floor().to_integer() + 1;
    let mut u = u_min;
    while u <= u_max {
        prefix.push(u.to_i64().expect("slab index fits i64"));
        descend(rows, m, d, k, prefix, regions, limits)?;
        prefix.pop();
        u += crate::Int::from(1);
    }
    Ok(())
}
