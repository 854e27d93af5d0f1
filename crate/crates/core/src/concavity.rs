//! Exact concavity testers for finitely supported coefficient functions on
//! the exponent lattice: log-concavity along lattice segments and
//! quasi-concavity via superlevel-set hulls. All tests run on the lattice
//! points of the support's convex hull, with the coefficient function
//! extended by zero, so gaps inside the hull count as genuine violations.
//! Every inequality is decided in cross-multiplied big-integer form.

use crate::laurent::LaurentPoly;
use crate::lp::point_in_hull;
use crate::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Outcome of a concavity test; `witness` is present exactly when it fails.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcavityVerdict {
    pub holds: bool,
    pub witness: Option<ConcavityWitness>,
}

/// A re-checkable violation certificate.
#[derive(Debug, Clone, PartialEq)]
pub enum ConcavityWitness {
    /// g at `point` = ((q−a)·left + a·right)/q breaks the segment
    /// inequality; `lhs < rhs` in cross-multiplied integer form.
    Segment {
        left: Vec<i64>,
        right: Vec<i64>,
        point: Vec<i64>,
        weight: (i64, i64),
        lhs: Int,
        rhs: Int,
    },
    /// `point` lies in the hull of {g ≥ level} but carries a smaller value.
    Superlevel { level: Rat, point: Vec<i64>, value: Rat },
}

impl ConcavityVerdict {
    fn pass() -> Self {
        ConcavityVerdict { holds: true, witness: None }
    }

    fn fail(witness: ConcavityWitness) -> Self {
        ConcavityVerdict { holds: false, witness: Some(witness) }
    }
}

/// Exact hull-membership tester over an integer point set. Dimensions one
/// and two get closed-form integer tests; higher dimensions screen with
/// valid inequalities (direction bounds over a small direction family plus
/// the points themselves) before falling back to one exact feasibility
/// check per surviving query.
enum HullTester {
    Origin,
    Interval {
        lo: i64,
        hi: i64,
    },
    Planar {
        hull: Vec<Vec<i64>>,
    },
    General {
        members: BTreeSet<Vec<i64>>,
        dirs: Vec<Vec<i64>>,
        bounds: Vec<(i64, i64)>,
        rat_points: Vec<Vec<Rat>>,
    },
}

impl HullTester {
    fn new(points: &[Vec<i64>]) -> Self {
        let dim = points[0].len();
        match dim {
            0 => HullTester::Origin,
            1 => HullTester::Interval {
                lo: points.iter().map(|p| p[0]).min().unwrap(),
                hi: points.iter().map(|p| p[0]).max().unwrap(),
            },
            2 => HullTester::Planar { hull: planar_hull(points) },
            _ => {
                let dirs = screen_directions(dim);
                let bounds = dirs
                    .iter()
                    .map(|dir| {
                        let dots = points.iter().map(|p| dot(dir, p));
                        (dots.clone().min().unwrap(), dots.max().unwrap())
                    })
                    .collect();
                HullTester::General {
                    members: points.iter().cloned().collect(),
                    dirs,
                    bounds,
                    rat_points: points
                        .iter()
                        .map(|p| p.iter().map(|&c| Rat::from(Int::from(c))).collect())
                        .collect(),
                }
            }
        }
    }

    fn contains(&self, w: &[i64]) -> bool {
        match self {
            HullTester::Origin => true,
            HullTester::Interval { lo, hi } => *lo <= w[0] && w[0] <= *hi,
            HullTester::Planar { hull } => planar_contains(hull, w),
            HullTester::General { members, dirs, bounds, rat_points } => {
                for (dir, (lo, hi)) in dirs.iter().zip(bounds) {
                    let value = dot(dir, w);
                    if value < *lo || value > *hi {
                        return false;
                    }
                }
                if members.contains(w) {
                    return true;
                }
                let q: Vec<Rat> = w.iter().map(|&c| Rat::from(Int::from(c))).collect();
                point_in_hull(rat_points, &q)
            }
        }
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// One representative per antipodal pair of nonzero directions with entries
/// in {−1, 0, 1}, used as screening functionals in dimension ≥ 3.
fn screen_directions(dim: usize) -> Vec<Vec<i64>> {
    let mut dirs = Vec::new();
    let mut v = vec![-1i64; dim];
    'odometer: loop {
        if v.iter().find(|&&c| c != 0) == Some(&1) {
            dirs.push(v.clone());
        }
        for i in (0..dim).rev() {
            if v[i] < 1 {
                v[i] += 1;
                continue 'odometer;
            }
            v[i] = -1;
        }
        return dirs;
    }
}

fn cross(o: &[i64], a: &[i64], b: &[i64]) -> i128 {
    let (ax, ay) = ((a[0] - o[0]) as i128, (a[1] - o[1]) as i128);
    let (bx, by) = ((b[0] - o[0]) as i128, (b[1] - o[1]) as i128);
    ax * by - ay * bx
}

/// Strict counterclockwise hull of a planar integer point set (monotone
/// chain); collinear sets collapse to their two endpoints.
fn planar_hull(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut pts: Vec<Vec<i64>> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let chain = |iter: &mut dyn Iterator<Item = &Vec<i64>>| {
        let mut half: Vec<Vec<i64>> = Vec::new();
        for p in iter {
            while half.len() >= 2
                && cross(&half[half.len() - 2], &half[half.len() - 1], p) <= 0
            {
                half.pop();
            }
            half.push(p.clone());
        }
        half.pop();
        half
    };
    let lower = chain(&mut pts.iter());
    let upper = chain(&mut pts.iter().rev());
    let mut hull = lower;
    hull.extend(upper);
    if hull.is_empty() {
        // All points collinear: the chains collapse; keep the endpoints.
        return vec![pts[0].clone(), pts[pts.len() - 1].clone()];
    }
    hull
}

fn planar_contains(hull: &[Vec<i64>], w: &[i64]) -> bool {
    match hull.len() {
        0 => false,
        1 => hull[0] == w,
        2 => {
            let (a, b) = (&hull[0], &hull[1]);
            if cross(a, b, w) != 0 {
                return false;
            }
            let d = [b[0] - a[0], b[1] - a[1]];
            let t = dot(&d, &[w[0] - a[0], w[1] - a[1]]);
            0 <= t && t <= dot(&d, &d)
        }
        len => (0..len).all(|i| cross(&hull[i], &hull[(i + 1) % len], w) >= 0),
    }
}

/// Lattice points of the convex hull of an integer point set, in
/// lexicographic order (bounding box sweep + exact membership test).
pub fn hull_lattice_points(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if points.is_empty() {
        return Vec::new();
    }
    let dim = points[0].len();
    if dim == 0 {
        return vec![Vec::new()];
    }
    let lo: Vec<i64> =
        (0..dim).map(|i| points.iter().map(|p| p[i]).min().unwrap()).collect();
    let hi: Vec<i64> =
        (0..dim).map(|i| points.iter().map(|p| p[i]).max().unwrap()).collect();
    let tester = HullTester::new(points);
    let mut found = Vec::new();
    let mut w = lo.clone();
    'sweep: loop {
        if tester.contains(&w) {
            found.push(w.clone());
        }
        for i in (0..dim).rev() {
            if w[i] < hi[i] {
                w[i] += 1;
                continue 'sweep;
            }
            w[i] = lo[i];
        }
        break;
    }
    found
}

fn coefficient_map(f: &LaurentPoly<Rat>) -> BTreeMap<Vec<i64>, Rat> {
    f.terms().map(|(e, c)| (e.clone(), c.clone())).collect()
}

fn value_at(g: &BTreeMap<Vec<i64>, Rat>, w: &[i64]) -> Rat {
    g.get(w).cloned().unwrap_or_else(Rat::zero)
}

fn rat_pow(x: &Rat, e: i64) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// The two sides of `lhs ≥ rhs` cross-multiplied to integers.
fn cross_multiplied(lhs: &Rat, rhs: &Rat) -> (Int, Int) {
    (lhs.numer() * rhs.denom(), rhs.numer() * lhs.denom())
}

/// Walks every lattice segment between hull lattice points in lexicographic
/// pair order, calling `check` on each strictly interior lattice point with
/// its reduced barycentric weight a/q.
fn first_segment_witness<F>(domain: &[Vec<i64>], mut check: F) -> Option<ConcavityWitness>
where
    F: FnMut(&[i64], &[i64], &[i64], i64, i64) -> Option<(Int, Int)>,
{
    for i in 0..domain.len() {
        for j in i + 1..domain.len() {
            let (u, v) = (&domain[i], &domain[j]);
            let delta: Vec<i64> = v.iter().zip(u).map(|(b, a)| b - a).collect();
            let span = delta.iter().fold(0i64, |acc, &c| acc.gcd(&c));
            for k in 1..span {
                let w: Vec<i64> =
                    u.iter().zip(&delta).map(|(a, dc)| a + dc * k / span).collect();
                let g = k.gcd(&span);
                let (a, q) = (k / g, span / g);
                if let Some((lhs, rhs)) = check(u, v, &w, a, q) {
                    return Some(ConcavityWitness::Segment {
                        left: u.clone(),
                        right: v.clone(),
                        point: w,
                        weight: (a, q),
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    None
}

/// Tests g(w)^q ≥ g(u)^{q−a}·g(v)^a for every lattice point
/// w = ((q−a)u + av)/q strictly between hull lattice points u and v.
pub fn is_log_concave(f: &LaurentPoly<Rat>) -> ConcavityVerdict {
    let g = coefficient_map(f);
    if g.is_empty() {
        return ConcavityVerdict::pass();
    }
    let domain = hull_lattice_points(&f.support());
    let witness = first_segment_witness(&domain, |u, v, w, a, q| {
        let lhs = rat_pow(&value_at(&g, w), q);
        let rhs = rat_pow(&value_at(&g, u), q - a) * rat_pow(&value_at(&g, v), a);
        if lhs < rhs {
            Some(cross_multiplied(&lhs, &rhs))
        } else {
            None
        }
    });
    match witness {
        Some(w) => ConcavityVerdict::fail(w),
        None => ConcavityVerdict::pass(),
    }
}

/// Tests that every superlevel set {u : g(u) ≥ e} at an attained positive
/// value e contains all lattice points of its convex hull. A segment
/// pre-pass (g(w) ≥ min(g(u), g(v))) catches most violations cheaply; the
/// hull pass then decides membership with one exact feasibility check per
/// candidate point, at the smallest attained level above its value.
pub fn is_quasi_concave(f: &LaurentPoly<Rat>) -> ConcavityVerdict {
    let g = coefficient_map(f);
    if g.is_empty() {
        return ConcavityVerdict::pass();
    }
    let domain = hull_lattice_points(&f.support());
    let witness = first_segment_witness(&domain, |u, v, w, _, _| {
        let lhs = value_at(&g, w);
        let rhs = value_at(&g, u).min(value_at(&g, v));
        if lhs < rhs {
            Some(cross_multiplied(&lhs, &rhs))
        } else {
            None
        }
    });
    if let Some(w) = witness {
        return ConcavityVerdict::fail(w);
    }
    let mut levels: Vec<Rat> = g.values().filter(|c| c.is_positive()).cloned().collect();
    levels.sort();
    levels.dedup();
    let mut testers: Vec<Option<HullTester>> = levels.iter().map(|_| None).collect();
    for w in &domain {
        let value = value_at(&g, w);
        // Membership is monotone: if w sits in any higher superlevel hull,
        // it sits in the hull at the smallest level exceeding its value.
        let Some(idx) = levels.iter().position(|e| *e > value) else {
            continue;
        };
        let tester = testers[idx].get_or_insert_with(|| {
            let points: Vec<Vec<i64>> = g
                .iter()
                .filter(|(_, c)| **c >= levels[idx])
                .map(|(p, _)| p.clone())
                .collect();
            HullTester::new(&points)
        });
        if tester.contains(w) {
            return ConcavityVerdict::fail(ConcavityWitness::Superlevel {
                level: levels[idx].clone(),
                point: w.clone(),
                value,
            });
        }
    }
    ConcavityVerdict::pass()
}
