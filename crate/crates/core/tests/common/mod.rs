//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use extform::kernel::rational::{frac, int};
use extform::kernel::{HPoly, RatVector, Rational, VPoly};
use num_traits::{Signed, Zero};
use rand::Rng;

/// Normal of the hyperplane through `d` points in `R^d`, `d ≤ 3`, or zero
/// if they are affinely dependent.
fn normal(pts: &[&RatVector]) -> RatVector {
    let d = pts[0].len();
    let diff = |k: usize, i: usize| &pts[k][i] - &pts[0][i];
    match d {
        1 => vec![int(1)],
        2 => vec![-diff(1, 1), diff(1, 0)],
        3 => {
            let (u, v) = ((diff(1, 0), diff(1, 1), diff(1, 2)), (diff(2, 0), diff(2, 1), diff(2, 2)));
            vec![
                &u.1 * &v.2 - &u.2 * &v.1,
                &u.2 * &v.0 - &u.0 * &v.2,
                &u.0 * &v.1 - &u.1 * &v.0,
            ]
        }
        _ => panic!("oracle handles d ≤ 3"),
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Scales so the first nonzero entry has absolute value one.
fn normalize(a: RatVector, b: Rational) -> (RatVector, Rational) {
    let s = a.iter().find(|x| !x.is_zero()).unwrap().abs();
    (a.iter().map(|x| x / &s).collect(), b / s)
}

/// Facets of a full-dimensional point set in `R^d`, `d ≤ 3`: every
/// hyperplane through `d` affinely independent points with all points on
/// one side.
pub fn brute_force_facets(points: &[RatVector]) -> HPoly {
    let d = points[0].len();
    let mut rows: Vec<(RatVector, Rational)> = Vec::new();
    let n = points.len();
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let pts: Vec<&RatVector> = idx.iter().map(|&i| &points[i]).collect();
        let a = normal(&pts);
        if a.iter().any(|x| !x.is_zero()) {
            let b = dot(&a, pts[0]);
            let vals: Vec<Rational> = points.iter().map(|p| dot(&a, p)).collect();
            let cand = if vals.iter().all(|v| v <= &b) {
                Some((a, b))
            } else if vals.iter().all(|v| v >= &b) {
                Some((a.iter().map(|x| -x).collect(), -b))
            } else {
                None
            };
            if let Some((a, b)) = cand {
                let r = normalize(a, b);
                if !rows.contains(&r) {
                    rows.push(r);
                }
            }
        }
        // Next d-subset in lexicographic order.
        let Some(k) = (0..d).rev().find(|&k| idx[k] < n - d + k) else {
            break;
        };
        idx[k] += 1;
        for j in k + 1..d {
            idx[j] = idx[j - 1] + 1;
        }
    }
    let mut h = HPoly::new(d);
    for (a, b) in rows {
        h.push_ineq(a, b, None);
    }
    h
}

/// Rank of the differences `p_k − p_0` by plain elimination.
pub fn affine_rank(points: &[RatVector]) -> usize {
    let Some(p0) = points.first() else {
        return 0;
    };
    let mut rows: Vec<RatVector> = points[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    let cols = p0.len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &rows[rank][c];
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    frac(rng.gen_range(-6..=6), rng.gen_range(1..=3))
}

/// `m` distinct random points spanning `R^d`.
pub fn random_full_dim_points(rng: &mut impl Rng, d: usize, m: usize) -> Vec<RatVector> {
    loop {
        let mut pts: Vec<RatVector> = Vec::new();
        while pts.len() < m {
            let p: RatVector = (0..d).map(|_| random_rational(rng)).collect();
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        if affine_rank(&pts) == d {
            return pts;
        }
    }
}

/// Feasible 0/1 packings by enumeration of all subsets.
pub fn brute_force_packings(w: &[u64], cap: u64) -> VPoly {
    let n = w.len();
    let points = (0u32..1 << n)
        .filter(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| w[i]).sum::<u64>() <= cap)
        .map(|mask| (0..n).map(|i| int((mask >> i & 1) as i64)).collect())
        .collect();
    VPoly::new(n, points).unwrap()
}

/// Arc count of the knapsack network from subset enumeration: a node
/// `(i, ω)` for every packing with last item `i` and weight `ω`, an arc into
/// it from `s` or from `(j, ω − w_i)`, `j < i`, and one arc to `t` per node
/// including `s`.
pub fn brute_force_arc_count(w: &[u64], cap: u64) -> usize {
    let n = w.len();
    let mut nodes = std::collections::BTreeSet::new();
    for mask in 1u32..1 << n {
        let items: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let weight: u64 = items.iter().map(|&i| w[i]).sum();
        if weight <= cap {
            nodes.insert((*items.last().unwrap(), weight));
        }
    }
    let inner = nodes
        .iter()
        .map(|&(i, om)| {
            let from_source = usize::from(om == w[i]);
            let from_items = nodes
                .iter()
                .filter(|&&(j, v)| j < i && v + w[i] == om)
                .count();
            from_source + from_items
        })
        .sum::<usize>();
    inner + nodes.len() + 1
}
