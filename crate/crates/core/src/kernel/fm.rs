//! Fourier-Motzkin projection onto a subset of coordinates.

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};

use super::lp::feasible_point;
use super::poly::{Constraint, HPoly};
use super::rational::{axpy, primitive_factor, scale, unit_vec, RatVector, Rational};
use super::redundancy::remove_redundancy;
use crate::error::{Error, Result};

/// Projection of `poly` onto the coordinates `keep`, in the order given.
///
/// Equations are used first to substitute eliminated variables away. The
/// remaining variables go one at a time, cheapest pairing first, and rows
/// that LP proves redundant are dropped after every step. An empty input
/// yields the empty polyhedron `{0 ≤ −1}`.
pub fn fm_project(poly: &HPoly, keep: &[usize]) -> Result<HPoly> {
    poly.validate()?;
    let n = poly.dim;
    let mut seen = HashSet::new();
    for &k in keep {
        if k >= n || !seen.insert(k) {
            return Err(Error::input(format!("bad coordinate {k} in projection set")));
        }
    }
    let out_dim = keep.len();
    if feasible_point(poly)?.is_none() {
        let mut empty = HPoly::new(out_dim);
        empty.push_ineq(vec![Rational::zero(); out_dim], -Rational::one(), None);
        return Ok(empty);
    }

    let mut eliminate: Vec<usize> = (0..n).filter(|j| !seen.contains(j)).collect();
    let mut ineqs: Vec<(RatVector, Rational)> =
        poly.ineqs.iter().map(|r| (r.coeffs.clone(), r.rhs.clone())).collect();
    let mut eqs: Vec<(RatVector, Rational)> =
        poly.eqs.iter().map(|r| (r.coeffs.clone(), r.rhs.clone())).collect();

    // Substitution through equations.
    while let Some((e, j)) = eqs.iter().enumerate().find_map(|(e, (a, _))| {
        eliminate.iter().find(|&&j| !a[j].is_zero()).map(|&j| (e, j))
    }) {
        let (a, b) = eqs.swap_remove(e);
        let pivot = a[j].clone();
        let sub = |rows: &mut Vec<(RatVector, Rational)>| {
            for (c, d) in rows.iter_mut() {
                if c[j].is_zero() {
                    continue;
                }
                let f = -(&c[j] / &pivot);
                axpy(c, &f, &a);
                *d += &f * &b;
            }
        };
        sub(&mut ineqs);
        sub(&mut eqs);
        eliminate.retain(|&x| x != j);
    }

    while !eliminate.is_empty() {
        let cost = |j: usize| {
            let pos = ineqs.iter().filter(|(a, _)| a[j].is_positive()).count();
            let neg = ineqs.iter().filter(|(a, _)| a[j].is_negative()).count();
            pos * neg
        };
        let (slot, &j) = eliminate
            .iter()
            .enumerate()
            .min_by_key(|&(_, &j)| (cost(j), j))
            .expect("nonempty");
        eliminate.remove(slot);

        let mut next = Vec::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for (a, b) in ineqs {
            if a[j].is_positive() {
                pos.push((a, b));
            } else if a[j].is_negative() {
                neg.push((a, b));
            } else {
                next.push((a, b));
            }
        }
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                // (−an_j)·(ap, bp) + ap_j·(an, bn) cancels coordinate j.
                let fp = -an[j].clone();
                let fn_ = ap[j].clone();
                let mut c = scale(ap, &fp);
                axpy(&mut c, &fn_, an);
                let d = &fp * bp + &fn_ * bn;
                next.push((c, d));
            }
        }
        ineqs = prune(n, next, &eqs)?;
    }

    let restrict = |a: &RatVector| -> RatVector { keep.iter().map(|&k| a[k].clone()).collect() };
    let mut out = HPoly::new(out_dim);
    for (a, b) in &ineqs {
        out.push_ineq(restrict(a), b.clone(), None);
    }
    for (a, b) in &eqs {
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        out.push_eq(restrict(a), b.clone(), None);
    }
    Ok(out)
}

/// Normalizes rows, drops trivial and duplicate ones, then removes rows that
/// LP certifies as redundant.
fn prune(
    n: usize,
    rows: Vec<(RatVector, Rational)>,
    eqs: &[(RatVector, Rational)],
) -> Result<Vec<(RatVector, Rational)>> {
    let mut seen = HashSet::new();
    let mut poly = HPoly::new(n);
    for (a, b) in rows {
        if a.iter().all(Zero::is_zero) {
            if b.is_negative() {
                return Err(Error::invariant("feasible system produced 0 ≤ negative"));
            }
            continue;
        }
        let mut v = a;
        v.push(b);
        let v = scale(&v, &primitive_factor(&v));
        if seen.insert(v.clone()) {
            let mut a = v;
            let b = a.pop().expect("rhs");
            poly.ineqs.push(Constraint::new(a, b));
        }
    }
    for (a, b) in eqs {
        poly.eqs.push(Constraint::new(a.clone(), b.clone()));
    }
    let pruned = remove_redundancy(&poly)?;
    Ok(pruned.ineqs.into_iter().map(|r| (r.coeffs, r.rhs)).collect())
}

/// Coordinate projection of the polyhedron `poly` under an affine map:
/// `{T y + t : y ∈ poly}`, computed by adding `x = T y + t` and eliminating
/// `y`.
pub fn fm_image(poly: &HPoly, map: &super::poly::AffineMap) -> Result<HPoly> {
    Error::check_dim(map.source_dim(), poly.dim)?;
    let d = poly.dim;
    let n = map.target_dim();
    let mut lifted = poly.embed(d + n, 0);
    for i in 0..n {
        let mut a: RatVector = map.matrix.row(i).to_vec();
        a.extend(scale(&unit_vec(n, i), &-Rational::one()));
        lifted.push_eq(a, -map.offset[i].clone(), None);
    }
    let keep: Vec<usize> = (d..d + n).collect();
    fm_project(&lifted, &keep)
}
