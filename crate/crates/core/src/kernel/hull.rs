//! Affine hulls, vertex enumeration and facet enumeration.
//!
//! Vertex enumeration is a double description pass in the coordinates of
//! the affine hull: start from a simplex containing the bounding box found by
//! LP, then cut with the inequalities in input order. Facet enumeration runs
//! the same routine on the polar of the point set around its centroid.

use num_traits::{One, Signed, Zero};

use super::bitset::BitSet;
use super::linalg::{nullspace, rref, solve, RatMatrix};
use super::lp::{lp_solve, LpResult, Sense};
use super::poly::{Constraint, HPoly, VPoly};
use super::rational::{dot, primitive_factor, scale, sub, unit_vec, zero_vec, RatVector, Rational};
use crate::error::{Error, Result};

/// Affine coordinate system `x = origin + Σ uᵢ basisᵢ` of an affine
/// subspace. Every basis vector has a one at `coords[i]` and zeros at the
/// other `coords`, so `uᵢ = x[coords[i]] − origin[coords[i]]`.
#[derive(Clone, Debug)]
pub(crate) struct Frame {
    pub origin: RatVector,
    pub basis: Vec<RatVector>,
    pub coords: Vec<usize>,
}

impl Frame {
    /// Frame of the solution set of `eqs` (which must be consistent).
    pub fn from_equations(dim: usize, eqs: &[Constraint]) -> Result<Frame> {
        let c = RatMatrix::from_rows(dim, eqs.iter().map(|r| r.coeffs.clone()).collect());
        let d: RatVector = eqs.iter().map(|r| r.rhs.clone()).collect();
        let origin = solve(&c, &d).ok_or(Error::Infeasible)?;
        // nullspace() emits one vector per free column, in column order.
        let basis = nullspace(&c);
        let (_, pivots) = rref(&c);
        let coords: Vec<usize> = (0..dim).filter(|j| !pivots.contains(j)).collect();
        debug_assert_eq!(coords.len(), basis.len());
        Ok(Frame {
            origin,
            basis,
            coords,
        })
    }

    /// Frame of the affine hull of `points` (nonempty).
    pub fn from_points(dim: usize, points: &[RatVector]) -> Frame {
        let origin = points[0].clone();
        let dirs = RatMatrix::from_rows(dim, points[1..].iter().map(|p| sub(p, &origin)).collect());
        let (r, pivots) = rref(&dirs);
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Frame {
            origin,
            basis,
            coords: pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_local(&self, x: &[Rational]) -> RatVector {
        self.coords.iter().map(|&c| &x[c] - &self.origin[c]).collect()
    }

    pub fn to_global(&self, u: &[Rational]) -> RatVector {
        let mut x = self.origin.clone();
        for (ui, b) in u.iter().zip(&self.basis) {
            super::rational::axpy(&mut x, ui, b);
        }
        x
    }

    /// `a·x ≤ b` restricted to the subspace, as `α·u ≤ β`.
    pub fn localize(&self, a: &[Rational], b: &Rational) -> (RatVector, Rational) {
        let alpha = self.basis.iter().map(|v| dot(a, v)).collect();
        (alpha, b - dot(a, &self.origin))
    }

    /// `α·u ≤ β` as a row over the ambient coordinates.
    pub fn globalize(&self, dim: usize, alpha: &[Rational], beta: &Rational) -> (RatVector, Rational) {
        let mut a = zero_vec(dim);
        let mut b = beta.clone();
        for (al, &c) in alpha.iter().zip(&self.coords) {
            a[c] = al.clone();
            b += al * &self.origin[c];
        }
        (a, b)
    }

    /// Equations cutting out the subspace, one per missing dimension.
    pub fn equations(&self, dim: usize) -> Vec<Constraint> {
        let dirs = RatMatrix::from_rows(dim, self.basis.clone());
        canonical_equations(
            dim,
            nullspace(&dirs)
                .into_iter()
                .map(|c| {
                    let rhs = dot(&c, &self.origin);
                    Constraint::new(c, rhs)
                })
                .collect(),
        )
    }
}

/// Row-reduces an equation system to an irredundant one with primitive
/// integer coefficients. The system must be consistent.
fn canonical_equations(dim: usize, eqs: Vec<Constraint>) -> Vec<Constraint> {
    let aug = RatMatrix::from_rows(
        dim + 1,
        eqs.into_iter()
            .map(|r| {
                let mut v = r.coeffs;
                v.push(r.rhs);
                v
            })
            .collect(),
    );
    let (r, pivots) = rref(&aug);
    (0..pivots.len())
        .map(|i| {
            let row = r.row(i);
            let f = primitive_factor(row);
            let row = scale(row, &f);
            Constraint::new(row[..dim].to_vec(), row[dim].clone())
        })
        .collect()
}

fn normalize_row(a: RatVector, b: Rational) -> (RatVector, Rational) {
    let mut v = a;
    v.push(b);
    let f = primitive_factor(&v);
    let mut v = scale(&v, &f);
    let b = v.pop().expect("rhs");
    (v, b)
}

/// Irredundant equation system whose solution set is the affine hull of
/// `poly`. Implicit equalities among the inequalities are detected by LP.
pub fn affine_hull(poly: &HPoly) -> Result<Vec<Constraint>> {
    poly.validate()?;
    let n = poly.dim;
    let mut implicit = vec![false; poly.ineqs.len()];
    loop {
        // max t  s.t.  a_i x + t ≤ b_i (open rows), a_i x = b_i (implicit), C x = d, t ≤ 1
        let mut lp = HPoly::new(n + 1);
        let mut open_rows = Vec::new();
        for (i, r) in poly.ineqs.iter().enumerate() {
            let mut a = r.coeffs.clone();
            if implicit[i] {
                a.push(Rational::zero());
                lp.push_eq(a, r.rhs.clone(), None);
            } else {
                a.push(Rational::one());
                open_rows.push(i);
                lp.push_ineq(a, r.rhs.clone(), None);
            }
        }
        lp.push_ineq(unit_vec(n + 1, n), Rational::one(), None);
        for r in &poly.eqs {
            let mut a = r.coeffs.clone();
            a.push(Rational::zero());
            lp.push_eq(a, r.rhs.clone(), None);
        }
        let res = lp_solve(&unit_vec(n + 1, n), Sense::Maximize, &lp)?;
        let LpResult::Optimal {
            value, ineq_duals, ..
        } = res
        else {
            return match res {
                LpResult::Infeasible { .. } => Err(Error::Infeasible),
                _ => Err(Error::invariant("bounded auxiliary LP reported unbounded")),
            };
        };
        if value.is_negative() {
            return Err(Error::Infeasible);
        }
        if value.is_positive() {
            break;
        }
        let mut found = false;
        for (k, &i) in open_rows.iter().enumerate() {
            if ineq_duals[k].is_positive() {
                implicit[i] = true;
                found = true;
            }
        }
        if !found {
            return Err(Error::invariant("no implicit equality certified at t = 0"));
        }
    }
    let mut eqs: Vec<Constraint> = poly.eqs.clone();
    for (i, r) in poly.ineqs.iter().enumerate() {
        if implicit[i] {
            eqs.push(r.clone());
        }
    }
    Ok(canonical_equations(n, eqs))
}

/// Vertex set of a nonempty bounded polyhedron, sorted lexicographically.
pub fn vertices(poly: &HPoly) -> Result<VPoly> {
    let eqs = affine_hull(poly)?;
    let n = poly.dim;
    let frame = Frame::from_equations(n, &eqs)?;
    let k = frame.dim();

    // Bounds on the local coordinates, which are ambient coordinates.
    let mut lo = Vec::with_capacity(k);
    let mut hi = Vec::with_capacity(k);
    for &c in &frame.coords {
        let e = unit_vec(n, c);
        let bound = |sense| -> Result<Rational> {
            match lp_solve(&e, sense, poly)? {
                LpResult::Optimal { value, .. } => Ok(value - &frame.origin[c]),
                LpResult::Unbounded { .. } => Err(Error::Unbounded),
                LpResult::Infeasible { .. } => Err(Error::Infeasible),
            }
        };
        lo.push(bound(Sense::Minimize)?);
        hi.push(bound(Sense::Maximize)?);
    }
    if k == 0 {
        return VPoly::new(n, vec![frame.origin.clone()]);
    }

    let rows: Vec<(RatVector, Rational)> = poly
        .ineqs
        .iter()
        .map(|r| frame.localize(&r.coeffs, &r.rhs))
        .filter(|(a, _)| !a.iter().all(Zero::is_zero))
        .collect();
    let local = double_description(k, &lo, &hi, &rows);
    let mut pts: Vec<RatVector> = local.iter().map(|u| frame.to_global(u)).collect();
    pts.sort();
    VPoly::new(n, pts)
}

struct DdVertex {
    u: RatVector,
    zeros: BitSet,
}

/// Vertices of `{u ∈ R^k : α_i·u ≤ β_i}` intersected with the box `[lo, hi]`
/// (which must contain the polytope and be full-dimensional).
fn double_description(
    k: usize,
    lo: &[Rational],
    hi: &[Rational],
    rows: &[(RatVector, Rational)],
) -> Vec<RatVector> {
    // Rows 0..k are u ≥ lo, row k is the sum bound, row k + 1 + r is rows[r].
    let total = k + 1 + rows.len();

    // Simplex { u ≥ lo, Σ(u − lo) ≤ Σ(hi − lo) } around the box.
    let width: Rational = hi.iter().zip(lo).map(|(h, l)| h - l).sum();
    let mut verts = Vec::with_capacity(k + 1);
    verts.push(DdVertex {
        u: lo.to_vec(),
        zeros: BitSet::from_indices(total, 0..k),
    });
    for i in 0..k {
        let mut u = lo.to_vec();
        u[i] += &width;
        verts.push(DdVertex {
            u,
            zeros: BitSet::from_indices(total, (0..=k).filter(|&j| j != i)),
        });
    }

    for (r, (a, b)) in rows.iter().enumerate() {
        let idx = k + 1 + r;
        let slacks: Vec<Rational> = verts.iter().map(|v| b - dot(a, &v.u)).collect();
        let neg: Vec<usize> = (0..verts.len()).filter(|&i| slacks[i].is_negative()).collect();
        for (v, s) in verts.iter_mut().zip(&slacks) {
            if s.is_zero() {
                v.zeros.insert(idx);
            }
        }
        if neg.is_empty() {
            continue;
        }
        let pos: Vec<usize> = (0..verts.len()).filter(|&i| slacks[i].is_positive()).collect();
        let mut created = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = verts[p].zeros.intersection(&verts[q].zeros);
                if common.count() + 1 < k {
                    continue;
                }
                // Combinatorial adjacency: no third vertex is tight on all
                // rows that p and q share.
                let blocked = verts
                    .iter()
                    .enumerate()
                    .any(|(r, v)| r != p && r != q && common.is_subset(&v.zeros));
                if blocked {
                    continue;
                }
                let t = &slacks[p] / (&slacks[p] - &slacks[q]);
                let dir = sub(&verts[q].u, &verts[p].u);
                let u: RatVector = verts[p].u.iter().zip(&dir).map(|(x, d)| x + &t * d).collect();
                let mut zeros = common;
                zeros.insert(idx);
                created.push(DdVertex { u, zeros });
            }
        }
        let mut keep = Vec::with_capacity(verts.len() + created.len());
        for (i, v) in verts.into_iter().enumerate() {
            if !slacks[i].is_negative() {
                keep.push(v);
            }
        }
        keep.extend(created);
        verts = keep;
    }
    verts.into_iter().map(|v| v.u).collect()
}

/// Irredundant H-description of `conv(points)`: the affine-hull equations
/// plus one inequality per facet, all with primitive integer coefficients.
pub fn hull(points: &VPoly) -> Result<HPoly> {
    if points.is_empty() {
        return Err(Error::input("hull of an empty point set"));
    }
    let n = points.dim;
    let frame = Frame::from_points(n, &points.points);
    let mut out = HPoly::new(n);
    out.eqs = frame.equations(n);
    let k = frame.dim();
    if k == 0 {
        return Ok(out);
    }
    let local: Vec<RatVector> = points.points.iter().map(|p| frame.to_local(p)).collect();
    let count = Rational::from_integer(local.len().into());
    let mut centroid = zero_vec(k);
    for u in &local {
        for (c, x) in centroid.iter_mut().zip(u) {
            *c += x;
        }
    }
    let centroid: RatVector = centroid.iter().map(|c| c / &count).collect();

    // Polar around the centroid: { a : a·(u − c) ≤ 1 for every point }.
    let mut polar = HPoly::new(k);
    for u in &local {
        polar.push_ineq(sub(u, &centroid), Rational::one(), None);
    }
    let facets = vertices(&polar)?;
    for a in &facets.points {
        let beta = Rational::one() + dot(a, &centroid);
        let (g, h) = frame.globalize(n, a, &beta);
        let (g, h) = normalize_row(g, h);
        out.push_ineq(g, h, None);
    }
    Ok(out)
}

/// Whether `x` lies in the convex hull of `points`, by LP over convex
/// multipliers.
pub fn in_hull(x: &[Rational], points: &VPoly) -> Result<bool> {
    Error::check_dim(points.dim, x.len())?;
    let m = points.len();
    let mut lp = HPoly::new(m);
    for j in 0..m {
        lp.push_nonneg(j, None);
    }
    lp.push_eq(vec![Rational::one(); m], Rational::one(), None);
    for (i, xi) in x.iter().enumerate() {
        lp.push_eq(points.points.iter().map(|p| p[i].clone()).collect(), xi.clone(), None);
    }
    Ok(super::lp::feasible_point(&lp)?.is_some())
}

/// Whether point `i` of the list is a vertex of the hull of the list.
pub fn is_vertex(points: &VPoly, i: usize) -> Result<bool> {
    let others: Vec<RatVector> = points
        .points
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, p)| p.clone())
        .collect();
    if others.is_empty() {
        return Ok(true);
    }
    let rest = VPoly::new(points.dim, others)?;
    Ok(!in_hull(&points.points[i], &rest)?)
}
