//! LP-certified redundancy removal and exact polytope comparison.

use num_traits::Signed;

use super::hull::{in_hull, vertices};
use super::lp::{feasible_point, lp_solve, LpResult, Sense};
use super::poly::{Constraint, HPoly, VPoly};
use super::rational::{dot, RatVector, Rational};
use crate::error::{Error, Result};

/// Drops inequalities implied by the others, lowest index first. Each
/// removal is certified by an LP whose optimum stays within the row's bound.
pub fn remove_redundancy(poly: &HPoly) -> Result<HPoly> {
    poly.validate()?;
    if feasible_point(poly)?.is_none() {
        return Err(Error::Infeasible);
    }
    let mut keep = vec![true; poly.ineqs.len()];
    for i in 0..poly.ineqs.len() {
        let mut rest = HPoly::new(poly.dim);
        rest.eqs = poly.eqs.clone();
        rest.ineqs = poly
            .ineqs
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i && keep[j])
            .map(|(_, r)| r.clone())
            .collect();
        let row = &poly.ineqs[i];
        if let LpResult::Optimal { value, .. } = lp_solve(&row.coeffs, Sense::Maximize, &rest)? {
            if value <= row.rhs {
                keep[i] = false;
            }
        }
    }
    let mut out = poly.clone();
    out.ineqs = poly
        .ineqs
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(r, _)| r.clone())
        .collect();
    Ok(out)
}

/// Either description of a polytope.
#[derive(Clone, Copy, Debug)]
pub enum Polytope<'a> {
    H(&'a HPoly),
    V(&'a VPoly),
}

impl Polytope<'_> {
    pub fn dim(&self) -> usize {
        match self {
            Polytope::H(h) => h.dim,
            Polytope::V(v) => v.dim,
        }
    }
}

impl<'a> From<&'a HPoly> for Polytope<'a> {
    fn from(h: &'a HPoly) -> Self {
        Polytope::H(h)
    }
}

impl<'a> From<&'a VPoly> for Polytope<'a> {
    fn from(v: &'a VPoly) -> Self {
        Polytope::V(v)
    }
}

/// Which operand a witness point belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    OnlyFirst,
    OnlySecond,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub equal: bool,
    /// On failure, a point in exactly one of the two sets.
    pub witness: Option<(RatVector, Side)>,
}

impl Comparison {
    fn equal() -> Self {
        Comparison {
            equal: true,
            witness: None,
        }
    }

    fn differ(point: RatVector, side: Side) -> Self {
        Comparison {
            equal: false,
            witness: Some((point, side)),
        }
    }
}

/// Exact set equality of two polyhedra given in either representation.
pub fn poly_equal<'a, 'b>(
    first: impl Into<Polytope<'a>>,
    second: impl Into<Polytope<'b>>,
) -> Result<Comparison> {
    let (first, second) = (first.into(), second.into());
    Error::check_dim(first.dim(), second.dim())?;
    let flip = |c: Comparison| Comparison {
        equal: c.equal,
        witness: c.witness.map(|(p, s)| {
            (
                p,
                match s {
                    Side::OnlyFirst => Side::OnlySecond,
                    Side::OnlySecond => Side::OnlyFirst,
                },
            )
        }),
    };
    match (first, second) {
        (Polytope::H(a), Polytope::H(b)) => {
            let c = h_subset(b, a)?;
            if !c.equal {
                return Ok(flip(c));
            }
            h_subset(a, b)
        }
        (Polytope::V(a), Polytope::V(b)) => {
            for p in &a.points {
                if !in_hull(p, b)? {
                    return Ok(Comparison::differ(p.clone(), Side::OnlyFirst));
                }
            }
            for p in &b.points {
                if !in_hull(p, a)? {
                    return Ok(Comparison::differ(p.clone(), Side::OnlySecond));
                }
            }
            Ok(Comparison::equal())
        }
        (Polytope::H(h), Polytope::V(v)) => h_vs_v(h, v),
        (Polytope::V(v), Polytope::H(h)) => h_vs_v(h, v).map(flip),
    }
}

/// Checks `inner ⊆ outer`; the witness (if any) lies in `inner` only and is
/// reported as `OnlyFirst`.
fn h_subset(inner: &HPoly, outer: &HPoly) -> Result<Comparison> {
    let Some(start) = feasible_point(inner)? else {
        return Ok(Comparison::equal());
    };
    let check = |a: &[Rational], b: &Rational| -> Result<Option<RatVector>> {
        Ok(match lp_solve(a, Sense::Maximize, inner)? {
            LpResult::Optimal { value, point, .. } => (value > *b).then_some(point),
            LpResult::Unbounded { point, ray } => Some(escape_along_ray(&point, &ray, a, b)),
            LpResult::Infeasible { .. } => Some(start.clone()),
        })
    };
    for r in &outer.ineqs {
        if let Some(p) = check(&r.coeffs, &r.rhs)? {
            return Ok(Comparison::differ(p, Side::OnlyFirst));
        }
    }
    for r in &outer.eqs {
        if let Some(p) = check(&r.coeffs, &r.rhs)? {
            return Ok(Comparison::differ(p, Side::OnlyFirst));
        }
        let neg: RatVector = r.coeffs.iter().map(|x| -x.clone()).collect();
        if let Some(p) = check(&neg, &-r.rhs.clone())? {
            return Ok(Comparison::differ(p, Side::OnlyFirst));
        }
    }
    Ok(Comparison::equal())
}

/// A point `point + t·ray` with `a·x > b`, for a ray with `a·ray > 0`.
fn escape_along_ray(point: &[Rational], ray: &[Rational], a: &[Rational], b: &Rational) -> RatVector {
    let gain = dot(a, ray);
    let gap = b - dot(a, point);
    let t = if gap.is_negative() {
        Rational::from_integer(0.into())
    } else {
        (gap / gain).floor() + Rational::from_integer(1.into())
    };
    point.iter().zip(ray).map(|(p, r)| p + &t * r).collect()
}

fn h_vs_v(h: &HPoly, v: &VPoly) -> Result<Comparison> {
    for p in &v.points {
        if !h.contains(p) {
            return Ok(Comparison::differ(p.clone(), Side::OnlySecond));
        }
    }
    let verts = match vertices(h) {
        Ok(verts) => verts,
        Err(Error::Infeasible) => {
            return Ok(match v.points.first() {
                Some(p) => Comparison::differ(p.clone(), Side::OnlySecond),
                None => Comparison::equal(),
            })
        }
        Err(Error::Unbounded) => {
            // Some coordinate direction is unbounded; walk far enough that
            // the point leaves the bounding box of the listed points.
            return unbounded_witness(h, v);
        }
        Err(e) => return Err(e),
    };
    for p in &verts.points {
        if v.is_empty() || !in_hull(p, v)? {
            return Ok(Comparison::differ(p.clone(), Side::OnlyFirst));
        }
    }
    Ok(Comparison::equal())
}

fn unbounded_witness(h: &HPoly, v: &VPoly) -> Result<Comparison> {
    for j in 0..h.dim {
        for sign in [1i64, -1] {
            let mut a = vec![Rational::from_integer(0.into()); h.dim];
            a[j] = Rational::from_integer(sign.into());
            if let LpResult::Unbounded { point, ray } = lp_solve(&a, Sense::Maximize, h)? {
                let bound = v
                    .points
                    .iter()
                    .map(|p| dot(&a, p))
                    .max()
                    .unwrap_or_else(|| dot(&a, &point));
                return Ok(Comparison::differ(
                    escape_along_ray(&point, &ray, &a, &bound),
                    Side::OnlyFirst,
                ));
            }
        }
    }
    Err(Error::invariant("unbounded polyhedron without an unbounded coordinate"))
}

/// Rows of `poly` as `(coeffs, rhs)` with equations split into two
/// inequalities. Handy for facet-wise checks.
pub fn as_inequalities(poly: &HPoly) -> Vec<Constraint> {
    let mut out = poly.ineqs.clone();
    for r in &poly.eqs {
        out.push(r.clone());
        out.push(Constraint {
            coeffs: r.coeffs.iter().map(|x| -x.clone()).collect(),
            rhs: -r.rhs.clone(),
            label: r.label.clone(),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::hull::hull;
    use crate::kernel::rational::{int, unit_vec, vec_from_ints};

    #[test]
    fn duplicate_bound_removed() {
        let mut p = HPoly::new(1);
        p.push_ineq(vec_from_ints(&[1]), int(1), None);
        p.push_ineq(vec_from_ints(&[1]), int(2), None);
        p.push_nonneg(0, None);
        let r = remove_redundancy(&p).unwrap();
        assert_eq!(r.ineqs.len(), 2);
        assert_eq!(r.ineqs[0].rhs, int(1));
    }

    #[test]
    fn redundancy_on_empty_is_error() {
        let mut p = HPoly::new(1);
        p.push_ineq(vec_from_ints(&[1]), int(-1), None);
        p.push_nonneg(0, None);
        assert_eq!(remove_redundancy(&p), Err(Error::Infeasible));
    }

    #[test]
    fn square_versus_diamond() {
        let mut sq = HPoly::new(2);
        for i in 0..2 {
            sq.push_ineq(unit_vec(2, i), int(1), None);
            sq.push_ineq(crate::kernel::rational::scale(&unit_vec(2, i), &int(-1)), int(1), None);
        }
        let diamond = VPoly::new(
            2,
            vec![
                vec_from_ints(&[1, 0]),
                vec_from_ints(&[-1, 0]),
                vec_from_ints(&[0, 1]),
                vec_from_ints(&[0, -1]),
            ],
        )
        .unwrap();
        let cmp = poly_equal(&sq, &diamond).unwrap();
        assert!(!cmp.equal);
        let (w, side) = cmp.witness.unwrap();
        assert_eq!(side, Side::OnlyFirst);
        assert!(sq.contains(&w));
        assert!(!in_hull(&w, &diamond).unwrap());
        // Same comparison through the H-representation of the diamond.
        let dh = hull(&diamond).unwrap();
        let cmp = poly_equal(&dh, &sq).unwrap();
        let (w, side) = cmp.witness.unwrap();
        assert_eq!(side, Side::OnlySecond);
        assert!(sq.contains(&w) && !dh.contains(&w));
    }

    #[test]
    fn unbounded_versus_segment() {
        let mut ray = HPoly::new(1);
        ray.push_nonneg(0, None);
        let seg = VPoly::new(1, vec![vec_from_ints(&[0]), vec_from_ints(&[1])]).unwrap();
        let cmp = poly_equal(&ray, &seg).unwrap();
        let (w, side) = cmp.witness.unwrap();
        assert_eq!(side, Side::OnlyFirst);
        assert!(ray.contains(&w) && w[0] > int(1));
        let sh = hull(&seg).unwrap();
        let (w, _) = poly_equal(&ray, &sh).unwrap().witness.unwrap();
        assert!(ray.contains(&w) && !sh.contains(&w));
    }
}
