use num_traits::Zero;
use rayon::prelude::*;

use super::Extension;
use crate::error::{Error, Result};
use crate::kernel::lp::{feasible_point, lp_solve, LpResult, Sense};
use crate::kernel::{hull, vertices, HPoly, RatVector, Rational, VPoly};

/// A polytope with both descriptions at hand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    pub hrep: HPoly,
    pub vrep: VPoly,
}

impl Target {
    /// Pairs two descriptions the caller vouches for.
    pub fn new(hrep: HPoly, vrep: VPoly) -> Result<Self> {
        Error::check_dim(hrep.dim, vrep.dim)?;
        Ok(Target { hrep, vrep })
    }

    pub fn from_hrep(hrep: HPoly) -> Result<Self> {
        let vrep = vertices(&hrep)?;
        Ok(Target { hrep, vrep })
    }

    pub fn from_vrep(vrep: VPoly) -> Result<Self> {
        let hrep = hull(&vrep)?;
        Ok(Target { hrep, vrep })
    }

    pub fn dim(&self) -> usize {
        self.hrep.dim
    }
}

/// One way in which `p(Q) = P` fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// Vertex `index` of `P` has no preimage in `Q`.
    MissingVertex { index: usize, point: RatVector },
    /// `p(y)` violates inequality `row` of `P` for the returned `y ∈ Q`.
    FacetViolated {
        row: usize,
        value: Rational,
        bound: Rational,
        lift: RatVector,
    },
    /// `p(y)` leaves the affine hull: equation `row` evaluates to `value`.
    EquationViolated {
        row: usize,
        value: Rational,
        rhs: Rational,
        lift: RatVector,
    },
    /// `a · p(y)` is unbounded on `Q` along `ray` from `point`.
    Unbounded {
        row: usize,
        point: RatVector,
        ray: RatVector,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub name: String,
    pub size: usize,
    pub vertices_checked: usize,
    pub inequalities_checked: usize,
    pub equations_checked: usize,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Decides `p(Q) = P` exactly. Each vertex of `P` gets a feasibility LP for
/// its fibre; each inequality of `P` is maximized over `Q` through `p`, each
/// equation both maximized and minimized.
pub fn verify_extension(target: &Target, ext: &Extension) -> Result<VerifyReport> {
    Error::check_dim(target.dim(), ext.target_dim())?;
    let q = &ext.q;
    let d = q.dim;

    let missing: Vec<Option<Failure>> = target
        .vrep
        .points
        .par_iter()
        .enumerate()
        .map(|(index, v)| -> Result<Option<Failure>> {
            let mut fibre = q.clone();
            for (i, vi) in v.iter().enumerate() {
                fibre.push_eq(ext.proj.matrix.row(i).to_vec(), vi - &ext.proj.offset[i], None);
            }
            Ok(feasible_point(&fibre)?.is_none().then(|| Failure::MissingVertex {
                index,
                point: v.clone(),
            }))
        })
        .collect::<Result<_>>()?;

    // Maximize a·p(y) = (aᵀT)·y + a·t over Q.
    let maximize = |a: &[Rational]| -> Result<LpResult> {
        let (c, _) = ext.proj.pull_back(a, &Rational::zero());
        debug_assert_eq!(c.len(), d);
        lp_solve(&c, Sense::Maximize, q)
    };
    let shift = |a: &[Rational]| crate::kernel::rational::dot(a, &ext.proj.offset);

    let ineq_failures: Vec<Option<Failure>> = target
        .hrep
        .ineqs
        .par_iter()
        .enumerate()
        .map(|(row, r)| -> Result<Option<Failure>> {
            Ok(match maximize(&r.coeffs)? {
                LpResult::Optimal { value, point, .. } => {
                    let value = value + shift(&r.coeffs);
                    (value > r.rhs).then(|| Failure::FacetViolated {
                        row,
                        value,
                        bound: r.rhs.clone(),
                        lift: point,
                    })
                }
                LpResult::Unbounded { point, ray } => Some(Failure::Unbounded { row, point, ray }),
                // An empty Q is caught by the vertex checks.
                LpResult::Infeasible { .. } => None,
            })
        })
        .collect::<Result<_>>()?;

    let eq_failures: Vec<Option<Failure>> = target
        .hrep
        .eqs
        .par_iter()
        .enumerate()
        .map(|(row, r)| -> Result<Option<Failure>> {
            let neg: RatVector = r.coeffs.iter().map(|x| -x).collect();
            for (a, sign) in [(&r.coeffs, 1), (&neg, -1)] {
                match maximize(a)? {
                    LpResult::Optimal { value, point, .. } => {
                        let value = value + shift(a);
                        let bound = if sign > 0 { r.rhs.clone() } else { -&r.rhs };
                        if value > bound {
                            let value = if sign > 0 { value } else { -value };
                            return Ok(Some(Failure::EquationViolated {
                                row,
                                value,
                                rhs: r.rhs.clone(),
                                lift: point,
                            }));
                        }
                    }
                    LpResult::Unbounded { point, ray } => {
                        return Ok(Some(Failure::Unbounded {
                            row: target.hrep.ineqs.len() + row,
                            point,
                            ray,
                        }))
                    }
                    LpResult::Infeasible { .. } => {}
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;

    let failures = missing
        .into_iter()
        .chain(ineq_failures)
        .chain(eq_failures)
        .flatten()
        .collect();
    Ok(VerifyReport {
        name: ext.name.clone(),
        size: ext.size(),
        vertices_checked: target.vrep.len(),
        inequalities_checked: target.hrep.ineqs.len(),
        equations_checked: target.hrep.eqs.len(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{int, vec_from_ints};
    use crate::kernel::AffineMap;

    #[test]
    fn point_does_not_cover_segment() {
        let mut q = HPoly::new(1);
        q.push_eq(vec_from_ints(&[1]), int(0), None);
        let ext = Extension::new("point", q, AffineMap::identity(1)).unwrap();
        let seg = VPoly::new(1, vec![vec_from_ints(&[0]), vec_from_ints(&[1])]).unwrap();
        let report = verify_extension(&Target::from_vrep(seg).unwrap(), &ext).unwrap();
        assert_eq!(
            report.failures,
            vec![Failure::MissingVertex {
                index: 1,
                point: vec_from_ints(&[1])
            }]
        );
    }

    #[test]
    fn ray_is_reported() {
        let mut q = HPoly::new(1);
        q.push_nonneg(0, None);
        let ext = Extension::new("ray", q, AffineMap::identity(1)).unwrap();
        let seg = VPoly::new(1, vec![vec_from_ints(&[0]), vec_from_ints(&[1])]).unwrap();
        let report = verify_extension(&Target::from_vrep(seg).unwrap(), &ext).unwrap();
        assert!(matches!(report.failures[..], [Failure::Unbounded { .. }]));
    }

    #[test]
    fn equation_violation_is_reported() {
        // Q = [0,1]² mapped identically, target the diagonal segment.
        let mut q = HPoly::new(2);
        for i in 0..2 {
            q.push_nonneg(i, None);
            q.push_ineq(crate::kernel::rational::unit_vec(2, i), int(1), None);
        }
        let ext = Extension::new("square", q, AffineMap::identity(2)).unwrap();
        let diag = VPoly::new(2, vec![vec_from_ints(&[0, 0]), vec_from_ints(&[1, 1])]).unwrap();
        let report = verify_extension(&Target::from_vrep(diag).unwrap(), &ext).unwrap();
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, Failure::EquationViolated { .. })));
    }
}
