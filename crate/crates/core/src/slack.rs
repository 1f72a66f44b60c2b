//! Slack maps, slack matrices and nonnegative factorizations.
//!
//! For `P = {x : Ax ≤ b, Cx = d}` the slack map `φ(x) = b − Ax` embeds the
//! affine hull of `P` into `R^m`, and `φ(P) = φ(aff P) ∩ R^m_+`. A
//! factorization `Φ = T S` of the slack matrix into nonnegative factors is
//! the same thing as an extension of size `f = cols(T)`: the functions in
//! this module convert in both directions.

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::constructions::{verify_extension, Extension, Target};
use crate::error::{Error, Result};
use crate::kernel::hull::Frame;
use crate::kernel::linalg::{independent_rows, nullspace, solve};
use crate::kernel::lp::{feasible_point, lp_solve, LpResult, Sense};
use crate::kernel::rational::{dot, unit_vec};
use crate::kernel::{affine_hull, AffineMap, Constraint, HPoly, RatMatrix, RatVector, Rational, VPoly};

/// `x ↦ b − A x`, after checking that it is injective on `aff(P)`.
pub fn slack_map(hrep: &HPoly) -> Result<AffineMap> {
    let frame = Frame::from_equations(hrep.dim, &affine_hull(hrep)?)?;
    let dirs = directions(hrep, &frame);
    if dirs.rank() != frame.dim() {
        return Err(Error::NotInjective);
    }
    let a = hrep.ineq_matrix();
    let neg = RatMatrix::from_rows(
        hrep.dim,
        a.row_vecs()
            .into_iter()
            .map(|r| r.into_iter().map(|x| -x).collect())
            .collect(),
    );
    AffineMap::new(neg, hrep.ineqs.iter().map(|r| r.rhs.clone()).collect())
}

/// `A · B` for the direction basis `B` of the frame (`m × k`).
fn directions(hrep: &HPoly, frame: &Frame) -> RatMatrix {
    let rows = hrep
        .ineqs
        .iter()
        .map(|r| frame.basis.iter().map(|v| dot(&r.coeffs, v)).collect())
        .collect();
    RatMatrix::from_rows(frame.dim(), rows)
}

/// Index of the first inequality that is tight nowhere on `P`.
pub fn first_nonbinding(hrep: &HPoly) -> Result<Option<usize>> {
    hrep.validate()?;
    if feasible_point(hrep)?.is_none() {
        return Err(Error::Infeasible);
    }
    let tight: Vec<bool> = hrep
        .ineqs
        .par_iter()
        .map(|r| -> Result<bool> {
            Ok(match lp_solve(&r.coeffs, Sense::Maximize, hrep)? {
                LpResult::Optimal { value, .. } => value == r.rhs,
                _ => false,
            })
        })
        .collect::<Result<_>>()?;
    Ok(tight.iter().position(|t| !t))
}

/// Whether every inequality is attained with equality somewhere on `P`.
pub fn is_binding(hrep: &HPoly) -> Result<bool> {
    Ok(first_nonbinding(hrep)?.is_none())
}

/// Facet-by-point slacks with provenance, and the affine hull `Ã` of the
/// slack representation as equations over `R^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlackMatrix {
    pub entries: RatMatrix,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub affine_space: Vec<Constraint>,
}

impl SlackMatrix {
    /// A bare matrix without geometric context. `affine_space` is empty.
    pub fn from_matrix(entries: RatMatrix) -> Result<Self> {
        if !entries.is_nonnegative() {
            return Err(Error::input("slack matrix has a negative entry"));
        }
        let row_labels = (0..entries.rows()).map(|i| format!("r{}", i + 1)).collect();
        let col_labels = (0..entries.cols()).map(|j| format!("c{}", j + 1)).collect();
        Ok(SlackMatrix {
            entries,
            row_labels,
            col_labels,
            affine_space: Vec::new(),
        })
    }

    pub fn rows(&self) -> usize {
        self.entries.rows()
    }

    pub fn cols(&self) -> usize {
        self.entries.cols()
    }

    pub fn is_support(&self, i: usize, j: usize) -> bool {
        !self.entries[(i, j)].is_zero()
    }

    pub fn support_size(&self) -> usize {
        (0..self.rows())
            .flat_map(|i| (0..self.cols()).map(move |j| (i, j)))
            .filter(|&(i, j)| self.is_support(i, j))
            .count()
    }
}

fn row_label(r: &Constraint, i: usize) -> String {
    r.label.clone().unwrap_or_else(|| format!("row{}", i + 1))
}

/// `Φ_{i,x} = b_i − A_i x` for every inequality `i` and point `x`.
pub fn slack_matrix(hrep: &HPoly, points: &VPoly) -> Result<SlackMatrix> {
    Error::check_dim(hrep.dim, points.dim)?;
    let m = hrep.ineqs.len();
    let mut entries = RatMatrix::zeros(m, points.len());
    for (j, x) in points.points.iter().enumerate() {
        for (i, r) in hrep.ineqs.iter().enumerate() {
            let s = r.slack(x);
            if s.is_negative() {
                return Err(Error::PointOutside { row: i, col: j });
            }
            entries[(i, j)] = s;
        }
        if let Some(e) = hrep.eqs.iter().position(|r| !r.slack(x).is_zero()) {
            return Err(Error::Input(format!(
                "point {} violates equation {}",
                points.label(j),
                row_label(&hrep.eqs[e], e)
            )));
        }
    }
    let frame = Frame::from_equations(hrep.dim, &affine_hull(hrep)?)?;
    let s0: RatVector = hrep.ineqs.iter().map(|r| r.slack(&frame.origin)).collect();
    // Ã = s0 + range(A B); its equations are the left kernel of A B.
    let dirs = directions(hrep, &frame);
    let affine_space = nullspace(&dirs.transpose())
        .into_iter()
        .map(|w| {
            let rhs = dot(&w, &s0);
            Constraint::new(w, rhs)
        })
        .collect();
    Ok(SlackMatrix {
        entries,
        row_labels: hrep.ineqs.iter().enumerate().map(|(i, r)| row_label(r, i)).collect(),
        col_labels: (0..points.len()).map(|j| points.label(j)).collect(),
        affine_space,
    })
}

/// `Φ = T S` with `T ∈ R^{m×f}_+`, `S ∈ R^{f×|X|}_+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonnegFactorization {
    pub t: RatMatrix,
    pub s: RatMatrix,
}

impl NonnegFactorization {
    pub fn new(t: RatMatrix, s: RatMatrix) -> Result<Self> {
        Error::check_dim(t.cols(), s.rows())?;
        Ok(NonnegFactorization { t, s })
    }

    /// `Φ = Φ · I`.
    pub fn trivial(slack: &SlackMatrix) -> Self {
        NonnegFactorization {
            t: slack.entries.clone(),
            s: RatMatrix::identity(slack.cols()),
        }
    }

    pub fn inner_dim(&self) -> usize {
        self.t.cols()
    }
}

/// Outcome of [`verify_factorization`], locating the first defect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorizationCheck {
    Valid,
    Shape,
    NegativeT { row: usize, col: usize },
    NegativeS { row: usize, col: usize },
    Mismatch { row: usize, col: usize },
}

impl FactorizationCheck {
    pub fn is_valid(&self) -> bool {
        *self == FactorizationCheck::Valid
    }
}

fn first_negative(m: &RatMatrix) -> Option<(usize, usize)> {
    (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| m[(i, j)].is_negative())
}

/// Exact check of `Φ = T S` with both factors nonnegative.
pub fn verify_factorization(slack: &SlackMatrix, fact: &NonnegFactorization) -> FactorizationCheck {
    let (t, s) = (&fact.t, &fact.s);
    if t.rows() != slack.rows() || s.cols() != slack.cols() || t.cols() != s.rows() {
        return FactorizationCheck::Shape;
    }
    if let Some((row, col)) = first_negative(t) {
        return FactorizationCheck::NegativeT { row, col };
    }
    if let Some((row, col)) = first_negative(s) {
        return FactorizationCheck::NegativeS { row, col };
    }
    let prod = t.mul(s);
    for i in 0..prod.rows() {
        for j in 0..prod.cols() {
            if prod[(i, j)] != slack.entries[(i, j)] {
                return FactorizationCheck::Mismatch { row: i, col: j };
            }
        }
    }
    FactorizationCheck::Valid
}

/// The slack extension `{λ ≥ 0 : T λ ∈ Ã}` mapped by `λ ↦ φ⁻¹(T λ)`, of
/// size `f`. `original` is the description `slack` was computed from.
pub fn factorization_to_extension(
    fact: &NonnegFactorization,
    slack: &SlackMatrix,
    original: &HPoly,
) -> Result<Extension> {
    match verify_factorization(slack, fact) {
        FactorizationCheck::Valid => {}
        FactorizationCheck::Mismatch { row, col }
        | FactorizationCheck::NegativeT { row, col }
        | FactorizationCheck::NegativeS { row, col } => {
            return Err(Error::FactorizationMismatch { row, col })
        }
        FactorizationCheck::Shape => return Err(Error::input("factor shapes do not match Φ")),
    }
    Error::check_dim(slack.rows(), original.ineqs.len())?;
    let frame = Frame::from_equations(original.dim, &affine_hull(original)?)?;
    let dirs = directions(original, &frame);
    let k = frame.dim();
    if dirs.rank() != k {
        return Err(Error::NotInjective);
    }
    let f = fact.inner_dim();
    let t = &fact.t;

    let mut q = HPoly::new(f);
    for j in 0..f {
        q.push_nonneg(j, Some(format!("lambda{} >= 0", j + 1)));
    }
    for (e, w) in slack.affine_space.iter().enumerate() {
        q.push_eq(t.vec_mul(&w.coeffs), w.rhs.clone(), Some(format!("affine {}", e + 1)));
    }

    // s = s0 − D u on aff(P); u = D_R⁻¹ (s0 − s)_R on independent rows R.
    let s0: RatVector = original.ineqs.iter().map(|r| r.slack(&frame.origin)).collect();
    let rows = independent_rows(&dirs);
    let dr = RatMatrix::from_rows(k, rows.iter().map(|&i| dirs.row(i).to_vec()).collect());
    let mut inv_cols = Vec::with_capacity(k);
    for c in 0..k {
        inv_cols.push(solve(&dr, &unit_vec(k, c)).ok_or(Error::NotInjective)?);
    }
    let dr_inv = RatMatrix::from_rows(k, inv_cols).transpose();
    // x = origin + B u, u = dr_inv (s0_R − (T λ)_R).
    let basis = RatMatrix::from_rows(original.dim, frame.basis.clone()).transpose();
    let bl = basis.mul(&dr_inv);
    let t_r = RatMatrix::from_rows(f, rows.iter().map(|&i| t.row(i).to_vec()).collect());
    let s0_r: RatVector = rows.iter().map(|&i| s0[i].clone()).collect();
    let lin = bl.mul(&t_r);
    let matrix = RatMatrix::from_rows(
        f,
        lin.row_vecs()
            .into_iter()
            .map(|r| r.into_iter().map(|x| -x).collect())
            .collect(),
    );
    let mut offset = frame.origin.clone();
    for (o, v) in offset.iter_mut().zip(bl.mul_vec(&s0_r)) {
        *o += v;
    }
    Extension::new("slack extension", q, AffineMap::new(matrix, offset)?)
}

/// Lexicographically smallest point of `{y ∈ Q : p(y) = x}`.
fn lexmin_lift(ext: &Extension, x: &[Rational]) -> Result<RatVector> {
    let mut fibre = ext.q.clone();
    for (i, xi) in x.iter().enumerate() {
        fibre.push_eq(ext.proj.matrix.row(i).to_vec(), xi - &ext.proj.offset[i], None);
    }
    let d = ext.dim();
    for j in 0..d {
        match lp_solve(&unit_vec(d, j), Sense::Minimize, &fibre)? {
            LpResult::Optimal { value, .. } => fibre.push_eq(unit_vec(d, j), value, None),
            LpResult::Infeasible { .. } => {
                return Err(Error::NotVerified(format!("point {x:?} has no lift")))
            }
            LpResult::Unbounded { .. } => {
                return Err(Error::invariant("fibre of a pointed extension is unbounded"))
            }
        }
    }
    feasible_point(&fibre)?.ok_or_else(|| Error::invariant("lexmin fibre became empty"))
}

/// Factorization `Φ = T S` read off an extension of `P`: row `i` of `T`
/// holds optimal dual multipliers for maximizing `A_i p(y)` over `Q`, and
/// column `x` of `S` holds the slacks of `Q` at the lexmin lift of `x`.
/// `Q` is first reduced modulo its lineality space.
pub fn extension_to_factorization(
    ext: &Extension,
    hrep: &HPoly,
    points: &VPoly,
) -> Result<NonnegFactorization> {
    if let Some(row) = first_nonbinding(hrep)? {
        return Err(Error::NotBinding { row });
    }
    let target = Target::new(hrep.clone(), points.clone())?;
    let report = verify_extension(&target, ext)?;
    if !report.passed() {
        return Err(Error::NotVerified(format!("{:?}", report.failures[0])));
    }
    let ext = ext.pointed()?;
    let q = &ext.q;
    let f = q.ineqs.len();

    let t_rows: Vec<RatVector> = hrep
        .ineqs
        .par_iter()
        .enumerate()
        .map(|(i, r)| -> Result<RatVector> {
            let (c, shift) = ext.proj.pull_back(&r.coeffs, &Rational::zero());
            match lp_solve(&c, Sense::Maximize, q)? {
                LpResult::Optimal {
                    value, ineq_duals, ..
                } if &value + &shift == r.rhs => Ok(ineq_duals),
                _ => Err(Error::invariant(format!(
                    "row {} of a binding system is not attained through the extension",
                    i + 1
                ))),
            }
        })
        .collect::<Result<_>>()?;
    let t = RatMatrix::from_rows(f, t_rows);

    let s_cols: Vec<RatVector> = points
        .points
        .par_iter()
        .map(|x| -> Result<RatVector> {
            let y = lexmin_lift(&ext, x)?;
            Ok(q.ineqs.iter().map(|r| r.slack(&y)).collect())
        })
        .collect::<Result<_>>()?;
    let s = RatMatrix::from_rows(f, s_cols).transpose();

    let fact = NonnegFactorization::new(t, s)?;
    let slack = slack_matrix(hrep, points)?;
    match verify_factorization(&slack, &fact) {
        FactorizationCheck::Valid => Ok(fact),
        other => Err(Error::invariant(format!("extracted factorization fails: {other:?}"))),
    }
}
