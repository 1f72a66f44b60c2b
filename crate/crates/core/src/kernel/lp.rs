//! Exact rational simplex with Bland's rule.
//!
//! The solver works on an arbitrary [`HPoly`]. Rows of the form `−c·x_j ≤ 0`
//! become sign bounds on `x_j`; free variables that appear in an equation are
//! eliminated by Gauss-Jordan substitution before the tableau is built, and
//! the remaining free variables are split into positive and negative parts.
//! Every answer carries a certificate in terms of the caller's original rows
//! (see [`LpResult`]), and [`LpResult::certifies`] checks it by substitution.

use num_traits::{One, Signed, Zero};

use super::poly::HPoly;
use super::rational::{axpy, dot, scale, zero_vec, RatVector, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Maximize,
    Minimize,
}

impl Sense {
    fn sign(self) -> Rational {
        match self {
            Sense::Maximize => Rational::one(),
            Sense::Minimize => -Rational::one(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Outcome of [`lp_solve`].
///
/// Certificates use the orientation `s = +1` for maximisation and `s = −1`
/// for minimisation, with `A x ≤ b` the inequalities and `C x = d` the
/// equations of the input:
///
/// * `Optimal`: `λ ≥ 0`, `λᵀA + μᵀC = s·c` and `λ·b + μ·d = s·value`.
/// * `Infeasible`: `λ ≥ 0`, `λᵀA + μᵀC = 0` and `λ·b + μ·d < 0`.
/// * `Unbounded`: `point` is feasible, `A r ≤ 0`, `C r = 0`, `s·c·r > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Optimal {
        value: Rational,
        point: RatVector,
        ineq_duals: RatVector,
        eq_duals: RatVector,
    },
    Infeasible {
        ineq_mult: RatVector,
        eq_mult: RatVector,
    },
    Unbounded {
        point: RatVector,
        ray: RatVector,
    },
}

impl LpResult {
    pub fn status(&self) -> LpStatus {
        match self {
            LpResult::Optimal { .. } => LpStatus::Optimal,
            LpResult::Infeasible { .. } => LpStatus::Infeasible,
            LpResult::Unbounded { .. } => LpStatus::Unbounded,
        }
    }

    pub fn optimum(&self) -> Option<&Rational> {
        match self {
            LpResult::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn primal_point(&self) -> Option<&RatVector> {
        match self {
            LpResult::Optimal { point, .. } | LpResult::Unbounded { point, .. } => Some(point),
            LpResult::Infeasible { .. } => None,
        }
    }

    /// Checks the attached certificate against the problem by direct
    /// substitution.
    pub fn certifies(&self, objective: &[Rational], sense: Sense, poly: &HPoly) -> bool {
        let s = sense.sign();
        let n = poly.dim;
        let combo = |lam: &[Rational], mu: &[Rational]| {
            let mut acc = zero_vec(n);
            for (l, r) in lam.iter().zip(&poly.ineqs) {
                axpy(&mut acc, l, &r.coeffs);
            }
            for (m, r) in mu.iter().zip(&poly.eqs) {
                axpy(&mut acc, m, &r.coeffs);
            }
            let rhs: Rational = lam.iter().zip(&poly.ineqs).map(|(l, r)| l * &r.rhs).sum::<Rational>()
                + mu.iter().zip(&poly.eqs).map(|(m, r)| m * &r.rhs).sum::<Rational>();
            (acc, rhs)
        };
        match self {
            LpResult::Optimal {
                value,
                point,
                ineq_duals,
                eq_duals,
            } => {
                if ineq_duals.len() != poly.ineqs.len()
                    || eq_duals.len() != poly.eqs.len()
                    || ineq_duals.iter().any(Signed::is_negative)
                    || !poly.contains(point)
                    || dot(objective, point) != *value
                {
                    return false;
                }
                let (acc, rhs) = combo(ineq_duals, eq_duals);
                acc == scale(objective, &s) && rhs == &s * value
            }
            LpResult::Infeasible { ineq_mult, eq_mult } => {
                if ineq_mult.len() != poly.ineqs.len()
                    || eq_mult.len() != poly.eqs.len()
                    || ineq_mult.iter().any(Signed::is_negative)
                {
                    return false;
                }
                let (acc, rhs) = combo(ineq_mult, eq_mult);
                acc.iter().all(Zero::is_zero) && rhs.is_negative()
            }
            LpResult::Unbounded { point, ray } => {
                poly.contains(point)
                    && poly.ineqs.iter().all(|r| !dot(&r.coeffs, ray).is_positive())
                    && poly.eqs.iter().all(|r| dot(&r.coeffs, ray).is_zero())
                    && (&s * dot(objective, ray)).is_positive()
            }
        }
    }
}

/// Optimises `objective · x` over `poly` exactly.
pub fn lp_solve(objective: &[Rational], sense: Sense, poly: &HPoly) -> Result<LpResult> {
    poly.validate()?;
    Error::check_dim(poly.dim, objective.len())?;
    let result = Reduction::new(objective, sense, poly).solve();
    debug_assert!(result.certifies(objective, sense, poly), "bad LP certificate");
    Ok(result)
}

/// Some point of `poly`, or `None` if it is empty.
pub fn feasible_point(poly: &HPoly) -> Result<Option<RatVector>> {
    let zero = zero_vec(poly.dim);
    Ok(match lp_solve(&zero, Sense::Maximize, poly)? {
        LpResult::Optimal { point, .. } | LpResult::Unbounded { point, .. } => Some(point),
        LpResult::Infeasible { .. } => None,
    })
}

/// A row of the reduced problem together with its expression in terms of
/// the original equations (`comb`), so duals can be mapped back.
struct Row {
    coeffs: RatVector,
    rhs: Rational,
    comb: RatVector,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColKind {
    /// Variable `j` (nonnegative, or the positive part of a free variable).
    Plus(usize),
    /// Negative part of free variable `j`.
    Minus(usize),
    Slack(usize),
    Artificial(usize),
}

struct Reduction {
    n: usize,
    n_ineq: usize,
    n_eq: usize,
    sense_sign: Rational,
    /// Sign bound of each variable: `(row, c)` for a row `−c·x_j ≤ 0`.
    sign_row: Vec<Option<(usize, Rational)>>,
    /// General inequality rows, indexed like the input.
    general: Vec<(usize, Row)>,
    eqs: Vec<Row>,
    /// Equation that eliminated each variable.
    eliminated_by: Vec<Option<usize>>,
    pivot_var: Vec<Option<usize>>,
    objective: RatVector,
    obj_comb: RatVector,
    obj_const: Rational,
}

impl Reduction {
    fn new(objective: &[Rational], sense: Sense, poly: &HPoly) -> Self {
        let n = poly.dim;
        let k = poly.eqs.len();
        let mut sign_row: Vec<Option<(usize, Rational)>> = vec![None; n];
        let mut general = Vec::new();
        for (i, r) in poly.ineqs.iter().enumerate() {
            match r.as_sign_bound() {
                Some((j, c)) if sign_row[j].is_none() => sign_row[j] = Some((i, c)),
                _ => general.push((
                    i,
                    Row {
                        coeffs: r.coeffs.clone(),
                        rhs: r.rhs.clone(),
                        comb: zero_vec(k),
                    },
                )),
            }
        }
        let eqs = poly
            .eqs
            .iter()
            .enumerate()
            .map(|(e, r)| {
                let mut comb = zero_vec(k);
                comb[e] = Rational::one();
                Row {
                    coeffs: r.coeffs.clone(),
                    rhs: r.rhs.clone(),
                    comb,
                }
            })
            .collect();
        let sense_sign = sense.sign();
        let mut red = Reduction {
            n,
            n_ineq: poly.ineqs.len(),
            n_eq: k,
            objective: scale(objective, &sense_sign),
            sense_sign,
            sign_row,
            general,
            eqs,
            eliminated_by: vec![None; n],
            pivot_var: vec![None; k],
            obj_comb: zero_vec(k),
            obj_const: Rational::zero(),
        };
        red.eliminate_free_variables();
        red
    }

    fn eliminate_free_variables(&mut self) {
        for e in 0..self.eqs.len() {
            let Some(j) = (0..self.n).find(|&j| {
                self.sign_row[j].is_none()
                    && self.eliminated_by[j].is_none()
                    && !self.eqs[e].coeffs[j].is_zero()
            }) else {
                continue;
            };
            let inv = self.eqs[e].coeffs[j].recip();
            {
                let row = &mut self.eqs[e];
                row.coeffs = scale(&row.coeffs, &inv);
                row.rhs *= &inv;
                row.comb = scale(&row.comb, &inv);
            }
            let (pc, pr, pm) = {
                let row = &self.eqs[e];
                (row.coeffs.clone(), row.rhs.clone(), row.comb.clone())
            };
            let reduce = |row: &mut Row| {
                let f = row.coeffs[j].clone();
                if f.is_zero() {
                    return;
                }
                let nf = -f;
                axpy(&mut row.coeffs, &nf, &pc);
                row.rhs += &nf * &pr;
                axpy(&mut row.comb, &nf, &pm);
            };
            for (f, row) in self.eqs.iter_mut().enumerate() {
                if f != e {
                    reduce(row);
                }
            }
            for (_, row) in self.general.iter_mut() {
                reduce(row);
            }
            let f = self.objective[j].clone();
            if !f.is_zero() {
                let nf = -f.clone();
                axpy(&mut self.objective, &nf, &pc);
                self.obj_const += &f * &pr;
                axpy(&mut self.obj_comb, &f, &pm);
            }
            self.eliminated_by[j] = Some(e);
            self.pivot_var[e] = Some(j);
        }
    }

    /// Maps multipliers of the reduced rows back onto the original rows.
    /// `general_mult[g]` belongs to `self.general[g]`, `eq_mult[e]` to the
    /// transformed equation `e`, `sign_mult[j]` to variable `j`'s sign row.
    fn lift_multipliers(
        &self,
        general_mult: &[Rational],
        eq_mult: &[Rational],
        sign_mult: &[Rational],
        with_objective: bool,
    ) -> (RatVector, RatVector) {
        let mut lam = zero_vec(self.n_ineq);
        let mut mu = if with_objective {
            self.obj_comb.clone()
        } else {
            zero_vec(self.n_eq)
        };
        for ((i, row), l) in self.general.iter().zip(general_mult) {
            lam[*i] = l.clone();
            axpy(&mut mu, l, &row.comb);
        }
        for (row, m) in self.eqs.iter().zip(eq_mult) {
            axpy(&mut mu, m, &row.comb);
        }
        for (j, s) in sign_mult.iter().enumerate() {
            if let Some((i, _)) = &self.sign_row[j] {
                lam[*i] = s.clone();
            }
        }
        (lam, mu)
    }

    fn infeasible_from(&self, general_mult: &[Rational], eq_mult: &[Rational], sign_mult: &[Rational]) -> LpResult {
        let (ineq_mult, eq_mult) = self.lift_multipliers(general_mult, eq_mult, sign_mult, false);
        LpResult::Infeasible { ineq_mult, eq_mult }
    }

    fn solve(&self) -> LpResult {
        let n_gen = self.general.len();
        let n_eq = self.eqs.len();

        // Rows that reduced to constants are either contradictions or void.
        let mut row_ids: Vec<RowId> = Vec::new();
        for (g, (_, row)) in self.general.iter().enumerate() {
            if row.coeffs.iter().all(Zero::is_zero) {
                if row.rhs.is_negative() {
                    let mut gm = zero_vec(n_gen);
                    gm[g] = Rational::one();
                    return self.infeasible_from(&gm, &zero_vec(n_eq), &zero_vec(self.n));
                }
            } else {
                row_ids.push(RowId::General(g));
            }
        }
        for (e, row) in self.eqs.iter().enumerate() {
            if self.pivot_var[e].is_some() {
                continue;
            }
            if row.coeffs.iter().all(Zero::is_zero) {
                if !row.rhs.is_zero() {
                    let mut em = zero_vec(n_eq);
                    em[e] = if row.rhs.is_positive() {
                        -Rational::one()
                    } else {
                        Rational::one()
                    };
                    return self.infeasible_from(&zero_vec(n_gen), &em, &zero_vec(self.n));
                }
            } else {
                row_ids.push(RowId::Eq(e));
            }
        }

        let mut cols = Vec::new();
        for j in 0..self.n {
            if self.eliminated_by[j].is_some() {
                continue;
            }
            cols.push(ColKind::Plus(j));
            if self.sign_row[j].is_none() {
                cols.push(ColKind::Minus(j));
            }
        }
        let n_struct = cols.len();
        for (r, id) in row_ids.iter().enumerate() {
            if matches!(id, RowId::General(_)) {
                cols.push(ColKind::Slack(r));
            }
        }

        let m = row_ids.len();
        let mut tab = Tableau::default();
        let mut flipped = vec![false; m];
        let mut slack_col = vec![None; m];
        let mut art_col = vec![None; m];
        for (c, kind) in cols.iter().enumerate() {
            if let ColKind::Slack(r) = kind {
                slack_col[*r] = Some(c);
            }
        }
        for (r, id) in row_ids.iter().enumerate() {
            let src = self.row(*id);
            let rhs = src.rhs.clone();
            flipped[r] = rhs.is_negative();
            if !flipped[r] && slack_col[r].is_some() {
                continue;
            }
            art_col[r] = Some(cols.len());
            cols.push(ColKind::Artificial(r));
        }
        let n_cols = cols.len();
        for (r, id) in row_ids.iter().enumerate() {
            let src = self.row(*id);
            let mut t = zero_vec(n_cols);
            for (c, kind) in cols[..n_struct].iter().enumerate() {
                t[c] = match kind {
                    ColKind::Plus(j) => src.coeffs[*j].clone(),
                    ColKind::Minus(j) => -src.coeffs[*j].clone(),
                    _ => unreachable!(),
                };
            }
            if let Some(c) = slack_col[r] {
                t[c] = Rational::one();
            }
            let mut rhs = src.rhs.clone();
            if flipped[r] {
                for x in t.iter_mut() {
                    *x = -x.clone();
                }
                rhs = -rhs;
            }
            let basic = match art_col[r] {
                Some(a) => {
                    t[a] = Rational::one();
                    a
                }
                None => slack_col[r].expect("slack basis"),
            };
            tab.rows.push(t);
            tab.rhs.push(rhs);
            tab.basis.push(basic);
        }
        let is_art: Vec<bool> = cols.iter().map(|k| matches!(k, ColKind::Artificial(_))).collect();

        // Phase 1: maximise −Σ artificials.
        if art_col.iter().any(Option::is_some) {
            let cost: RatVector = is_art
                .iter()
                .map(|&a| if a { -Rational::one() } else { Rational::zero() })
                .collect();
            tab.set_objective(&cost);
            let outcome = tab.run(&vec![true; n_cols]);
            debug_assert!(outcome.is_none(), "phase 1 cannot be unbounded");
            if tab.value.is_negative() {
                // y (original orientation) from identity columns; cost of
                // artificials is −1 in this phase.
                let y = self.row_duals(&tab, &row_ids, &flipped, &slack_col, &art_col, &-Rational::one());
                let sign_mult = self.sign_duals(&tab, &cols);
                let (gm, em) = self.split_row_duals(&row_ids, &y);
                return self.infeasible_from(&gm, &em, &sign_mult);
            }
            for r in 0..m {
                if !is_art[tab.basis[r]] {
                    continue;
                }
                if let Some(c) = (0..n_cols).find(|&c| !is_art[c] && !tab.rows[r][c].is_zero()) {
                    tab.pivot(r, c);
                }
            }
        }

        // Phase 2.
        let cost: RatVector = cols
            .iter()
            .map(|k| match k {
                ColKind::Plus(j) => self.objective[*j].clone(),
                ColKind::Minus(j) => -self.objective[*j].clone(),
                _ => Rational::zero(),
            })
            .collect();
        tab.set_objective(&cost);
        let allowed: Vec<bool> = is_art.iter().map(|a| !a).collect();
        let unbounded_col = tab.run(&allowed);

        let col_values = tab.column_values(n_cols);
        let point = self.assemble_point(&cols, &col_values, false);
        if let Some(q) = unbounded_col {
            let mut dir = zero_vec(n_cols);
            dir[q] = Rational::one();
            for (r, &b) in tab.basis.iter().enumerate() {
                dir[b] = -tab.rows[r][q].clone();
            }
            let ray = self.assemble_point(&cols, &dir, true);
            return LpResult::Unbounded { point, ray };
        }

        let y = self.row_duals(&tab, &row_ids, &flipped, &slack_col, &art_col, &Rational::zero());
        let sign_mult = self.sign_duals(&tab, &cols);
        let (gm, em) = self.split_row_duals(&row_ids, &y);
        let (ineq_duals, eq_duals) = self.lift_multipliers(&gm, &em, &sign_mult, true);
        let value = &self.sense_sign * (&tab.value + &self.obj_const);
        LpResult::Optimal {
            value,
            point,
            ineq_duals,
            eq_duals,
        }
    }

    fn row(&self, id: RowId) -> &Row {
        match id {
            RowId::General(g) => &self.general[g].1,
            RowId::Eq(e) => &self.eqs[e],
        }
    }

    /// Dual value of every tableau row in its original orientation, read off
    /// the reduced costs of that row's identity column.
    fn row_duals(
        &self,
        tab: &Tableau,
        row_ids: &[RowId],
        flipped: &[bool],
        slack_col: &[Option<usize>],
        art_col: &[Option<usize>],
        art_cost: &Rational,
    ) -> RatVector {
        (0..row_ids.len())
            .map(|r| {
                if let Some(c) = slack_col[r] {
                    tab.reduced[c].clone()
                } else {
                    let c = art_col[r].expect("identity column");
                    let y = &tab.reduced[c] + art_cost;
                    if flipped[r] {
                        -y
                    } else {
                        y
                    }
                }
            })
            .collect()
    }

    fn sign_duals(&self, tab: &Tableau, cols: &[ColKind]) -> RatVector {
        let mut out = zero_vec(self.n);
        for (c, kind) in cols.iter().enumerate() {
            if let ColKind::Plus(j) = kind {
                if let Some((_, coef)) = &self.sign_row[*j] {
                    out[*j] = &tab.reduced[c] / coef;
                }
            }
        }
        out
    }

    fn split_row_duals(&self, row_ids: &[RowId], y: &[Rational]) -> (RatVector, RatVector) {
        let mut gm = zero_vec(self.general.len());
        let mut em = zero_vec(self.eqs.len());
        for (id, v) in row_ids.iter().zip(y) {
            match id {
                RowId::General(g) => gm[*g] = v.clone(),
                RowId::Eq(e) => em[*e] = v.clone(),
            }
        }
        (gm, em)
    }

    /// Converts tableau column values into an `x` vector, back-substituting
    /// eliminated variables (homogeneously for directions).
    fn assemble_point(&self, cols: &[ColKind], values: &[Rational], homogeneous: bool) -> RatVector {
        let mut x = zero_vec(self.n);
        for (c, kind) in cols.iter().enumerate() {
            match kind {
                ColKind::Plus(j) => x[*j] += &values[c],
                ColKind::Minus(j) => x[*j] -= &values[c],
                _ => {}
            }
        }
        for j in 0..self.n {
            if let Some(e) = self.eliminated_by[j] {
                let row = &self.eqs[e];
                let mut v = if homogeneous {
                    Rational::zero()
                } else {
                    row.rhs.clone()
                };
                for (k, a) in row.coeffs.iter().enumerate() {
                    if k != j && !a.is_zero() {
                        v -= a * &x[k];
                    }
                }
                x[j] = v;
            }
        }
        x
    }
}

#[derive(Clone, Copy)]
enum RowId {
    General(usize),
    Eq(usize),
}

/// Dense simplex tableau in the maximisation convention: `reduced[j] =
/// c_Bᵀ B⁻¹ A_j − c_j`, optimal when no allowed column has a negative entry.
#[derive(Default)]
struct Tableau {
    rows: Vec<RatVector>,
    rhs: RatVector,
    basis: Vec<usize>,
    cost: RatVector,
    reduced: RatVector,
    value: Rational,
}

impl Tableau {
    fn set_objective(&mut self, cost: &[Rational]) {
        self.cost = cost.to_vec();
        let mut reduced: RatVector = cost.iter().map(|c| -c.clone()).collect();
        let mut value = Rational::zero();
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            axpy(&mut reduced, cb, &self.rows[r]);
            value += cb * &self.rhs[r];
        }
        self.reduced = reduced;
        self.value = value;
    }

    /// Runs Bland pivots until optimal (`None`) or an unbounded entering
    /// column is found (`Some(col)`).
    fn run(&mut self, allowed: &[bool]) -> Option<usize> {
        loop {
            let q = (0..self.reduced.len()).find(|&j| allowed[j] && self.reduced[j].is_negative())?;
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][q];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, q),
                None => return Some(q),
            }
        }
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let inv = self.rows[r][q].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let nz: Vec<usize> = (0..self.rows[r].len())
            .filter(|&j| !self.rows[r][j].is_zero())
            .collect();
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][q].clone();
            if f.is_zero() {
                continue;
            }
            let row = &mut self.rows[i];
            for &j in &nz {
                row[j] -= &f * &pivot_row[j];
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        let f = self.reduced[q].clone();
        if !f.is_zero() {
            for &j in &nz {
                self.reduced[j] -= &f * &pivot_row[j];
            }
            self.value -= &f * &pivot_rhs;
        }
        self.rows[r] = pivot_row;
        self.basis[r] = q;
    }

    fn column_values(&self, n_cols: usize) -> RatVector {
        let mut v = zero_vec(n_cols);
        for (r, &b) in self.basis.iter().enumerate() {
            v[b] = self.rhs[r].clone();
        }
        v
    }
}
