use num_traits::{One, Zero};

use super::Extension;
use crate::error::{Error, Result};
use crate::kernel::lp::{feasible_point, lp_solve, LpResult, Sense};
use crate::kernel::rational::{unit_vec, zero_vec};
use crate::kernel::{AffineMap, HPoly, RatMatrix, Rational};

fn check_polytope(i: usize, part: &HPoly) -> Result<()> {
    if feasible_point(part)?.is_none() {
        return Err(Error::input(format!("part {} is empty", i + 1)));
    }
    for j in 0..part.dim {
        for sense in [Sense::Maximize, Sense::Minimize] {
            if let LpResult::Unbounded { .. } = lp_solve(&unit_vec(part.dim, j), sense, part)? {
                return Err(Error::input(format!("part {} is unbounded", i + 1)));
            }
        }
    }
    Ok(())
}

/// Balas' description of `conv(P_1 ∪ … ∪ P_q)` for nonempty polytopes:
/// variables `(z¹, …, z^q, λ)` with `A_i z^i ≤ λ_i b_i`, `C_i z^i = λ_i d_i`,
/// `Σ λ = 1`, `λ ≥ 0`, mapped by `Σ z^i`.
pub fn balas_union(parts: &[HPoly]) -> Result<Extension> {
    let Some(first) = parts.first() else {
        return Err(Error::input("union of no parts"));
    };
    let n = first.dim;
    for (i, part) in parts.iter().enumerate() {
        part.validate()?;
        Error::check_dim(n, part.dim)?;
        check_polytope(i, part)?;
    }
    let q = parts.len();
    let d = q * n + q;
    let lambda = |i: usize| q * n + i;
    let mut ext = HPoly::new(d);
    let homogenize = |i: usize, a: &[Rational], b: &Rational| {
        let mut row = zero_vec(d);
        row[i * n..(i + 1) * n].clone_from_slice(a);
        row[lambda(i)] = -b.clone();
        row
    };
    let tag = |i: usize, label: &Option<String>| {
        Some(match label {
            Some(l) => format!("part {}: {l}", i + 1),
            None => format!("part {}", i + 1),
        })
    };
    for (i, part) in parts.iter().enumerate() {
        for r in &part.ineqs {
            ext.push_ineq(homogenize(i, &r.coeffs, &r.rhs), Rational::zero(), tag(i, &r.label));
        }
        for r in &part.eqs {
            ext.push_eq(homogenize(i, &r.coeffs, &r.rhs), Rational::zero(), tag(i, &r.label));
        }
    }
    for i in 0..q {
        ext.push_nonneg(lambda(i), Some(format!("lambda {} >= 0", i + 1)));
    }
    let mut sum = zero_vec(d);
    for i in 0..q {
        sum[lambda(i)] = Rational::one();
    }
    ext.push_eq(sum, Rational::one(), Some("convexity".into()));

    let mut t = RatMatrix::zeros(n, d);
    for i in 0..q {
        for j in 0..n {
            t[(j, i * n + j)] = Rational::one();
        }
    }
    Extension::new(format!("balas({q} parts)"), ext, AffineMap::linear(t))
}
