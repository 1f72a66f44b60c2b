mod common;

use extform::kernel::lp::{lp_solve, LpResult, Sense};
use extform::kernel::rational::{frac, int, is_canonical, parse_rational};
use extform::kernel::{
    fm_project, hull, poly_equal, remove_redundancy, vertices, HPoly, RatVector, Rational, VPoly,
};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| frac(p, q))
}

fn row(d: usize) -> impl Strategy<Value = (Vec<i64>, i64)> {
    (prop::collection::vec(-3i64..=3, d), -4i64..=6)
}

fn lp_instance() -> impl Strategy<Value = (HPoly, RatVector, bool)> {
    (2usize..=3)
        .prop_flat_map(|d| {
            (
                Just(d),
                prop::collection::vec(row(d), 1..=5),
                prop::collection::vec(row(d), 0..=1),
                prop::collection::vec(-3i64..=3, d),
                any::<bool>(),
            )
        })
        .prop_map(|(d, ineqs, eqs, c, max)| {
            let mut h = HPoly::new(d);
            for (a, b) in ineqs {
                h.push_ineq(a.iter().map(|&x| int(x)).collect(), int(b), None);
            }
            for (a, b) in eqs {
                h.push_eq(a.iter().map(|&x| int(x)).collect(), int(b), None);
            }
            (h, c.iter().map(|&x| int(x)).collect(), max)
        })
}

fn feasible(h: &HPoly, x: &[Rational]) -> bool {
    h.ineqs.iter().all(|r| dot(&r.coeffs, x) <= r.rhs) && h.eqs.iter().all(|r| dot(&r.coeffs, x) == r.rhs)
}

/// `λᵀA + μᵀC` over the original rows.
fn combine(h: &HPoly, lam: &[Rational], mu: &[Rational]) -> RatVector {
    let mut out = vec![Rational::zero(); h.dim];
    for (l, r) in lam.iter().zip(&h.ineqs).chain(mu.iter().zip(&h.eqs)) {
        for (o, a) in out.iter_mut().zip(&r.coeffs) {
            *o += l * a;
        }
    }
    out
}

fn rhs_combine(h: &HPoly, lam: &[Rational], mu: &[Rational]) -> Rational {
    lam.iter()
        .zip(&h.ineqs)
        .chain(mu.iter().zip(&h.eqs))
        .map(|(l, r)| l * &r.rhs)
        .sum()
}

/// Vertices of `{x ∈ R² : A x ≤ b}` by intersecting every pair of lines.
fn brute_force_vertices_2d(h: &HPoly) -> Vec<RatVector> {
    let rows = &h.ineqs;
    let mut out = Vec::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let (a, b) = (&rows[i].coeffs, &rows[j].coeffs);
            let det = &a[0] * &b[1] - &a[1] * &b[0];
            if det.is_zero() {
                continue;
            }
            let x = (&rows[i].rhs * &b[1] - &rows[j].rhs * &a[1]) / &det;
            let y = (&a[0] * &rows[j].rhs - &b[0] * &rows[i].rhs) / &det;
            let p = vec![x, y];
            if feasible(h, &p) {
                out.push(p);
            }
        }
    }
    out
}

fn distinct_points(d: usize, max: usize) -> impl Strategy<Value = Vec<RatVector>> {
    prop::collection::vec(prop::collection::vec(rat(), d), 1..=max).prop_map(|mut v| {
        v.sort();
        v.dedup();
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn lp_answers_carry_valid_certificates((h, c, max) in lp_instance()) {
        let sense = if max { Sense::Maximize } else { Sense::Minimize };
        let s = if max { int(1) } else { int(-1) };
        match lp_solve(&c, sense, &h).unwrap() {
            LpResult::Optimal { value, point, ineq_duals, eq_duals } => {
                prop_assert!(feasible(&h, &point));
                prop_assert_eq!(dot(&c, &point), value.clone());
                prop_assert!(ineq_duals.iter().all(|l| !l.is_negative()));
                let sc: RatVector = c.iter().map(|x| x * &s).collect();
                prop_assert_eq!(combine(&h, &ineq_duals, &eq_duals), sc);
                prop_assert_eq!(rhs_combine(&h, &ineq_duals, &eq_duals), &s * &value);
            }
            LpResult::Infeasible { ineq_mult, eq_mult } => {
                prop_assert!(ineq_mult.iter().all(|l| !l.is_negative()));
                prop_assert!(combine(&h, &ineq_mult, &eq_mult).iter().all(Zero::is_zero));
                prop_assert!(rhs_combine(&h, &ineq_mult, &eq_mult).is_negative());
            }
            LpResult::Unbounded { point, ray } => {
                prop_assert!(feasible(&h, &point));
                prop_assert!(h.ineqs.iter().all(|r| !dot(&r.coeffs, &ray).is_positive()));
                prop_assert!(h.eqs.iter().all(|r| dot(&r.coeffs, &ray).is_zero()));
                prop_assert!((&s * dot(&c, &ray)).is_positive());
            }
        }
    }

    #[test]
    fn lp_optimum_matches_vertex_enumeration(
        rows in prop::collection::vec(row(2), 0..=4),
        c in prop::collection::vec(-3i64..=3, 2),
    ) {
        let mut h = HPoly::new(2);
        for i in 0..2 {
            for sign in [1, -1] {
                let mut a = vec![int(0); 2];
                a[i] = int(sign);
                h.push_ineq(a, int(5), None);
            }
        }
        for (a, b) in rows {
            h.push_ineq(a.iter().map(|&x| int(x)).collect(), int(b), None);
        }
        let c: RatVector = c.iter().map(|&x| int(x)).collect();
        let verts = brute_force_vertices_2d(&h);
        let best = verts.iter().map(|v| dot(&c, v)).max();
        match lp_solve(&c, Sense::Maximize, &h).unwrap() {
            LpResult::Optimal { value, .. } => prop_assert_eq!(Some(value), best),
            LpResult::Infeasible { .. } => prop_assert!(verts.is_empty()),
            LpResult::Unbounded { .. } => prop_assert!(false, "bounded by the box"),
        }
    }

    #[test]
    fn rationals_stay_canonical(a in rat(), b in rat()) {
        for r in [&a + &b, &a - &b, &a * &b] {
            prop_assert!(is_canonical(&r));
            prop_assert_eq!(parse_rational(&r.to_string()), Some(r.clone()));
        }
        if !b.is_zero() {
            prop_assert!(is_canonical(&(&a / &b)));
        }
    }

    #[test]
    fn weyl_minkowski_round_trip(d in 1usize..=3, seed in any::<u64>()) {
        let pts = points_from_seed(d, seed);
        let v = VPoly::new(d, pts.clone()).unwrap();
        let h = hull(&v).unwrap();
        let back = vertices(&h).unwrap();
        prop_assert!(back.points.iter().all(|p| pts.contains(p)));
        prop_assert!(poly_equal(&back, &v).unwrap().equal);
        prop_assert!(poly_equal(&h, &common::brute_force_facets(&pts)).unwrap().equal);
    }

    #[test]
    fn hull_of_low_dimensional_sets(pts in distinct_points(3, 5)) {
        let v = VPoly::new(3, pts).unwrap();
        let h = hull(&v).unwrap();
        prop_assert_eq!(3 - h.eqs.len(), common::affine_rank(&v.points));
        prop_assert!(poly_equal(&h, &v).unwrap().equal);
    }

    #[test]
    fn projection_matches_hull_of_projected_points(seed in any::<u64>()) {
        let pts = points_from_seed(3, seed);
        let h = hull(&VPoly::new(3, pts.clone()).unwrap()).unwrap();
        let proj = fm_project(&h, &[0, 1]).unwrap();
        let mut shadow: Vec<RatVector> = pts.iter().map(|p| p[..2].to_vec()).collect();
        shadow.sort();
        shadow.dedup();
        let oracle = common::brute_force_facets(&shadow);
        prop_assert!(poly_equal(&proj, &oracle).unwrap().equal);
    }

    #[test]
    fn redundancy_removal_keeps_the_set(seed in any::<u64>(), extra in prop::collection::vec((0usize..64, 0usize..64, 0i64..=3), 1..=4)) {
        let pts = points_from_seed(2, seed);
        let h = hull(&VPoly::new(2, pts).unwrap()).unwrap();
        let mut noisy = h.clone();
        for (i, j, slack) in extra {
            let (a, b) = (&h.ineqs[i % h.ineqs.len()], &h.ineqs[j % h.ineqs.len()]);
            let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
            noisy.push_ineq(coeffs, &a.rhs + &b.rhs + int(slack), None);
        }
        let cleaned = remove_redundancy(&noisy).unwrap();
        prop_assert!(cleaned.ineqs.len() <= h.ineqs.len());
        prop_assert!(poly_equal(&cleaned, &h).unwrap().equal);
    }
}

/// Full-dimensional random points, deterministic in the seed.
fn points_from_seed(d: usize, seed: u64) -> Vec<RatVector> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let m = rng.gen_range(d + 1..=7);
    common::random_full_dim_points(&mut rng, d, m)
}
