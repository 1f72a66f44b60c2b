//! Generators for classical combinatorial polytopes.
//!
//! Graph polytopes live on the complete graph `K_n`; edge coordinates follow
//! [`GraphEdgeIndex`]. Node numbers in labels are 1-based.

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::rational::{int, unit_vec, zero_vec};
use crate::kernel::{HPoly, RatVector, Rational, VPoly};

/// Lexicographic numbering of the edges `{v, w}`, `v < w`, of `K_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdgeIndex {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphEdgeIndex {
    pub fn new(n: usize) -> Self {
        let edges = (0..n).tuple_combinations().collect();
        GraphEdgeIndex { n, edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Coordinate of edge `{v, w}` (order irrelevant, `v ≠ w`).
    pub fn index(&self, v: usize, w: usize) -> usize {
        let (a, b) = if v < w { (v, w) } else { (w, v) };
        assert!(a != b && b < self.n, "not an edge of K_{}", self.n);
        // Edges starting at nodes below a come first.
        a * (2 * self.n - a - 1) / 2 + (b - a - 1)
    }

    /// Indicator of `δ(v)`.
    pub fn star(&self, v: usize) -> RatVector {
        self.indicator(self.edges.iter().map(|&(a, b)| a == v || b == v))
    }

    /// Indicator of `E(S)`, the edges with both ends in `set`.
    pub fn inside(&self, set: &[usize]) -> RatVector {
        self.indicator(
            self.edges
                .iter()
                .map(|&(a, b)| set.contains(&a) && set.contains(&b)),
        )
    }

    /// Characteristic vector of an edge list.
    pub fn characteristic(&self, edges: &[(usize, usize)]) -> RatVector {
        let mut x = zero_vec(self.len());
        for &(v, w) in edges {
            x[self.index(v, w)] = Rational::one();
        }
        x
    }

    pub fn edge_label(&self, e: usize) -> String {
        let (a, b) = self.edges[e];
        format!("{{{},{}}}", a + 1, b + 1)
    }

    fn indicator(&self, bits: impl Iterator<Item = bool>) -> RatVector {
        bits.map(|b| if b { Rational::one() } else { Rational::zero() })
            .collect()
    }
}

fn set_label(set: &[usize]) -> String {
    format!("{{{}}}", set.iter().map(|v| v + 1).join(","))
}

fn neg(v: RatVector) -> RatVector {
    v.into_iter().map(|x| -x).collect()
}

fn push_all_nonneg(p: &mut HPoly, label: impl Fn(usize) -> String) {
    for j in 0..p.dim {
        p.push_nonneg(j, Some(label(j)));
    }
}

/// Matchings of `K_n` (all of them, or those with exactly `size` edges),
/// by cardinality, then lexicographically by edge index.
pub fn matchings(n: usize, size: Option<usize>) -> Vec<Vec<usize>> {
    let g = GraphEdgeIndex::new(n);
    let sizes: Vec<usize> = match size {
        Some(l) => vec![l],
        None => (0..=n / 2).collect(),
    };
    let mut out = Vec::new();
    for l in sizes {
        for combo in (0..g.len()).combinations(l) {
            let mut used = vec![false; n];
            let disjoint = combo.iter().all(|&e| {
                let (a, b) = g.edges[e];
                let free = !used[a] && !used[b];
                used[a] = true;
                used[b] = true;
                free
            });
            if disjoint {
                out.push(combo);
            }
        }
    }
    out
}

/// Characteristic vectors of the matchings of `K_n`, optionally restricted
/// to cardinality `size`.
pub fn matching_vrep(n: usize, size: Option<usize>) -> Result<VPoly> {
    if n == 0 {
        return Err(Error::input("matching polytope needs n ≥ 1"));
    }
    if let Some(l) = size {
        if l > n / 2 {
            return Err(Error::input(format!("K_{n} has no matching with {l} edges")));
        }
    }
    if n > 10 {
        return Err(Error::Size(format!("matching enumeration for n = {n}")));
    }
    let g = GraphEdgeIndex::new(n);
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for m in matchings(n, size) {
        let mut x = zero_vec(g.len());
        for &e in &m {
            x[e] = Rational::one();
        }
        points.push(x);
        let name = if m.is_empty() {
            "{}".to_string()
        } else {
            m.iter().map(|&e| g.edge_label(e)).join("")
        };
        labels.push(Some(format!("M{name}")));
    }
    VPoly::with_labels(g.len(), points, labels)
}

/// Edmonds' description of the matching polytope of `K_n`: nonnegativity,
/// degree rows and odd-set rows, the latter by size and then
/// lexicographically.
pub fn matching_hrep(n: usize) -> Result<HPoly> {
    if n < 2 {
        return Err(Error::input("matching description needs n ≥ 2"));
    }
    let g = GraphEdgeIndex::new(n);
    let mut p = HPoly::new(g.len());
    push_all_nonneg(&mut p, |e| format!("nonneg {}", g.edge_label(e)));
    for v in 0..n {
        p.push_ineq(g.star(v), Rational::one(), Some(format!("degree {}", v + 1)));
    }
    for s in (3..=n).step_by(2) {
        for set in (0..n).combinations(s) {
            p.push_ineq(
                g.inside(&set),
                int((s / 2) as i64),
                Some(format!("odd {}", set_label(&set))),
            );
        }
    }
    Ok(p)
}

/// All permutations of `(1, …, n)` in lexicographic order.
pub fn permutahedron_vrep(n: usize) -> Result<VPoly> {
    if n == 0 {
        return Err(Error::input("permutahedron needs n ≥ 1"));
    }
    if n > 8 {
        return Err(Error::Size(format!("{n}! permutations")));
    }
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for perm in (1..=n as i64).permutations(n) {
        labels.push(Some(format!("({})", perm.iter().join(","))));
        points.push(perm.into_iter().map(int).collect());
    }
    VPoly::with_labels(n, points, labels)
}

/// Rado's description: `x([n]) = n(n+1)/2` and `x(S) ≥ |S|(|S|+1)/2` for
/// every nonempty proper subset, by size and then lexicographically.
pub fn permutahedron_hrep(n: usize) -> Result<HPoly> {
    if n == 0 {
        return Err(Error::input("permutahedron needs n ≥ 1"));
    }
    if n > 20 {
        return Err(Error::Size(format!("2^{n} subset rows")));
    }
    let mut p = HPoly::new(n);
    for s in 1..n {
        for set in (0..n).combinations(s) {
            let mut a = zero_vec(n);
            for &i in &set {
                a[i] = -Rational::one();
            }
            let t = (s * (s + 1) / 2) as i64;
            p.push_ineq(a, int(-t), Some(format!("x{} >= {t}", set_label(&set))));
        }
    }
    p.push_eq(vec![Rational::one(); n], int((n * (n + 1) / 2) as i64), Some("sum".into()));
    Ok(p)
}

/// Doubly stochastic matrices, `y_ij` at coordinate `i·n + j`.
pub fn birkhoff_hrep(n: usize) -> Result<HPoly> {
    if n == 0 {
        return Err(Error::input("Birkhoff polytope needs n ≥ 1"));
    }
    let d = n * n;
    let mut p = HPoly::new(d);
    push_all_nonneg(&mut p, |k| format!("y{},{} >= 0", k / n + 1, k % n + 1));
    for i in 0..n {
        let mut a = zero_vec(d);
        for j in 0..n {
            a[i * n + j] = Rational::one();
        }
        p.push_eq(a, Rational::one(), Some(format!("row {}", i + 1)));
    }
    for j in 0..n {
        let mut a = zero_vec(d);
        for i in 0..n {
            a[i * n + j] = Rational::one();
        }
        p.push_eq(a, Rational::one(), Some(format!("column {}", j + 1)));
    }
    Ok(p)
}

/// Permutation matrices of order `n`, flattened row-major, in
/// lexicographic order of the permutations.
pub fn birkhoff_vrep(n: usize) -> Result<VPoly> {
    if n == 0 {
        return Err(Error::input("Birkhoff polytope needs n ≥ 1"));
    }
    if n > 7 {
        return Err(Error::Size(format!("{n}! permutation matrices")));
    }
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for perm in (0..n).permutations(n) {
        let mut y = zero_vec(n * n);
        for (i, &j) in perm.iter().enumerate() {
            y[i * n + j] = Rational::one();
        }
        points.push(y);
        labels.push(Some(format!("P({})", perm.iter().map(|j| j + 1).join(","))));
    }
    VPoly::with_labels(n * n, points, labels)
}

fn is_spanning_tree(n: usize, g: &GraphEdgeIndex, edges: &[usize]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &e in edges {
        let (a, b) = g.edges[e];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    edges.len() + 1 == n
}

/// Spanning trees of `K_n` as edge-index lists, lexicographically.
pub fn spanning_trees(n: usize) -> Vec<Vec<usize>> {
    let g = GraphEdgeIndex::new(n);
    (0..g.len())
        .combinations(n.saturating_sub(1))
        .filter(|c| is_spanning_tree(n, &g, c))
        .collect()
}

/// Characteristic vectors of the `n^(n−2)` spanning trees of `K_n`.
pub fn spanning_tree_vrep(n: usize) -> Result<VPoly> {
    if n < 2 {
        return Err(Error::input("spanning tree polytope needs n ≥ 2"));
    }
    if n > 7 {
        return Err(Error::Size(format!("{n}^{} spanning trees", n - 2)));
    }
    let g = GraphEdgeIndex::new(n);
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for t in spanning_trees(n) {
        let mut x = zero_vec(g.len());
        for &e in &t {
            x[e] = Rational::one();
        }
        points.push(x);
        labels.push(Some(format!("T{}", t.iter().map(|&e| g.edge_label(e)).join(""))));
    }
    VPoly::with_labels(g.len(), points, labels)
}

/// Edmonds' description of the spanning tree polytope: nonnegativity,
/// `x(E(S)) ≤ |S| − 1` for `2 ≤ |S| < n` and `x(E) = n − 1`.
pub fn spanning_tree_hrep(n: usize) -> Result<HPoly> {
    if n < 2 {
        return Err(Error::input("spanning tree polytope needs n ≥ 2"));
    }
    if n > 16 {
        return Err(Error::Size(format!("2^{n} subset rows")));
    }
    let g = GraphEdgeIndex::new(n);
    let mut p = HPoly::new(g.len());
    push_all_nonneg(&mut p, |e| format!("nonneg {}", g.edge_label(e)));
    for s in 2..n {
        for set in (0..n).combinations(s) {
            p.push_ineq(
                g.inside(&set),
                int(s as i64 - 1),
                Some(format!("subtour {}", set_label(&set))),
            );
        }
    }
    p.push_eq(vec![Rational::one(); g.len()], int(n as i64 - 1), Some("edges".into()));
    Ok(p)
}

/// Feasible 0/1 points of `⟨w, x⟩ ≤ W` in lexicographic order.
pub fn knapsack_vrep(w: &[u64], cap: u64) -> Result<VPoly> {
    let n = w.len();
    if n == 0 {
        return Err(Error::input("knapsack needs at least one item"));
    }
    if n > 20 {
        return Err(Error::Size(format!("2^{n} knapsack candidates")));
    }
    let mut points = Vec::new();
    for bits in (0..n).map(|_| [0u8, 1]).multi_cartesian_product() {
        let load: u64 = bits.iter().zip(w).map(|(&b, &wi)| b as u64 * wi).sum();
        if load <= cap {
            points.push(bits.into_iter().map(|b| int(b as i64)).collect());
        }
    }
    VPoly::new(n, points)
}

/// `[0, 1]^n`: rows `−x_i ≤ 0`, `x_i ≤ 1` for each `i`.
pub fn cube_hrep(n: usize) -> Result<HPoly> {
    if n == 0 {
        return Err(Error::input("cube needs n ≥ 1"));
    }
    let mut p = HPoly::new(n);
    for i in 0..n {
        p.push_nonneg(i, Some(format!("x{} >= 0", i + 1)));
        p.push_ineq(unit_vec(n, i), Rational::one(), Some(format!("x{} <= 1", i + 1)));
    }
    Ok(p)
}

/// The `2^n` vertices of `[0, 1]^n` in lexicographic order.
pub fn cube_vrep(n: usize) -> Result<VPoly> {
    if n == 0 {
        return Err(Error::input("cube needs n ≥ 1"));
    }
    knapsack_vrep(&vec![0; n], 0)
}

/// `±e_i` for each `i`, as `e_1, −e_1, e_2, …`.
pub fn cross_polytope_vrep(n: usize) -> Result<VPoly> {
    if n == 0 {
        return Err(Error::input("cross-polytope needs n ≥ 1"));
    }
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        points.push(unit_vec(n, i));
        labels.push(Some(format!("+e{}", i + 1)));
        points.push(neg(unit_vec(n, i)));
        labels.push(Some(format!("-e{}", i + 1)));
    }
    VPoly::with_labels(n, points, labels)
}

/// `Σ ±x_i ≤ 1` over all sign vectors, in lexicographic order of the signs
/// (with `+` before `−`).
pub fn cross_polytope_hrep(n: usize) -> Result<HPoly> {
    if n == 0 {
        return Err(Error::input("cross-polytope needs n ≥ 1"));
    }
    if n > 16 {
        return Err(Error::Size(format!("2^{n} facets")));
    }
    let mut p = HPoly::new(n);
    for signs in (0..n).map(|_| [1i64, -1]).multi_cartesian_product() {
        let label = signs.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect::<String>();
        p.push_ineq(signs.into_iter().map(int).collect(), Rational::one(), Some(label));
    }
    Ok(p)
}

/// Standard simplex `{y ∈ R^n : y ≥ 0, Σ y = 1}`.
pub fn simplex_hrep(n: usize) -> Result<HPoly> {
    if n == 0 {
        return Err(Error::input("simplex needs n ≥ 1"));
    }
    let mut p = HPoly::new(n);
    push_all_nonneg(&mut p, |i| format!("y{} >= 0", i + 1));
    p.push_eq(vec![Rational::one(); n], Rational::one(), Some("sum".into()));
    Ok(p)
}

/// Unit vectors of `R^n`.
pub fn simplex_vrep(n: usize) -> Result<VPoly> {
    if n == 0 {
        return Err(Error::input("simplex needs n ≥ 1"));
    }
    let labels = (0..n).map(|i| Some(format!("e{}", i + 1))).collect();
    VPoly::with_labels(n, (0..n).map(|i| unit_vec(n, i)).collect(), labels)
}
