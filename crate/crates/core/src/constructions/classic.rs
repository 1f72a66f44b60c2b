use num_traits::One;

use super::Extension;
use crate::error::{Error, Result};
use crate::kernel::rational::{int, zero_vec};
use crate::kernel::{AffineMap, HPoly, RatMatrix, RatVector, Rational};
use crate::zoo::{birkhoff_hrep, GraphEdgeIndex};

/// Doubly stochastic matrices mapped by `p(y)_i = Σ_j j·y_ij`.
pub fn birkhoff_extension(n: usize) -> Result<Extension> {
    let q = birkhoff_hrep(n)?;
    let mut t = RatMatrix::zeros(n, n * n);
    for i in 0..n {
        for j in 0..n {
            t[(i, i * n + j)] = int(j as i64 + 1);
        }
    }
    Extension::new(format!("birkhoff({n})"), q, AffineMap::linear(t))
}

/// Variable layout of Martin's formulation: edge variables first, then one
/// `z` per ordered triple of distinct nodes in lexicographic order.
struct MartinIndex {
    n: usize,
    edges: GraphEdgeIndex,
    triple: Vec<usize>,
    dim: usize,
}

impl MartinIndex {
    fn new(n: usize) -> Self {
        let edges = GraphEdgeIndex::new(n);
        let mut triple = vec![usize::MAX; n * n * n];
        let mut next = edges.len();
        for v in 0..n {
            for w in 0..n {
                for u in 0..n {
                    if v != w && w != u && v != u {
                        triple[(v * n + w) * n + u] = next;
                        next += 1;
                    }
                }
            }
        }
        MartinIndex {
            n,
            edges,
            triple,
            dim: next,
        }
    }

    fn z(&self, v: usize, w: usize, u: usize) -> usize {
        self.triple[(v * self.n + w) * self.n + u]
    }
}

/// Martin's extended formulation of the spanning tree polytope of `K_n`:
/// `x_vw − z_vwu − z_wvu = 0`, `x_vw + Σ_u z_vuw = 1`, `x(E) = n − 1` and
/// nonnegativity, projected to `x`.
pub fn martin_spanning_tree_extension(n: usize) -> Result<Extension> {
    if n < 3 {
        return Err(Error::input("Martin's formulation needs n ≥ 3"));
    }
    let idx = MartinIndex::new(n);
    let m = idx.edges.len();
    let mut q = HPoly::new(idx.dim);
    for e in 0..m {
        q.push_nonneg(e, Some(format!("x{} >= 0", idx.edges.edge_label(e))));
    }
    for v in 0..n {
        for w in 0..n {
            for u in 0..n {
                if v != w && w != u && v != u {
                    q.push_nonneg(
                        idx.z(v, w, u),
                        Some(format!("z{},{},{} >= 0", v + 1, w + 1, u + 1)),
                    );
                }
            }
        }
    }
    let one = Rational::one();
    for (e, &(v, w)) in idx.edges.edges.iter().enumerate() {
        for u in (0..n).filter(|&u| u != v && u != w) {
            let mut a = zero_vec(idx.dim);
            a[e] = one.clone();
            a[idx.z(v, w, u)] = -one.clone();
            a[idx.z(w, v, u)] = -one.clone();
            q.push_eq(a, Rational::from_integer(0.into()), None);
        }
    }
    for v in 0..n {
        for w in (0..n).filter(|&w| w != v) {
            let mut a = zero_vec(idx.dim);
            a[idx.edges.index(v, w)] = one.clone();
            for u in (0..n).filter(|&u| u != v && u != w) {
                a[idx.z(v, u, w)] = one.clone();
            }
            q.push_eq(a, one.clone(), None);
        }
    }
    let mut total = zero_vec(idx.dim);
    for x in &mut total[..m] {
        *x = one.clone();
    }
    q.push_eq(total, int(n as i64 - 1), Some("edges".into()));
    let coords: Vec<usize> = (0..m).collect();
    Extension::new(
        format!("martin({n})"),
        q,
        AffineMap::coordinate_projection(idx.dim, &coords),
    )
}

/// The point of Martin's `Q` encoding spanning tree `tree`: `z_vwu = 1` iff
/// `{v, w}` is a tree edge and `u` lies on `w`'s side once it is removed.
pub fn martin_tree_lift(n: usize, tree: &[(usize, usize)]) -> Result<RatVector> {
    if n < 3 || tree.len() + 1 != n {
        return Err(Error::input("not a spanning tree edge list"));
    }
    let idx = MartinIndex::new(n);
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in tree {
        if a >= n || b >= n || a == b {
            return Err(Error::input("not a spanning tree edge list"));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut y = zero_vec(idx.dim);
    for &(a, b) in tree {
        y[idx.edges.index(a, b)] = Rational::one();
        for (v, w) in [(a, b), (b, a)] {
            // Nodes reachable from w without crossing {v, w}.
            let mut side = vec![false; n];
            side[w] = true;
            let mut stack = vec![w];
            while let Some(x) = stack.pop() {
                for &nb in &adj[x] {
                    if nb != v && !side[nb] {
                        side[nb] = true;
                        stack.push(nb);
                    }
                }
            }
            for u in (0..n).filter(|&u| u != v && u != w && side[u]) {
                y[idx.z(v, w, u)] = Rational::one();
            }
        }
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn birkhoff_projects_permutation_matrices() {
        let ext = birkhoff_extension(3).unwrap();
        assert_eq!(ext.size(), 9);
        // Permutation 2,3,1 as a matrix: y_{1,2} = y_{2,3} = y_{3,1} = 1.
        let mut y = zero_vec(9);
        for k in [1, 5, 6] {
            y[k] = Rational::one();
        }
        assert_eq!(ext.proj.apply(&y), crate::kernel::rational::vec_from_ints(&[2, 3, 1]));
        let one = birkhoff_extension(1).unwrap();
        assert_eq!(one.proj.apply(&[Rational::one()]), vec![Rational::one()]);
    }

    #[test]
    fn martin_sizes() {
        assert_eq!(martin_spanning_tree_extension(3).unwrap().size(), 9);
        assert_eq!(martin_spanning_tree_extension(4).unwrap().size(), 30);
        assert_eq!(martin_spanning_tree_extension(5).unwrap().size(), 70);
        assert!(martin_spanning_tree_extension(2).is_err());
    }

    #[test]
    fn star_lifts_into_q() {
        let ext = martin_spanning_tree_extension(4).unwrap();
        let star = [(0, 1), (0, 2), (0, 3)];
        let y = martin_tree_lift(4, &star).unwrap();
        assert!(ext.q.contains(&y));
        let path = [(0, 1), (1, 2), (2, 3)];
        let y = martin_tree_lift(4, &path).unwrap();
        assert!(ext.q.contains(&y));
    }
}
