use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{balas_union, Extension};
use crate::error::{Error, Result};
use crate::kernel::{hull, VPoly};
use crate::zoo::{matchings, GraphEdgeIndex};

/// Map from the `n` nodes to colors `1..=2k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    pub n: usize,
    pub k: usize,
    pub assignment: Vec<usize>,
}

impl Coloring {
    pub fn new(k: usize, assignment: Vec<usize>) -> Result<Self> {
        if k == 0 {
            return Err(Error::input("coloring needs k ≥ 1"));
        }
        if let Some(&c) = assignment.iter().find(|&&c| c == 0 || c > 2 * k) {
            return Err(Error::input(format!("color {c} outside 1..={}", 2 * k)));
        }
        Ok(Coloring {
            n: assignment.len(),
            k,
            assignment,
        })
    }

    pub fn colors_used(&self) -> usize {
        self.assignment.iter().unique().count()
    }

    /// Whether the nodes of `set` get pairwise different colors.
    pub fn is_rainbow(&self, set: &[usize]) -> bool {
        set.iter().map(|&v| self.assignment[v]).all_unique()
    }
}

/// Characteristic vectors of the `k`-matchings of `K_n` whose `2k` end nodes
/// hit every color class exactly once.
pub fn colorful_matchings(n: usize, k: usize, zeta: &Coloring) -> Result<VPoly> {
    if zeta.n != n || zeta.k != k {
        return Err(Error::input("coloring does not match (n, k)"));
    }
    if 2 * k > n {
        return Err(Error::input(format!("no {k}-matching in K_{n}")));
    }
    if zeta.colors_used() != 2 * k {
        return Err(Error::input(format!(
            "coloring uses {} colors, expected exactly {}",
            zeta.colors_used(),
            2 * k
        )));
    }
    let g = GraphEdgeIndex::new(n);
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for m in matchings(n, Some(k)) {
        let ends: Vec<usize> = m.iter().flat_map(|&e| [g.edges[e].0, g.edges[e].1]).collect();
        if zeta.is_rainbow(&ends) {
            let mut x = crate::kernel::rational::zero_vec(g.len());
            for &e in &m {
                x[e] = num_traits::One::one();
            }
            points.push(x);
            labels.push(Some(format!("M{}", m.iter().map(|&e| g.edge_label(e)).join(""))));
        }
    }
    VPoly::with_labels(g.len(), points, labels)
}

/// Colorings such that every `2k`-subset of nodes is rainbow in one of them.
/// `witness[s]` is the first coloring that makes subset `s` (in
/// lexicographic order) rainbow; it is filled by an exhaustive check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringFamily {
    pub n: usize,
    pub k: usize,
    pub colorings: Vec<Coloring>,
    pub subsets_checked: usize,
    pub witness: Vec<usize>,
}

impl ColoringFamily {
    pub fn len(&self) -> usize {
        self.colorings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colorings.is_empty()
    }

    /// Recomputes the certificate from scratch.
    pub fn certify(&self) -> bool {
        let subsets: Vec<Vec<usize>> = (0..self.n).combinations(2 * self.k).collect();
        subsets.len() == self.subsets_checked
            && subsets.len() == self.witness.len()
            && subsets
                .iter()
                .zip(&self.witness)
                .all(|(s, &w)| w < self.colorings.len() && self.colorings[w].is_rainbow(s))
    }
}

/// Base seed of the random coloring pool; mixed with `n` and `k`.
pub const FAMILY_SEED: u64 = 0x5eed_c010;
const CANDIDATES: usize = 256;

fn random_surjection(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Coloring {
    let colors = 2 * k;
    loop {
        let a: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=colors)).collect();
        if a.iter().unique().count() == colors {
            return Coloring { n, k, assignment: a };
        }
    }
}

/// Greedy set cover over seeded random colorings, completed by one targeted
/// coloring per subset left uncovered, then checked exhaustively.
pub fn covering_coloring_family(n: usize, k: usize) -> Result<ColoringFamily> {
    if k == 0 || 2 * k > n {
        return Err(Error::input(format!("need 1 ≤ k and 2k ≤ n, got n = {n}, k = {k}")));
    }
    if n > 12 || k > 3 {
        return Err(Error::Size(format!("coloring family for n = {n}, k = {k}")));
    }
    let subsets: Vec<Vec<usize>> = (0..n).combinations(2 * k).collect();
    let mut colorings = Vec::new();
    if n == 2 * k {
        colorings.push(Coloring::new(k, (1..=n).collect())?);
    } else {
        let seed = FAMILY_SEED ^ ((n as u64) << 8) ^ k as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool: Vec<Coloring> = (0..CANDIDATES).map(|_| random_surjection(&mut rng, n, k)).collect();
        let mut uncovered = vec![true; subsets.len()];
        loop {
            let gain = |c: &Coloring| {
                subsets
                    .iter()
                    .zip(&uncovered)
                    .filter(|(s, &u)| u && c.is_rainbow(s))
                    .count()
            };
            // max_by_key keeps the last maximum; rev() makes it the first.
            let Some((best, g)) = pool.iter().map(|c| (c, gain(c))).rev().max_by_key(|&(_, g)| g) else {
                break;
            };
            if g == 0 {
                break;
            }
            for (s, u) in subsets.iter().zip(uncovered.iter_mut()) {
                if best.is_rainbow(s) {
                    *u = false;
                }
            }
            colorings.push(best.clone());
        }
        for (s, u) in subsets.iter().zip(&uncovered) {
            if *u && !colorings.iter().any(|c| c.is_rainbow(s)) {
                let mut a = vec![1; n];
                for (c, &v) in s.iter().enumerate() {
                    a[v] = c + 1;
                }
                colorings.push(Coloring::new(k, a)?);
            }
        }
    }
    let witness: Vec<usize> = subsets
        .iter()
        .map(|s| {
            colorings
                .iter()
                .position(|c| c.is_rainbow(s))
                .ok_or_else(|| Error::invariant("coloring family misses a subset"))
        })
        .collect::<Result<_>>()?;
    Ok(ColoringFamily {
        n,
        k,
        colorings,
        subsets_checked: subsets.len(),
        witness,
    })
}

/// `M_k(n)` as the Balas union of the colorful matching polytopes of a
/// covering family. Colorings without colorful matchings contribute nothing.
pub fn colorful_matching_extension(n: usize, k: usize) -> Result<(Extension, ColoringFamily)> {
    let family = covering_coloring_family(n, k)?;
    let mut parts = Vec::new();
    for zeta in &family.colorings {
        let points = colorful_matchings(n, k, zeta)?;
        if !points.is_empty() {
            parts.push(hull(&points)?);
        }
    }
    let mut ext = balas_union(&parts)?;
    ext.name = format!("colorful matchings({n}, {k})");
    Ok((ext, family))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_distinct_colors_give_perfect_matchings() {
        let zeta = Coloring::new(2, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(colorful_matchings(4, 2, &zeta).unwrap().len(), 3);
    }

    #[test]
    fn too_few_colors_rejected() {
        let zeta = Coloring::new(2, vec![1, 1, 2, 2]).unwrap();
        assert!(matches!(colorful_matchings(4, 2, &zeta), Err(Error::Input(_))));
        assert!(Coloring::new(2, vec![1, 5]).is_err());
    }

    #[test]
    fn shared_color_class() {
        // Nodes 4 and 5 share color 4; matchings use one of them.
        let zeta = Coloring::new(2, vec![1, 2, 3, 4, 4]).unwrap();
        let m = colorful_matchings(5, 2, &zeta).unwrap();
        assert_eq!(m.len(), 6);
    }

    #[test]
    fn families_are_certified() {
        for (n, k) in [(4, 2), (5, 2), (6, 2), (7, 3), (9, 2)] {
            let f = covering_coloring_family(n, k).unwrap();
            assert!(f.certify(), "n = {n}, k = {k}");
        }
        assert_eq!(covering_coloring_family(4, 2).unwrap().len(), 1);
        assert!(covering_coloring_family(13, 2).is_err());
    }
}
