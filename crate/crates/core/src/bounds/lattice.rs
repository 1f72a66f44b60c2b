use std::collections::{HashMap, HashSet};

use num_traits::{Signed, Zero};

use crate::constructions::{verify_extension, Extension, Target};
use crate::error::{Error, Result};
use crate::kernel::rational::sub;
use crate::kernel::{vertices, BitSet, HPoly, RatMatrix, VPoly};

const MAX_FACETS: usize = 10;
const MAX_VERTICES: usize = 12;

/// Faces of a polytope as vertex subsets, ordered by size and then
/// lexicographically. `dims[k]` is the dimension of `faces[k]`, `-1` for `∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    pub n_vertices: usize,
    pub faces: Vec<BitSet>,
    pub dims: Vec<isize>,
    index: HashMap<BitSet, usize>,
}

impl FaceLattice {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn index_of(&self, face: &BitSet) -> Option<usize> {
        self.index.get(face).copied()
    }

    /// Containment order.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.faces[a].is_subset(&self.faces[b])
    }

    /// `counts_by_dim()[d + 1]` faces of dimension `d`.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let top = self.dims.iter().copied().max().unwrap_or(-1);
        let mut counts = vec![0; (top + 2) as usize];
        for &d in &self.dims {
            counts[(d + 1) as usize] += 1;
        }
        counts
    }

    /// Faces covering `∅`.
    pub fn atoms(&self) -> Vec<usize> {
        self.covers_of(|k| self.faces[k].is_empty())
    }

    /// Faces covered by the whole polytope.
    pub fn coatoms(&self) -> Vec<usize> {
        let top = self.faces.len() - 1;
        (0..self.faces.len())
            .filter(|&k| k != top && self.dims[k] == self.dims[top] - 1)
            .collect()
    }

    fn covers_of(&self, bottom: impl Fn(usize) -> bool) -> Vec<usize> {
        let Some(b) = (0..self.faces.len()).find(|&k| bottom(k)) else {
            return Vec::new();
        };
        (0..self.faces.len())
            .filter(|&k| k != b && self.dims[k] == self.dims[b] + 1)
            .collect()
    }

    pub fn is_intersection_closed(&self) -> bool {
        self.faces.iter().enumerate().all(|(a, fa)| {
            self.faces[a + 1..]
                .iter()
                .all(|fb| self.index.contains_key(&fa.intersection(fb)))
        })
    }
}

fn affine_dim(points: &[&[crate::kernel::Rational]], dim: usize) -> isize {
    match points.split_first() {
        None => -1,
        Some((first, rest)) => {
            let rows = rest.iter().map(|p| sub(p, first)).collect();
            RatMatrix::from_rows(dim, rows).rank() as isize
        }
    }
}

/// Vertex sets tight on each inequality. Errors if a point violates a row.
fn zero_sets(hrep: &HPoly, vrep: &VPoly) -> Result<Vec<BitSet>> {
    hrep.ineqs
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut z = BitSet::new(vrep.len());
            for (j, x) in vrep.points.iter().enumerate() {
                let s = r.slack(x);
                if s.is_negative() {
                    return Err(Error::PointOutside { row: i, col: j });
                }
                if s.is_zero() {
                    z.insert(j);
                }
            }
            Ok(z)
        })
        .collect()
}

fn sorted_faces(mut faces: Vec<BitSet>) -> Vec<BitSet> {
    faces.sort_by_cached_key(|f| (f.count(), f.iter().collect::<Vec<_>>()));
    faces
}

/// All faces as intersections of facet zero sets, starting from the full
/// vertex set. `vrep` must list exactly the vertices of the polytope `hrep`.
pub fn face_lattice(hrep: &HPoly, vrep: &VPoly) -> Result<FaceLattice> {
    Error::check_dim(hrep.dim, vrep.dim)?;
    if hrep.ineqs.len() > MAX_FACETS && vrep.len() > MAX_VERTICES {
        return Err(Error::Size(format!(
            "face lattice with {} inequalities and {} vertices",
            hrep.ineqs.len(),
            vrep.len()
        )));
    }
    let zs = zero_sets(hrep, vrep)?;
    let full = BitSet::full(vrep.len());
    let mut seen: HashSet<BitSet> = HashSet::from([full.clone(), BitSet::new(vrep.len())]);
    let mut queue = vec![full];
    while let Some(f) = queue.pop() {
        for z in &zs {
            let g = f.intersection(z);
            if seen.insert(g.clone()) {
                queue.push(g);
            }
        }
    }
    let faces = sorted_faces(seen.into_iter().collect());
    let dims = faces
        .iter()
        .map(|f| {
            let pts: Vec<&[_]> = f.iter().map(|j| vrep.points[j].as_slice()).collect();
            affine_dim(&pts, vrep.dim)
        })
        .collect();
    let index = faces.iter().cloned().enumerate().map(|(k, f)| (f, k)).collect();
    Ok(FaceLattice {
        n_vertices: vrep.len(),
        faces,
        dims,
        index,
    })
}

/// The face map `F ↦ p⁻¹(F) ∩ Q` on the two computed lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub target_faces: usize,
    pub extension_faces: usize,
    /// `preimage[k]` indexes the extension lattice.
    pub preimage: Vec<usize>,
    pub injective: bool,
    pub order_embedding: bool,
}

impl EmbeddingReport {
    pub fn holds(&self) -> bool {
        self.injective && self.order_embedding
    }
}

/// Maps every face of `P` to the face of `Q` formed by the vertices whose
/// image satisfies all rows of `P` tight on that face.
pub fn embedding_check(target: &Target, ext: &Extension) -> Result<EmbeddingReport> {
    let report = verify_extension(target, ext)?;
    if !report.passed() {
        return Err(Error::NotVerified(ext.name.clone()));
    }
    let lp = face_lattice(&target.hrep, &target.vrep)?;
    let qverts = vertices(&ext.q)?;
    let lq = face_lattice(&ext.q, &qverts)?;
    let p_zero = zero_sets(&target.hrep, &target.vrep)?;
    let images: Vec<_> = qverts.points.iter().map(|y| ext.proj.apply(y)).collect();
    let preimage = lp
        .faces
        .iter()
        .map(|f| {
            let mut pre = BitSet::new(qverts.len());
            if !f.is_empty() {
                let tight: Vec<usize> = (0..p_zero.len()).filter(|&i| f.is_subset(&p_zero[i])).collect();
                for (j, x) in images.iter().enumerate() {
                    if tight.iter().all(|&i| target.hrep.ineqs[i].slack(x).is_zero()) {
                        pre.insert(j);
                    }
                }
            }
            lq.index_of(&pre)
                .ok_or_else(|| Error::invariant("preimage of a face is not a face"))
        })
        .collect::<Result<Vec<usize>>>()?;
    let injective = preimage.iter().collect::<HashSet<_>>().len() == preimage.len();
    let order_embedding = (0..lp.len()).all(|a| {
        (0..lp.len()).all(|b| lp.leq(a, b) == lq.leq(preimage[a], preimage[b]))
    });
    Ok(EmbeddingReport {
        target_faces: lp.len(),
        extension_faces: lq.len(),
        preimage,
        injective,
        order_embedding,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::birkhoff_extension;
    use crate::zoo::{cross_polytope_vrep, cube_hrep, cube_vrep, permutahedron_hrep, permutahedron_vrep, simplex_hrep, simplex_vrep};
    use crate::kernel::hull;

    #[test]
    fn small_lattices() {
        let sq = face_lattice(&cube_hrep(2).unwrap(), &cube_vrep(2).unwrap()).unwrap();
        assert_eq!(sq.len(), 10);
        assert_eq!(sq.counts_by_dim(), vec![1, 4, 4, 1]);
        assert_eq!((sq.atoms().len(), sq.coatoms().len()), (4, 4));
        assert!(sq.is_intersection_closed());

        let tet = face_lattice(&simplex_hrep(4).unwrap(), &simplex_vrep(4).unwrap()).unwrap();
        assert_eq!(tet.len(), 16);

        let cv = cross_polytope_vrep(3).unwrap();
        let oct = face_lattice(&hull(&cv).unwrap(), &cv).unwrap();
        assert_eq!(oct.len(), 28);
        assert_eq!(oct.counts_by_dim(), vec![1, 6, 12, 8, 1]);
    }

    #[test]
    fn size_guard() {
        let h = cube_hrep(6).unwrap();
        let v = cube_vrep(6).unwrap();
        assert!(matches!(face_lattice(&h, &v), Err(Error::Size(_))));
    }

    #[test]
    fn embeddings() {
        let cv = cross_polytope_vrep(3).unwrap();
        let target = Target::from_vrep(cv.clone()).unwrap();
        let r = embedding_check(&target, &Extension::trivial(&cv).unwrap()).unwrap();
        assert!(r.holds());
        assert_eq!((r.target_faces, r.extension_faces), (28, 64));

        let pi = Target::new(permutahedron_hrep(3).unwrap(), permutahedron_vrep(3).unwrap()).unwrap();
        let r = embedding_check(&pi, &birkhoff_extension(3).unwrap()).unwrap();
        assert!(r.holds());

        let sq = Target::new(cube_hrep(2).unwrap(), cube_vrep(2).unwrap()).unwrap();
        let r = embedding_check(&sq, &Extension::identity(&sq.hrep)).unwrap();
        assert!(r.holds());
        assert_eq!(r.target_faces, r.extension_faces);
    }
}
