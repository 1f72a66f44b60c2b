//! Lower bounds on extension complexity and the face-lattice embedding.

mod cover;
mod lattice;

pub use cover::{
    fooling_set_max, rectangle_cover_min, CoverOutcome, CoverStatus, FoolingSet, Rectangle,
    RectangleCover, SUPPORT_LIMIT,
};
pub use lattice::{embedding_check, face_lattice, EmbeddingReport, FaceLattice};

use crate::constructions::{verify_extension, Extension, Target};
use crate::error::{Error, Result};
use crate::kernel::linalg::rank_fraction_free;
use crate::kernel::rational::ceil_log2;
use crate::slack::{slack_matrix, SlackMatrix};

/// Node budget used when the caller has no preference.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// `⌈log₂ β⌉` for a lattice with `β` faces.
pub fn log_face_bound(lattice: &FaceLattice) -> u32 {
    ceil_log2(lattice.len().max(1))
}

pub fn rank_bound(slack: &SlackMatrix) -> usize {
    rank_fraction_free(&slack.entries)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnownExtension {
    pub name: String,
    pub size: usize,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub inequalities: usize,
    pub points: usize,
    pub rank: usize,
    pub faces: Option<usize>,
    pub log_faces: Option<u32>,
    pub cover: CoverOutcome,
    pub fooling: FoolingSet,
    pub known: Vec<KnownExtension>,
    pub lower: usize,
    /// Bounds attaining `lower`: `rank`, `rectangle cover`, `fooling set`,
    /// `log faces`.
    pub lower_sources: Vec<String>,
    pub upper: usize,
    /// Certificates attaining `upper`: `inequalities`, `points` or the name
    /// of a verified extension.
    pub upper_sources: Vec<String>,
}

impl BoundReport {
    /// Lower and upper bound agree.
    pub fn pinned(&self) -> bool {
        self.lower == self.upper
    }
}

/// Sandwich `lower ≤ xc(P) ≤ upper` from the slack matrix of a binding
/// description and the verified sizes of `known` extensions. The face bound
/// is skipped when the lattice is too large.
pub fn xc_bounds(target: &Target, known: &[Extension], budget: usize) -> Result<BoundReport> {
    let slack = slack_matrix(&target.hrep, &target.vrep)?;
    if let Some(row) = (0..slack.rows()).find(|&i| (0..slack.cols()).all(|j| slack.is_support(i, j))) {
        return Err(Error::NotBinding { row });
    }
    let rank = rank_bound(&slack);
    let lattice = match face_lattice(&target.hrep, &target.vrep) {
        Ok(l) => Some(l),
        Err(Error::Size(_)) => None,
        Err(e) => return Err(e),
    };
    let cover = rectangle_cover_min(&slack, budget);
    let fooling = fooling_set_max(&slack, budget);

    let known = known
        .iter()
        .map(|ext| {
            let verified = verify_extension(target, ext)?.passed();
            Ok(KnownExtension {
                name: ext.name.clone(),
                size: ext.size(),
                verified,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let lowers: Vec<(&str, usize)> = [
        Some(("rank", rank)),
        cover.exact_size().map(|c| ("rectangle cover", c)),
        Some(("fooling set", fooling.len())),
        lattice.as_ref().map(|l| ("log faces", log_face_bound(l) as usize)),
    ]
    .into_iter()
    .flatten()
    .collect();
    let lower = lowers.iter().map(|&(_, v)| v).max().unwrap_or(0);

    let mut uppers: Vec<(String, usize)> = vec![
        ("inequalities".to_string(), slack.rows()),
        ("points".to_string(), slack.cols()),
    ];
    uppers.extend(known.iter().filter(|k| k.verified).map(|k| (k.name.clone(), k.size)));
    let upper = uppers.iter().map(|(_, v)| *v).min().unwrap_or(0);

    if lower > upper {
        return Err(Error::Invariant(format!(
            "lower bound {lower} exceeds upper bound {upper}"
        )));
    }
    Ok(BoundReport {
        inequalities: slack.rows(),
        points: slack.cols(),
        rank,
        faces: lattice.as_ref().map(FaceLattice::len),
        log_faces: lattice.as_ref().map(log_face_bound),
        cover,
        fooling,
        known,
        lower,
        lower_sources: lowers
            .iter()
            .filter(|&&(_, v)| v == lower)
            .map(|&(s, _)| s.to_string())
            .collect(),
        upper,
        upper_sources: uppers
            .into_iter()
            .filter(|(_, v)| *v == upper)
            .map(|(s, _)| s)
            .collect(),
    })
}
