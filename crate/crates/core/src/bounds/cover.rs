use std::collections::HashSet;

use crate::kernel::BitSet;
use crate::slack::SlackMatrix;

/// Exact searches refuse matrices with a larger support.
pub const SUPPORT_LIMIT: usize = 64;

/// Rows `I` and columns `J` with `I × J` inside the support.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rectangle {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverStatus {
    /// Proven minimum: a lower bound on extension complexity.
    Exact,
    /// Some cover: only an upper bound on the minimum cover.
    Greedy,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectangleCover {
    pub rows: usize,
    pub cols: usize,
    pub rectangles: Vec<Rectangle>,
    pub status: CoverStatus,
}

impl RectangleCover {
    pub fn len(&self) -> usize {
        self.rectangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rectangles.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.status == CoverStatus::Exact
    }

    /// Every rectangle lies in the support and together they cover it.
    pub fn covers(&self, slack: &SlackMatrix) -> bool {
        let inside = self.rectangles.iter().all(|r| {
            r.rows
                .iter()
                .all(|&i| r.cols.iter().all(|&j| i < slack.rows() && j < slack.cols() && slack.is_support(i, j)))
        });
        let covered: HashSet<(usize, usize)> = self
            .rectangles
            .iter()
            .flat_map(|r| r.rows.iter().flat_map(|&i| r.cols.iter().map(move |&j| (i, j))))
            .collect();
        inside && support_entries(slack).iter().all(|e| covered.contains(e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverOutcome {
    Found(RectangleCover),
    /// The search ran out of nodes; `best` is the best cover seen, not
    /// proven minimal.
    ExceedsBudget { best: RectangleCover, nodes: usize },
}

impl CoverOutcome {
    /// The proven minimum, if any.
    pub fn exact_size(&self) -> Option<usize> {
        match self {
            CoverOutcome::Found(c) if c.is_exact() => Some(c.len()),
            _ => None,
        }
    }

    pub fn cover(&self) -> &RectangleCover {
        match self {
            CoverOutcome::Found(c) => c,
            CoverOutcome::ExceedsBudget { best, .. } => best,
        }
    }
}

fn support_entries(slack: &SlackMatrix) -> Vec<(usize, usize)> {
    (0..slack.rows())
        .flat_map(|i| (0..slack.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| slack.is_support(i, j))
        .collect()
}

/// Entries `a`, `b` cannot share a rectangle.
fn separated(slack: &SlackMatrix, a: (usize, usize), b: (usize, usize)) -> bool {
    !slack.is_support(a.0, b.1) || !slack.is_support(b.0, a.1)
}

/// Inclusion-maximal rectangles: closed column sets are the intersections of
/// nonempty row supports. With `all = false` only the row supports
/// themselves are closed, which still covers the support.
fn maximal_rectangles(slack: &SlackMatrix, all: bool) -> Vec<Rectangle> {
    let row_sets: Vec<BitSet> = (0..slack.rows())
        .map(|i| BitSet::from_indices(slack.cols(), (0..slack.cols()).filter(|&j| slack.is_support(i, j))))
        .collect();
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut queue: Vec<BitSet> = Vec::new();
    for r in row_sets.iter().filter(|r| !r.is_empty()) {
        if seen.insert(r.clone()) && all {
            queue.push(r.clone());
        }
    }
    while let Some(j) = queue.pop() {
        for r in &row_sets {
            let k = j.intersection(r);
            if !k.is_empty() && seen.insert(k.clone()) {
                queue.push(k);
            }
        }
    }
    let mut rects: Vec<Rectangle> = seen
        .into_iter()
        .map(|j| Rectangle {
            rows: (0..slack.rows()).filter(|&i| j.is_subset(&row_sets[i])).collect(),
            cols: j.iter().collect(),
        })
        .collect();
    rects.sort();
    rects
}

struct CoverSearch<'a> {
    slack: &'a SlackMatrix,
    entries: Vec<(usize, usize)>,
    rect_sets: Vec<BitSet>,
    covering: Vec<Vec<usize>>,
    max_rect: usize,
    best: Vec<usize>,
    nodes: usize,
    budget: usize,
}

impl CoverSearch<'_> {
    /// Greedy fooling set inside `uncovered`, and a counting bound.
    fn lower_bound(&self, uncovered: &BitSet) -> usize {
        let mut fool: Vec<usize> = Vec::new();
        for e in uncovered.iter() {
            if fool
                .iter()
                .all(|&f| separated(self.slack, self.entries[e], self.entries[f]))
            {
                fool.push(e);
            }
        }
        fool.len().max(uncovered.count().div_ceil(self.max_rect.max(1)))
    }

    /// Returns false once the budget is spent.
    fn search(&mut self, uncovered: &BitSet, chosen: &mut Vec<usize>) -> bool {
        if uncovered.is_empty() {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if chosen.len() + self.lower_bound(uncovered) >= self.best.len() {
            return true;
        }
        let Some(e) = uncovered.iter().min_by_key(|&e| self.covering[e].len()) else {
            return true;
        };
        let mut options = self.covering[e].clone();
        options.sort_by_key(|&r| std::cmp::Reverse(self.rect_sets[r].intersection(uncovered).count()));
        for r in options {
            let rest = uncovered.intersection(&complement(&self.rect_sets[r]));
            chosen.push(r);
            let ok = self.search(&rest, chosen);
            chosen.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

fn complement(s: &BitSet) -> BitSet {
    let mut c = BitSet::full(s.capacity());
    for i in s.iter() {
        c.remove(i);
    }
    c
}

fn greedy_cover(rect_sets: &[BitSet], n_entries: usize) -> Vec<usize> {
    let mut uncovered = BitSet::full(n_entries);
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let gain = |r: usize| rect_sets[r].intersection(&uncovered).count();
        let Some(r) = (0..rect_sets.len()).rev().max_by_key(|&r| gain(r)) else {
            break;
        };
        uncovered = uncovered.intersection(&complement(&rect_sets[r]));
        chosen.push(r);
    }
    chosen
}

/// Minimum number of rectangles covering the support, by branch and bound
/// over maximal rectangles. Supports above [`SUPPORT_LIMIT`] get a greedy
/// cover. `budget` caps the number of search nodes.
pub fn rectangle_cover_min(slack: &SlackMatrix, budget: usize) -> CoverOutcome {
    let entries = support_entries(slack);
    let rects = maximal_rectangles(slack, entries.len() <= SUPPORT_LIMIT);
    let rect_sets: Vec<BitSet> = rects
        .iter()
        .map(|r| {
            BitSet::from_indices(
                entries.len(),
                entries
                    .iter()
                    .enumerate()
                    .filter(|(_, (i, j))| r.rows.contains(i) && r.cols.contains(j))
                    .map(|(e, _)| e),
            )
        })
        .collect();
    let make = |chosen: &[usize], status| {
        let mut rectangles: Vec<Rectangle> = chosen.iter().map(|&r| rects[r].clone()).collect();
        rectangles.sort();
        RectangleCover {
            rows: slack.rows(),
            cols: slack.cols(),
            rectangles,
            status,
        }
    };
    let greedy = greedy_cover(&rect_sets, entries.len());
    if entries.len() > SUPPORT_LIMIT {
        return CoverOutcome::Found(make(&greedy, CoverStatus::Greedy));
    }
    let covering = (0..entries.len())
        .map(|e| (0..rects.len()).filter(|&r| rect_sets[r].contains(e)).collect())
        .collect();
    let mut s = CoverSearch {
        slack,
        max_rect: rect_sets.iter().map(BitSet::count).max().unwrap_or(0),
        entries,
        rect_sets,
        covering,
        best: greedy,
        nodes: 0,
        budget,
    };
    let all = BitSet::full(s.entries.len());
    if s.search(&all, &mut Vec::new()) {
        CoverOutcome::Found(make(&s.best, CoverStatus::Exact))
    } else {
        CoverOutcome::ExceedsBudget {
            best: make(&s.best, CoverStatus::Greedy),
            nodes: s.nodes,
        }
    }
}

/// Support entries, no two of which fit in a common rectangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoolingSet {
    pub entries: Vec<(usize, usize)>,
    /// Proven maximum. A non-exact set is still a valid lower bound.
    pub exact: bool,
}

impl FoolingSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_valid(&self, slack: &SlackMatrix) -> bool {
        self.entries.iter().all(|&(i, j)| slack.is_support(i, j))
            && self
                .entries
                .iter()
                .enumerate()
                .all(|(k, &a)| self.entries[k + 1..].iter().all(|&b| separated(slack, a, b)))
    }
}

struct CliqueSearch {
    adj: Vec<BitSet>,
    best: Vec<usize>,
    nodes: usize,
    budget: usize,
}

impl CliqueSearch {
    /// Candidates in nondecreasing order of greedy color, with the colors.
    fn color_sort(&self, cand: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut left = cand.clone();
        let mut order = Vec::new();
        let mut colors = Vec::new();
        let mut color = 0;
        while !left.is_empty() {
            color += 1;
            let mut avail = left.clone();
            loop {
                let Some(v) = avail.iter().next() else {
                    break;
                };
                avail.remove(v);
                avail = avail.intersection(&complement(&self.adj[v]));
                left.remove(v);
                order.push(v);
                colors.push(color);
            }
        }
        (order, colors)
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut cand: BitSet) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if cand.is_empty() {
            if clique.len() > self.best.len() {
                self.best = clique.clone();
            }
            return true;
        }
        let (order, colors) = self.color_sort(&cand);
        for k in (0..order.len()).rev() {
            if clique.len() + colors[k] <= self.best.len() {
                return true;
            }
            let v = order[k];
            clique.push(v);
            let ok = self.expand(clique, cand.intersection(&self.adj[v]));
            clique.pop();
            if !ok {
                return false;
            }
            cand.remove(v);
        }
        true
    }
}

/// Largest fooling set, as a maximum clique in the graph joining support
/// entries that cannot share a rectangle. Above [`SUPPORT_LIMIT`] or when
/// the budget runs out, the best set found is returned with `exact = false`.
pub fn fooling_set_max(slack: &SlackMatrix, budget: usize) -> FoolingSet {
    let entries = support_entries(slack);
    let n = entries.len();
    let adj: Vec<BitSet> = (0..n)
        .map(|a| BitSet::from_indices(n, (0..n).filter(|&b| b != a && separated(slack, entries[a], entries[b]))))
        .collect();
    let mut greedy: Vec<usize> = Vec::new();
    for e in 0..n {
        if greedy.iter().all(|&f| adj[e].contains(f)) {
            greedy.push(e);
        }
    }
    let mut s = CliqueSearch {
        adj,
        best: greedy,
        nodes: 0,
        budget,
    };
    let exact = n <= SUPPORT_LIMIT && s.expand(&mut Vec::new(), BitSet::full(n));
    let mut best = s.best;
    best.sort();
    FoolingSet {
        entries: best.into_iter().map(|e| entries[e]).collect(),
        exact,
    }
}
