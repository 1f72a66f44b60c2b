use itertools::Itertools;
use num_traits::{One, Zero};

use super::Extension;
use crate::error::{Error, Result};
use crate::kernel::rational::{int, zero_vec};
use crate::kernel::{AffineMap, HPoly, Rational};

/// Comparator network on `n` wires; comparator `(i, j)` with `i < j` leaves
/// the smaller value on wire `i`. Wires are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortingNetwork {
    pub n: usize,
    pub comparators: Vec<(usize, usize)>,
}

impl SortingNetwork {
    pub fn new(n: usize, comparators: Vec<(usize, usize)>) -> Result<Self> {
        for &(i, j) in &comparators {
            if !(i < j && j < n) {
                return Err(Error::input(format!("bad comparator ({}, {})", i + 1, j + 1)));
            }
        }
        Ok(SortingNetwork { n, comparators })
    }

    pub fn len(&self) -> usize {
        self.comparators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comparators.is_empty()
    }

    pub fn apply<T: Ord>(&self, values: &mut [T]) {
        for &(i, j) in &self.comparators {
            if values[i] > values[j] {
                values.swap(i, j);
            }
        }
    }

    /// Whether every 0/1 input comes out sorted. Refuses `n > 24`.
    pub fn sorts_all_binary(&self) -> Result<bool> {
        if self.n > 24 {
            return Err(Error::Size(format!("2^{} binary inputs", self.n)));
        }
        for mask in 0u32..(1u32 << self.n) {
            let mut v: Vec<u32> = (0..self.n).map(|b| (mask >> b) & 1).collect();
            self.apply(&mut v);
            if v.windows(2).any(|p| p[0] > p[1]) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// All pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn bubble_network(n: usize) -> Result<SortingNetwork> {
    if n == 0 {
        return Err(Error::input("network needs n ≥ 1"));
    }
    SortingNetwork::new(n, (0..n).tuple_combinations().collect())
}

/// Batcher's odd-even mergesort for arbitrary `n`.
pub fn batcher_network(n: usize) -> Result<SortingNetwork> {
    if n == 0 {
        return Err(Error::input("network needs n ≥ 1"));
    }
    let mut comps = Vec::new();
    let mut p = 1;
    while p < n {
        let mut k = p;
        while k >= 1 {
            let mut j = k % p;
            while j + k < n {
                for i in 0..k.min(n - j - k) {
                    if (i + j) / (2 * p) == (i + j + k) / (2 * p) {
                        comps.push((i + j, i + j + k));
                    }
                }
                j += 2 * k;
            }
            k /= 2;
        }
        p *= 2;
    }
    SortingNetwork::new(n, comps)
}

/// Stage vectors `y⁰, …, y^r` (projected to `y⁰`). Comparator `s` on wires
/// `(i, j)` imposes `y^s_i + y^s_j = y^{s−1}_i + y^{s−1}_j`,
/// `y^s_i ≤ y^{s−1}_i`, `y^s_i ≤ y^{s−1}_j` and copies the other wires; the
/// last stage is pinned to `(1, …, n)`.
pub fn sorting_network_extension(n: usize, net: &SortingNetwork) -> Result<Extension> {
    if net.n != n || n == 0 {
        return Err(Error::input("network does not match the wire count"));
    }
    if n <= 16 && !net.sorts_all_binary()? {
        return Err(Error::input("network does not sort"));
    }
    let r = net.len();
    let d = n * (r + 1);
    let var = |stage: usize, wire: usize| stage * n + wire;
    let one = Rational::one();
    let mut q = HPoly::new(d);
    for (s0, &(i, j)) in net.comparators.iter().enumerate() {
        let s = s0 + 1;
        for u in (0..n).filter(|&u| u != i && u != j) {
            let mut a = zero_vec(d);
            a[var(s, u)] = one.clone();
            a[var(s - 1, u)] = -one.clone();
            q.push_eq(a, Rational::zero(), None);
        }
        let mut a = zero_vec(d);
        a[var(s, i)] = one.clone();
        a[var(s, j)] = one.clone();
        a[var(s - 1, i)] = -one.clone();
        a[var(s - 1, j)] = -one.clone();
        q.push_eq(a, Rational::zero(), Some(format!("stage {s} sum")));
        for w in [i, j] {
            let mut a = zero_vec(d);
            a[var(s, i)] = one.clone();
            a[var(s - 1, w)] = -one.clone();
            q.push_ineq(a, Rational::zero(), Some(format!("stage {s} min <= wire {}", w + 1)));
        }
    }
    for u in 0..n {
        let mut a = zero_vec(d);
        a[var(r, u)] = one.clone();
        q.push_eq(a, int(u as i64 + 1), Some(format!("sorted {}", u + 1)));
    }
    let coords: Vec<usize> = (0..n).collect();
    Extension::new(
        format!("sorting network({n}, {r} comparators)"),
        q,
        AffineMap::coordinate_projection(d, &coords),
    )
}
