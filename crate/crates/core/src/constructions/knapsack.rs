use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use super::Extension;
use crate::error::{Error, Result};
use crate::kernel::rational::zero_vec;
use crate::kernel::{AffineMap, HPoly, RatMatrix, Rational};

/// Node of the knapsack dynamic-programming network. `Item` nodes are
/// 0-based in the item index; `weight` is the load after packing it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Source,
    Item { item: usize, weight: u64 },
    Sink,
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Source => write!(f, "s"),
            Node::Sink => write!(f, "t"),
            Node::Item { item, weight } => write!(f, "({},{})", item + 1, weight),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub from: Node,
    pub to: Node,
}

/// Acyclic network whose `s`-`t` paths are the feasible packings: item
/// nodes `(i, ω)` reachable from `s`, arcs `(i, ω) → (i′, ω + w_i′)` for
/// `i < i′` within capacity, and an arc to `t` from every other node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPNetwork {
    pub weights: Vec<u64>,
    pub capacity: u64,
    pub nodes: Vec<Node>,
    pub arcs: Vec<Arc>,
}

impl DPNetwork {
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Checks the adjacency rule and acyclicity (arcs increase the item).
    pub fn validate(&self) -> Result<()> {
        for a in &self.arcs {
            let ok = match (a.from, a.to) {
                (_, Node::Sink) => a.from != Node::Sink,
                (Node::Source, Node::Item { item, weight }) => weight == self.weights[item],
                (Node::Item { item: i, weight: w }, Node::Item { item: j, weight: v }) => {
                    i < j && v == w + self.weights[j] && v <= self.capacity
                }
                _ => false,
            };
            if !ok {
                return Err(Error::invariant(format!("bad arc {} -> {}", a.from, a.to)));
            }
        }
        Ok(())
    }
}

pub fn knapsack_network(w: &[u64], cap: u64) -> Result<DPNetwork> {
    if w.is_empty() {
        return Err(Error::input("knapsack needs at least one item"));
    }
    let n = w.len();
    let mut reached: BTreeSet<Node> = BTreeSet::new();
    for (i, &wi) in w.iter().enumerate() {
        if wi <= cap {
            reached.insert(Node::Item { item: i, weight: wi });
        }
    }
    // Items in increasing order, so every predecessor is final when visited.
    for i in 0..n {
        let level: Vec<u64> = reached
            .iter()
            .filter_map(|nd| match *nd {
                Node::Item { item, weight } if item == i => Some(weight),
                _ => None,
            })
            .collect();
        for om in level {
            for j in i + 1..n {
                if om + w[j] <= cap {
                    reached.insert(Node::Item { item: j, weight: om + w[j] });
                }
            }
        }
    }
    let mut nodes = vec![Node::Source];
    nodes.extend(reached.iter().copied());
    nodes.push(Node::Sink);

    let mut arcs = Vec::new();
    for &from in &nodes {
        match from {
            Node::Source => {
                for &to in &reached {
                    if let Node::Item { item, weight } = to {
                        if weight == w[item] {
                            arcs.push(Arc { from, to });
                        }
                    }
                }
            }
            Node::Item { item: i, weight: om } => {
                for j in i + 1..n {
                    let to = Node::Item { item: j, weight: om + w[j] };
                    if reached.contains(&to) {
                        arcs.push(Arc { from, to });
                    }
                }
            }
            Node::Sink => continue,
        }
        arcs.push(Arc { from, to: Node::Sink });
    }
    let net = DPNetwork {
        weights: w.to_vec(),
        capacity: cap,
        nodes,
        arcs,
    };
    net.validate()?;
    Ok(net)
}

/// Unit `s`-`t` flows in the knapsack network, mapped to the items whose
/// nodes they enter.
pub fn knapsack_flow_extension(w: &[u64], cap: u64) -> Result<Extension> {
    let net = knapsack_network(w, cap)?;
    let alpha = net.arc_count();
    let mut q = HPoly::new(alpha);
    for (k, a) in net.arcs.iter().enumerate() {
        q.push_nonneg(k, Some(format!("{} -> {}", a.from, a.to)));
    }
    for &node in &net.nodes {
        if node == Node::Sink {
            continue;
        }
        let mut row = zero_vec(alpha);
        for (k, a) in net.arcs.iter().enumerate() {
            if a.from == node {
                row[k] += Rational::one();
            }
            if a.to == node {
                row[k] -= Rational::one();
            }
        }
        let rhs = if node == Node::Source { Rational::one() } else { Rational::zero() };
        q.push_eq(row, rhs, Some(format!("flow {node}")));
    }
    let mut t = RatMatrix::zeros(w.len(), alpha);
    for (k, a) in net.arcs.iter().enumerate() {
        if let Node::Item { item, .. } = a.to {
            t[(item, k)] = Rational::one();
        }
    }
    Extension::new(
        format!("knapsack({:?}, {cap})", w),
        q,
        AffineMap::linear(t),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_network_has_eleven_arcs() {
        let net = knapsack_network(&[2, 3, 4], 6).unwrap();
        assert_eq!(net.arc_count(), 11);
        let inner: Vec<String> = net
            .arcs
            .iter()
            .filter(|a| a.to != Node::Sink)
            .map(|a| format!("{}->{}", a.from, a.to))
            .collect();
        assert_eq!(inner, ["s->(1,2)", "s->(2,3)", "s->(3,4)", "(1,2)->(2,5)", "(1,2)->(3,6)"]);
        assert_eq!(knapsack_flow_extension(&[2, 3, 4], 6).unwrap().size(), 11);
    }

    #[test]
    fn zero_capacity() {
        let net = knapsack_network(&[1], 0).unwrap();
        assert_eq!(net.arcs, vec![Arc { from: Node::Source, to: Node::Sink }]);
    }
}
