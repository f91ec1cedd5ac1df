//! Bounded sumsets with witnesses.
//!
//! A [`SumsetWithWitness`] is a combination tree: leaves are either one
//! aggregated part of an item (`count` copies, sums `{0, count·size}`) or an
//! explicit set, and every inner node holds the sumset of its two children
//! truncated to `[0, cap]`. Any attainable sum is traced back to the leaves
//! by splitting it at each inner node.

use crate::bellman::binary_split;
use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::ntt;

/// Ranges up to this length are combined by shift-or.
pub const SHIFT_OR_RANGE: usize = 4096;

/// Probability that a reachable sum is missed. The convolution backends here
/// are exact.
pub const FAILURE_PROBABILITY: f64 = 0.0;

/// `(A ⊕ B) ∩ [0, cap]` for bitsets indexed from zero.
pub fn sumset(a: &Bitset, b: &Bitset, cap: u64) -> Bitset {
    if a.is_empty() || b.is_empty() {
        return Bitset::new(0);
    }
    let len = ((a.len() + b.len() - 1) as u64).min(cap + 1) as usize;
    let (pa, pb) = (a.count_ones(), b.count_ones());
    if len <= SHIFT_OR_RANGE || pa.min(pb) <= 64 {
        let (dense, sparse) = if pa >= pb { (a, b) } else { (b, a) };
        let mut out = Bitset::new(len);
        for j in sparse.ones() {
            out.or_shifted(dense, j);
        }
        return out;
    }
    let fa: Vec<u64> = (0..a.len().min(len)).map(|i| a.get(i) as u64).collect();
    let fb: Vec<u64> = (0..b.len().min(len)).map(|i| b.get(i) as u64).collect();
    // coefficients count pairs, at most len < MODULUS, so non-zero mod p
    // means non-zero
    let prod = ntt::multiply(&fa, &fb);
    Bitset::from_positions(len, prod.iter().take(len).enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i))
}

#[derive(Debug, Clone)]
enum Node {
    Part { item: usize, count: u64, size: u64 },
    Set(Bitset),
    Sum { left: usize, right: usize, bits: Bitset },
}

/// Decomposition of an attainable sum into leaf contributions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witness {
    /// `(item, copies)`, sorted by item, one entry per used item.
    pub items: Vec<(usize, u64)>,
    /// Values taken from explicit-set leaves, left to right.
    pub atoms: Vec<u64>,
}

impl Witness {
    /// `Σ copies·size(item) + Σ atoms` given the item sizes.
    pub fn total(&self, size_of: impl Fn(usize) -> u64) -> u64 {
        self.items.iter().map(|&(i, c)| c * size_of(i)).sum::<u64>() + self.atoms.iter().sum::<u64>()
    }
}

#[derive(Debug, Clone)]
pub struct SumsetWithWitness {
    cap: u64,
    nodes: Vec<Node>,
    root: usize,
}

impl SumsetWithWitness {
    /// All subset sums of the multiset `(size, multiplicity)` that are at
    /// most `cap`. Each multiplicity is split into binary parts; the parts
    /// are combined in a left-deep tree so that every merge is one shifted
    /// OR of a bitset.
    pub fn bounded_subset_sums(items: &[(u64, u64)], cap: u64) -> Self {
        let mut tree = SumsetWithWitness::from_set(&[0], cap);
        for (item, &(size, mult)) in items.iter().enumerate() {
            for count in binary_split(mult) {
                let Some(part) = size.checked_mul(count).filter(|&p| p <= cap) else {
                    continue;
                };
                let leaf = tree.push(Node::Part {
                    item,
                    count,
                    size: part,
                });
                let prev = tree.root_bits();
                let reach = (prev.len() + part as usize).min(cap as usize + 1);
                let mut bits = prev.resized(reach);
                bits.or_shifted(&prev.resized(reach), part as usize);
                tree.root = tree.push(Node::Sum {
                    left: tree.root,
                    right: leaf,
                    bits,
                });
            }
        }
        tree
    }

    /// A single explicit set, truncated to `[0, cap]`.
    pub fn from_set(values: &[u64], cap: u64) -> Self {
        let len = values.iter().copied().filter(|&v| v <= cap).max().map_or(0, |m| m as usize + 1);
        let bits = Bitset::from_positions(len, values.iter().filter(|&&v| v <= cap).map(|&v| v as usize));
        SumsetWithWitness {
            cap,
            nodes: vec![Node::Set(bits)],
            root: 0,
        }
    }

    /// `(A ⊕ B) ∩ [0, cap]`; the result keeps both trees for witnesses.
    pub fn convolve_with_witness(a: &Self, b: &Self, cap: u64) -> Self {
        let bits = sumset(&a.root_bits(), &b.root_bits(), cap);
        let offset = a.nodes.len();
        let mut nodes = a.nodes.clone();
        nodes.extend(b.nodes.iter().map(|n| match n {
            Node::Sum { left, right, bits } => Node::Sum {
                left: left + offset,
                right: right + offset,
                bits: bits.clone(),
            },
            other => other.clone(),
        }));
        let root = nodes.len();
        nodes.push(Node::Sum {
            left: a.root,
            right: b.root + offset,
            bits,
        });
        SumsetWithWitness { cap, nodes, root }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn contains(&self, value: u64) -> bool {
        self.has(self.root, value)
    }

    /// Attainable sums in increasing order.
    pub fn attainable(&self) -> Vec<u64> {
        self.root_bits().ones().map(|v| v as u64).collect()
    }

    /// Attainable sums as a bitset over `0..=max`.
    pub fn bits(&self) -> Bitset {
        self.root_bits()
    }

    /// For the root sum node, the pair `(a, value − a)` with the smallest
    /// left part `a`.
    pub fn root_split(&self, value: u64) -> Option<(u64, u64)> {
        match &self.nodes[self.root] {
            Node::Sum { left, right, .. } => self.split(*left, *right, value).map(|a| (a, value - a)),
            _ => None,
        }
    }

    /// Decomposes `value` into leaf contributions.
    pub fn recover(&self, value: u64) -> Result<Witness> {
        if !self.contains(value) {
            return Err(Error::Unreachable(value as i128));
        }
        let mut w = Witness::default();
        let mut copies: Vec<(usize, u64)> = Vec::new();
        let mut stack = vec![(self.root, value)];
        while let Some((id, v)) = stack.pop() {
            match &self.nodes[id] {
                Node::Part { item, count, .. } => {
                    if v > 0 {
                        copies.push((*item, *count));
                    }
                }
                Node::Set(_) => w.atoms.push(v),
                Node::Sum { left, right, .. } => {
                    let a = self
                        .split(*left, *right, v)
                        .ok_or_else(|| Error::Internal(format!("sum {v} has no split")))?;
                    // right pushed first so the left subtree is emitted first
                    stack.push((*right, v - a));
                    stack.push((*left, a));
                }
            }
        }
        copies.sort_unstable();
        for (item, c) in copies {
            match w.items.last_mut() {
                Some(last) if last.0 == item => last.1 += c,
                _ => w.items.push((item, c)),
            }
        }
        Ok(w)
    }

    /// Multiset of `(item, copies)` summing to `value`.
    pub fn recover_subset(&self, value: u64) -> Result<Vec<(usize, u64)>> {
        Ok(self.recover(value)?.items)
    }

    fn push(&mut self, node: Node) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    fn root_bits(&self) -> Bitset {
        match &self.nodes[self.root] {
            Node::Sum { bits, .. } | Node::Set(bits) => bits.clone(),
            Node::Part { size, .. } => Bitset::from_positions(*size as usize + 1, [0, *size as usize]),
        }
    }

    fn has(&self, id: usize, v: u64) -> bool {
        match &self.nodes[id] {
            Node::Part { size, .. } => v == 0 || v == *size,
            Node::Set(bits) | Node::Sum { bits, .. } => bits.get(v as usize),
        }
    }

    fn range(&self, id: usize) -> u64 {
        match &self.nodes[id] {
            Node::Part { size, .. } => *size,
            Node::Set(bits) | Node::Sum { bits, .. } => (bits.len() as u64).saturating_sub(1),
        }
    }

    fn split(&self, left: usize, right: usize, v: u64) -> Option<u64> {
        if let Node::Part { size, .. } = self.nodes[right] {
            return if self.has(left, v) {
                Some(v)
            } else if v >= size && self.has(left, v - size) {
                Some(v - size)
            } else {
                None
            };
        }
        let lo = v.saturating_sub(self.range(right));
        (lo..=v.min(self.range(left))).find(|&a| self.has(left, a) && self.has(right, v - a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_element() {
        let a = SumsetWithWitness::from_set(&[0], 10);
        let b = SumsetWithWitness::from_set(&[1, 4, 9], 10);
        let c = SumsetWithWitness::convolve_with_witness(&a, &b, 10);
        assert_eq!(c.attainable(), vec![1, 4, 9]);
    }

    #[test]
    fn small_convolution() {
        let a = SumsetWithWitness::from_set(&[0, 2], 5);
        let b = SumsetWithWitness::from_set(&[0, 3], 5);
        let c = SumsetWithWitness::convolve_with_witness(&a, &b, 5);
        assert_eq!(c.attainable(), vec![0, 2, 3, 5]);
        assert_eq!(c.root_split(5), Some((2, 3)));
        assert_eq!(c.recover(5).unwrap().atoms, vec![2, 3]);
    }

    #[test]
    fn multiplicities() {
        let s = SumsetWithWitness::bounded_subset_sums(&[(3, 2)], 7);
        assert_eq!(s.attainable(), vec![0, 3, 6]);
        assert_eq!(s.recover_subset(6).unwrap(), vec![(0, 2)]);
        assert_eq!(s.recover_subset(0).unwrap(), vec![]);
        assert!(s.recover_subset(4).is_err());
    }

    #[test]
    fn three_items() {
        let s = SumsetWithWitness::bounded_subset_sums(&[(2, 1), (3, 1), (7, 1)], 10);
        assert_eq!(s.attainable(), vec![0, 2, 3, 5, 7, 9, 10]);
        assert_eq!(s.recover_subset(10).unwrap(), vec![(1, 1), (2, 1)]);
    }

    #[test]
    fn ntt_backend_matches_shift_or() {
        let a = Bitset::from_positions(6000, (0..6000).filter(|i| i % 7 == 0 || i % 11 == 3));
        let b = Bitset::from_positions(5000, (0..5000).filter(|i| i % 13 == 1 || i % 5 == 0));
        let fast = sumset(&a, &b, 9000);
        let mut slow = Bitset::new(9001);
        for j in b.ones() {
            slow.or_shifted(&a.resized(9001), j);
        }
        assert_eq!(fast, slow);
    }
}
