//! Maximal prefix solutions and proximity-based multiplicity capping.
//!
//! The maximal prefix solution takes copies greedily in order of decreasing
//! efficiency `v_i / s_i` (ties: lower index first) and stops at the first
//! copy that no longer fits. Some optimal solution lies within L1 distance
//! `2s` of it, so all but `4s` copies of every item can be fixed in advance.

use std::cmp::Ordering;

use crate::instance::{Item, KnapsackInstance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixSolution {
    /// Copies taken of each item.
    pub counts: Vec<u64>,
    /// Unused capacity `t − Σ s_i p_i`.
    pub slack: u64,
    /// Item indices arranged so that every item before `split` precedes the
    /// split item in greedy order and every item after it follows it.
    /// Items on one side are not sorted among themselves.
    pub order: Vec<usize>,
    /// Position in `order` of the first item not taken completely, or `None`
    /// when everything fits.
    pub split: Option<usize>,
}

impl PrefixSolution {
    pub fn takes_all(&self) -> bool {
        self.split.is_none()
    }

    pub fn size(&self, items: &[Item]) -> u128 {
        items
            .iter()
            .zip(&self.counts)
            .map(|(it, &p)| it.size as u128 * p as u128)
            .sum()
    }

    pub fn value(&self, items: &[Item]) -> i128 {
        items
            .iter()
            .zip(&self.counts)
            .map(|(it, &p)| it.value as i128 * p as i128)
            .sum()
    }
}

/// Total order used by the greedy: higher `v/s` first, then lower index.
/// Compared by cross-multiplication.
pub fn efficiency_cmp(items: &[Item], a: usize, b: usize) -> Ordering {
    let (ia, ib) = (&items[a], &items[b]);
    let lhs = ib.value as u128 * ia.size as u128;
    let rhs = ia.value as u128 * ib.size as u128;
    lhs.cmp(&rhs).then(a.cmp(&b))
}

/// Computes the maximal prefix solution in `O(n)` by repeated median
/// selection, recursing on the half that contains the split item.
pub fn maximal_prefix(inst: &KnapsackInstance) -> PrefixSolution {
    let items = inst.items();
    let n = items.len();
    let mut order: Vec<usize> = (0..n).collect();
    let mut counts = vec![0u64; n];
    let mut rem = inst.capacity() as u128;
    let full = |i: usize| items[i].size as u128 * items[i].multiplicity as u128;

    let (mut lo, mut hi) = (0usize, n);
    let split = loop {
        if lo == hi {
            break (hi < n).then_some(hi);
        }
        let mid = lo + (hi - lo) / 2;
        order[lo..hi].select_nth_unstable_by(mid - lo, |&a, &b| efficiency_cmp(items, a, b));
        let left: u128 = order[lo..mid].iter().map(|&i| full(i)).sum();
        if left > rem {
            hi = mid;
            continue;
        }
        for &i in &order[lo..mid] {
            counts[i] = items[i].multiplicity;
        }
        rem -= left;
        let m = order[mid];
        if full(m) <= rem {
            counts[m] = items[m].multiplicity;
            rem -= full(m);
            lo = mid + 1;
        } else {
            break Some(mid);
        }
    };
    if let Some(pos) = split {
        let j = order[pos];
        counts[j] = (rem / items[j].size as u128) as u64;
        rem -= counts[j] as u128 * items[j].size as u128;
    }
    PrefixSolution {
        counts,
        slack: rem as u64,
        order,
        split,
    }
}

/// An instance with some copies fixed in advance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedInstance {
    /// The remaining instance; every multiplicity is at most `4s`.
    pub instance: KnapsackInstance,
    /// Copies of each original item that are always taken.
    pub baseline: Vec<u64>,
    pub baseline_size: u64,
    pub baseline_value: i128,
    /// Original index of each item of `instance`.
    pub index_map: Vec<usize>,
}

impl ReducedInstance {
    /// Maps counts over the reduced items back to the original instance.
    pub fn lift(&self, reduced: &[u64]) -> Vec<u64> {
        let mut x = self.baseline.clone();
        for (&orig, &c) in self.index_map.iter().zip(reduced) {
            x[orig] += c;
        }
        x
    }
}

/// Fixes `max(0, p_i − 2s)` copies of every item and caps what remains at
/// `4s`.
pub fn proximity_reduce(inst: &KnapsackInstance) -> ReducedInstance {
    proximity_reduce_with_radius(inst, 2 * inst.max_size())
}

/// Same as [`proximity_reduce`] for an arbitrary proximity radius `r`: fixes
/// `max(0, p_i − r)` copies and caps the rest at `2r`.
pub fn proximity_reduce_with_radius(inst: &KnapsackInstance, radius: u64) -> ReducedInstance {
    let prefix = maximal_prefix(inst);
    let items = inst.items();
    let baseline: Vec<u64> = prefix
        .counts
        .iter()
        .map(|&p| p.saturating_sub(radius))
        .collect();
    let baseline_size: u64 = items.iter().zip(&baseline).map(|(it, &b)| it.size * b).sum();
    let baseline_value: i128 = items
        .iter()
        .zip(&baseline)
        .map(|(it, &b)| it.value as i128 * b as i128)
        .sum();
    let capacity = inst.capacity() - baseline_size;
    let mut reduced = Vec::new();
    let mut index_map = Vec::new();
    for (i, it) in items.iter().enumerate() {
        let u = (it.multiplicity - baseline[i])
            .min(radius.saturating_mul(2))
            .min(capacity / it.size);
        if u > 0 {
            reduced.push(Item::new(it.size, it.value, u));
            index_map.push(i);
        }
    }
    let instance =
        KnapsackInstance::normalized(reduced, capacity).expect("sub-instance of a valid instance");
    debug_assert_eq!(instance.n(), index_map.len());
    ReducedInstance {
        instance,
        baseline,
        baseline_size,
        baseline_value,
        index_map,
    }
}
