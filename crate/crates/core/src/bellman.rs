//! Reference dynamic program over all capacities `0..=t`.
//!
//! Multiplicities are binary-split into aggregated 0/1 items (`1, 2, 4, …,
//! remainder` copies), after which the classical `O(#parts · t)` table is
//! filled. One bit per (part, capacity) records the decision so any capacity
//! can be turned back into a solution.

use crate::error::{Error, Result};
use crate::instance::{Item, KnapsackInstance, SolutionVector};

/// Default limit on `#parts · (t + 1)`.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Splits a multiplicity into `1, 2, 4, …` plus a remainder; every count in
/// `0..=u` is a sum of a unique-enough subset of the parts.
pub fn binary_split(multiplicity: u64) -> Vec<u64> {
    let mut parts = Vec::new();
    let mut left = multiplicity;
    let mut chunk = 1u64;
    while left > 0 {
        let c = chunk.min(left);
        parts.push(c);
        left -= c;
        chunk = chunk.saturating_mul(2);
    }
    parts
}

#[derive(Debug, Clone, Copy)]
struct Part {
    item: usize,
    count: u64,
    size: u64,
    value: i128,
}

/// Optimal value for every capacity, with recovery.
#[derive(Debug, Clone)]
pub struct DpProfile {
    values: Vec<i128>,
    parts: Vec<Part>,
    // parts.len() rows of (t + 1) bits each
    take: Vec<u64>,
    row_words: usize,
    n: usize,
}

impl DpProfile {
    /// `values()[c]` is the best value with total size at most `c`.
    pub fn values(&self) -> &[i128] {
        &self.values
    }

    pub fn optimum(&self) -> i128 {
        *self.values.last().unwrap_or(&0)
    }

    /// Per-item counts of an optimal solution for capacity `c`.
    pub fn recover_counts(&self, c: u64) -> Result<Vec<u64>> {
        if c as usize >= self.values.len() {
            return Err(Error::Unreachable(c as i128));
        }
        let mut counts = vec![0u64; self.n];
        let mut cap = c as usize;
        for (row, part) in self.parts.iter().enumerate().rev() {
            let bit = self.take[row * self.row_words + cap / 64] >> (cap % 64) & 1;
            if bit == 1 {
                counts[part.item] += part.count;
                cap -= part.size as usize;
            }
        }
        Ok(counts)
    }

    pub fn recover(&self, inst: &KnapsackInstance, c: u64) -> Result<SolutionVector> {
        Ok(inst.solution(self.recover_counts(c)?))
    }
}

pub fn bellman_oracle(inst: &KnapsackInstance) -> Result<DpProfile> {
    bellman_oracle_with_budget(inst, DEFAULT_BUDGET)
}

pub fn bellman_oracle_with_budget(inst: &KnapsackInstance, budget: u128) -> Result<DpProfile> {
    let t = inst.capacity();
    let parts = split_items(inst.items());
    let needed = parts.len() as u128 * (t as u128 + 1);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let width = t as usize + 1;
    let row_words = width.div_ceil(64);
    let mut values = vec![0i128; width];
    let mut take = vec![0u64; parts.len() * row_words];
    for (row, part) in parts.iter().enumerate() {
        let w = part.size as usize;
        if w >= width {
            continue;
        }
        let bits = &mut take[row * row_words..(row + 1) * row_words];
        for cap in (w..width).rev() {
            let cand = values[cap - w] + part.value;
            if cand > values[cap] {
                values[cap] = cand;
                bits[cap / 64] |= 1 << (cap % 64);
            }
        }
    }
    Ok(DpProfile {
        values,
        parts,
        take,
        row_words,
        n: inst.n(),
    })
}

fn split_items(items: &[Item]) -> Vec<Part> {
    let mut parts = Vec::new();
    for (item, it) in items.iter().enumerate() {
        for count in binary_split(it.multiplicity) {
            parts.push(Part {
                item,
                count,
                size: it.size * count,
                value: it.value as i128 * count as i128,
            });
        }
    }
    parts
}

/// For every size class `x` keep only the `⌊t/x⌋` most valuable copies
/// (ties go to the lower item index). Optimal values for all capacities up
/// to `t` are unchanged.
pub fn harmonic_prune(inst: &KnapsackInstance) -> KnapsackInstance {
    let t = inst.capacity();
    let mut order: Vec<usize> = (0..inst.n()).collect();
    let items = inst.items();
    order.sort_by(|&a, &b| {
        (items[a].size, std::cmp::Reverse(items[a].value), a).cmp(&(
            items[b].size,
            std::cmp::Reverse(items[b].value),
            b,
        ))
    });
    let mut kept = items.to_vec();
    let mut i = 0;
    while i < order.len() {
        let size = items[order[i]].size;
        let mut room = t / size;
        while i < order.len() && items[order[i]].size == size {
            let it = &mut kept[order[i]];
            it.multiplicity = it.multiplicity.min(room);
            room -= it.multiplicity;
            i += 1;
        }
    }
    kept.retain(|it| it.multiplicity > 0);
    KnapsackInstance::normalized(kept, t).expect("pruning keeps a valid instance")
}
