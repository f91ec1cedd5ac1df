//! Instances with multiplicity-encoded items, their normalization, and
//! solution verification.
//!
//! An item `(size, value, multiplicity)` stands for `multiplicity` identical
//! copies. Normalization merges items with equal `(size, value)`, drops
//! unusable items and clamps every multiplicity to `capacity / size`; none of
//! these steps changes the set of feasible solutions.

use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Item {
    pub size: u64,
    pub value: u64,
    pub multiplicity: u64,
}

impl Item {
    pub fn new(size: u64, value: u64, multiplicity: u64) -> Self {
        Item {
            size,
            value,
            multiplicity,
        }
    }
}

/// An unvalidated item as read from user input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RawItem {
    pub size: i64,
    pub value: i64,
    pub multiplicity: i64,
}

impl RawItem {
    pub fn new(size: i64, value: i64, multiplicity: i64) -> Self {
        RawItem {
            size,
            value,
            multiplicity,
        }
    }
}

impl From<Item> for RawItem {
    fn from(item: Item) -> Self {
        RawItem {
            size: item.size as i64,
            value: item.value as i64,
            multiplicity: item.multiplicity as i64,
        }
    }
}

/// Cached aggregate quantities of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Stats {
    /// Maximum item size `s`.
    pub max_size: u64,
    /// Maximum item value `v`.
    pub max_value: u64,
    /// Maximum multiplicity `u`.
    pub max_multiplicity: u64,
    /// Number of copies `N`.
    pub total_count: u128,
    /// `Σ size·multiplicity`.
    pub total_size: i128,
    /// `Σ value·multiplicity`.
    pub total_value: i128,
}

impl Stats {
    fn of(items: &[Item]) -> Result<Stats> {
        let mut st = Stats::default();
        for it in items {
            st.max_size = st.max_size.max(it.size);
            st.max_value = st.max_value.max(it.value);
            st.max_multiplicity = st.max_multiplicity.max(it.multiplicity);
            st.total_count += it.multiplicity as u128;
            let size = (it.size as i128)
                .checked_mul(it.multiplicity as i128)
                .ok_or(Error::Overflow("total size"))?;
            let value = (it.value as i128)
                .checked_mul(it.multiplicity as i128)
                .ok_or(Error::Overflow("total value"))?;
            st.total_size = st
                .total_size
                .checked_add(size)
                .ok_or(Error::Overflow("total size"))?;
            st.total_value = st
                .total_value
                .checked_add(value)
                .ok_or(Error::Overflow("total value"))?;
        }
        Ok(st)
    }
}

/// A Knapsack instance: maximize `Σ v_i x_i` subject to `Σ s_i x_i ≤ t` and
/// `0 ≤ x_i ≤ u_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackInstance {
    items: Vec<Item>,
    capacity: u64,
    stats: Stats,
}

/// Merge, drop and clamp raw items. See [`KnapsackInstance`].
pub fn validate_and_normalize(raw: &[RawItem], capacity: i64) -> Result<KnapsackInstance> {
    if capacity < 0 {
        return Err(Error::NegativeCapacity(capacity));
    }
    let mut items = Vec::with_capacity(raw.len());
    for (index, r) in raw.iter().enumerate() {
        for (field, value) in [
            ("size", r.size),
            ("value", r.value),
            ("multiplicity", r.multiplicity),
        ] {
            if value < 0 {
                return Err(Error::Negative {
                    index,
                    field,
                    value,
                });
            }
        }
        if r.size == 0 {
            return Err(Error::ZeroSize { index });
        }
        items.push(Item::new(r.size as u64, r.value as u64, r.multiplicity as u64));
    }
    KnapsackInstance::normalized(items, capacity as u64)
}

impl KnapsackInstance {
    /// Normalizes already-unsigned items. Items of size zero are rejected.
    pub fn normalized(items: Vec<Item>, capacity: u64) -> Result<Self> {
        let mut merged: Vec<Item> = Vec::with_capacity(items.len());
        let mut position: HashMap<(u64, u64), usize> = HashMap::with_capacity(items.len());
        for (index, it) in items.into_iter().enumerate() {
            if it.size == 0 {
                return Err(Error::ZeroSize { index });
            }
            match position.get(&(it.size, it.value)) {
                Some(&p) => {
                    merged[p].multiplicity = merged[p]
                        .multiplicity
                        .checked_add(it.multiplicity)
                        .ok_or(Error::Overflow("merged multiplicity"))?;
                }
                None => {
                    position.insert((it.size, it.value), merged.len());
                    merged.push(it);
                }
            }
        }
        let items: Vec<Item> = merged
            .into_iter()
            .filter_map(|mut it| {
                it.multiplicity = it.multiplicity.min(capacity / it.size);
                (it.multiplicity > 0).then_some(it)
            })
            .collect();
        let stats = Stats::of(&items)?;
        Ok(KnapsackInstance {
            items,
            capacity,
            stats,
        })
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn n(&self) -> usize {
        self.items.len()
    }

    pub fn stats(&self) -> &Stats {
        &self.stats
    }

    pub fn max_size(&self) -> u64 {
        self.stats.max_size
    }

    pub fn max_value(&self) -> u64 {
        self.stats.max_value
    }

    pub fn multiplicities(&self) -> Vec<u64> {
        self.items.iter().map(|it| it.multiplicity).collect()
    }

    /// Builds a [`SolutionVector`] with totals computed from `counts`.
    pub fn solution(&self, counts: Vec<u64>) -> SolutionVector {
        let (total_size, total_value) = self
            .items
            .iter()
            .zip(&counts)
            .fold((0i128, 0i128), |(s, v), (it, &x)| {
                (s + it.size as i128 * x as i128, v + it.value as i128 * x as i128)
            });
        SolutionVector {
            counts,
            total_size,
            total_value,
        }
    }

    pub fn empty_solution(&self) -> SolutionVector {
        self.solution(vec![0; self.n()])
    }

    /// Checks bounds and the capacity constraint, recomputing all sums.
    pub fn verify(&self, x: &SolutionVector) -> Result<Report> {
        let report = recompute(&self.items, &x.counts)?;
        Ok(Report {
            feasible: report.within_bounds && report.size <= self.capacity as i128,
            ..report.into()
        })
    }
}

/// A Subset Sum instance: decide whether `Σ s_i x_i = t` has a solution with
/// `0 ≤ x_i ≤ u_i`. Stored as a Knapsack instance with `value = size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetSumInstance {
    inner: KnapsackInstance,
}

impl SubsetSumInstance {
    /// Validates `(size, multiplicity)` pairs against `target`.
    pub fn new(raw: &[(i64, i64)], target: i64) -> Result<Self> {
        let raw: Vec<RawItem> = raw
            .iter()
            .map(|&(s, u)| RawItem::new(s, s.max(0), u))
            .collect();
        Ok(SubsetSumInstance {
            inner: validate_and_normalize(&raw, target)?,
        })
    }

    pub fn normalized(items: &[(u64, u64)], target: u64) -> Result<Self> {
        let items = items.iter().map(|&(s, u)| Item::new(s, s, u)).collect();
        Ok(SubsetSumInstance {
            inner: KnapsackInstance::normalized(items, target)?,
        })
    }

    pub fn target(&self) -> u64 {
        self.inner.capacity
    }

    pub fn items(&self) -> &[Item] {
        &self.inner.items
    }

    /// `(size, multiplicity)` pairs.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        self.inner
            .items
            .iter()
            .map(|it| (it.size, it.multiplicity))
            .collect()
    }

    pub fn n(&self) -> usize {
        self.inner.n()
    }

    pub fn stats(&self) -> &Stats {
        &self.inner.stats
    }

    pub fn as_knapsack(&self) -> &KnapsackInstance {
        &self.inner
    }

    pub fn solution(&self, counts: Vec<u64>) -> SolutionVector {
        self.inner.solution(counts)
    }

    /// Feasible iff bounds hold and the chosen sizes sum to exactly `t`.
    pub fn verify(&self, x: &SolutionVector) -> Result<Report> {
        let report = recompute(&self.inner.items, &x.counts)?;
        Ok(Report {
            feasible: report.within_bounds && report.size == self.target() as i128,
            ..report.into()
        })
    }
}

/// Per-item chosen counts together with their totals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionVector {
    pub counts: Vec<u64>,
    pub total_size: i128,
    pub total_value: i128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Report {
    pub feasible: bool,
    pub value: i128,
    pub size: i128,
}

struct Recomputed {
    within_bounds: bool,
    value: i128,
    size: i128,
}

impl From<Recomputed> for Report {
    fn from(r: Recomputed) -> Self {
        Report {
            feasible: r.within_bounds,
            value: r.value,
            size: r.size,
        }
    }
}

fn recompute(items: &[Item], counts: &[u64]) -> Result<Recomputed> {
    if counts.len() != items.len() {
        return Err(Error::LengthMismatch {
            expected: items.len(),
            got: counts.len(),
        });
    }
    let mut within_bounds = true;
    let mut value = 0i128;
    let mut size = 0i128;
    for (it, &x) in items.iter().zip(counts) {
        within_bounds &= x <= it.multiplicity;
        size = size
            .checked_add(it.size as i128 * x as i128)
            .ok_or(Error::Overflow("solution size"))?;
        value = value
            .checked_add(it.value as i128 * x as i128)
            .ok_or(Error::Overflow("solution value"))?;
    }
    Ok(Recomputed {
        within_bounds,
        value,
        size,
    })
}
