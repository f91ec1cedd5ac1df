//! Knapsack in `O(n + s³)` and `O(n + v³)`.
//!
//! Starting from the maximal prefix solution `p`, an optimal solution is
//! `p − x⁻ + x⁺`, where `x⁻` removes copies of total size `k ≤ 2s²` at the
//! smallest possible value loss and `x⁺` adds copies of total size at most
//! `k + Δ` at the largest gain. Both corrections are read off equality
//! profiles over capacities `O(s²)`.

use std::collections::HashMap;

use crate::error::Result;
use crate::instance::{Item, KnapsackInstance, SolutionVector};
use crate::prefix::{maximal_prefix, proximity_reduce, PrefixSolution};
use crate::smawk::{equality_profiles, SignedItem, ValueProfile, NEG_INF};

/// The removal and addition profiles around a prefix solution.
#[derive(Debug, Clone)]
pub struct TwoSidedCorrection {
    /// Best value of adding copies of total size *at most* `k`, as
    /// `(value, size actually used)`.
    plus: Vec<(i128, u64)>,
    plus_profile: ValueProfile,
    /// `minus.values()[k]` is `−(least value of removed copies of size k)`.
    minus: ValueProfile,
}

impl TwoSidedCorrection {
    /// Profiles for adding up to `plus_len` and removing up to `minus_len`
    /// units of size around `p`.
    pub fn new(items: &[Item], p: &[u64], plus_len: u64, minus_len: u64) -> Self {
        let add: Vec<SignedItem> = items
            .iter()
            .zip(p)
            .map(|(it, &pi)| SignedItem::new(it.size, it.value as i128, it.multiplicity - pi))
            .collect();
        let remove: Vec<SignedItem> = items
            .iter()
            .zip(p)
            .map(|(it, &pi)| SignedItem::new(it.size, -(it.value as i128), pi))
            .collect();
        let plus_profile = equality_profiles(&add, plus_len);
        let minus = equality_profiles(&remove, minus_len);
        let mut plus = Vec::with_capacity(plus_profile.values().len());
        let mut best = (0i128, 0u64);
        for (c, &v) in plus_profile.values().iter().enumerate() {
            if v > best.0 {
                best = (v, c as u64);
            }
            plus.push(best);
        }
        TwoSidedCorrection {
            plus,
            plus_profile,
            minus,
        }
    }

    /// `value(x⁺(k))`, the running maximum; capacities past the profile end
    /// reuse its last entry.
    pub fn plus_value(&self, k: u64) -> i128 {
        self.plus_at(k).0
    }

    /// `−value(x⁻(k))`, or `NEG_INF` when no removal of size exactly `k`
    /// exists.
    pub fn minus_value(&self, k: u64) -> i128 {
        self.minus.values().get(k as usize).copied().unwrap_or(NEG_INF)
    }

    pub fn minus_len(&self) -> u64 {
        self.minus.capacity()
    }

    fn plus_at(&self, k: u64) -> (i128, u64) {
        let last = self.plus.len() - 1;
        self.plus[(k as usize).min(last)]
    }

    /// Counts of `x⁺(k)`.
    pub fn plus_counts(&self, k: u64) -> Result<Vec<u64>> {
        self.plus_profile.recover_counts(self.plus_at(k).1)
    }

    /// Counts of `x⁻(k)`.
    pub fn minus_counts(&self, k: u64) -> Result<Vec<u64>> {
        self.minus.recover_counts(k)
    }

    /// `p − x⁻(k) + x⁺(plus_cap)`.
    pub fn combine(&self, p: &[u64], k: u64, plus_cap: u64) -> Result<Vec<u64>> {
        let minus = self.minus_counts(k)?;
        let plus = self.plus_counts(plus_cap)?;
        Ok(p.iter()
            .zip(minus.iter().zip(&plus))
            .map(|(&pi, (&m, &a))| pi - m + a)
            .collect())
    }

    /// Best `k ∈ 0..=k_max` with `k + slack ≥ 0`, maximizing
    /// `minus_value(k) + plus_value(k + slack)`; ties go to the smaller `k`.
    fn best_k(&self, slack: i64, k_max: u64) -> Option<(u64, i128)> {
        let mut best: Option<(u64, i128)> = None;
        let start = (-slack).max(0) as u64;
        for k in start..=k_max.min(self.minus_len()) {
            let m = self.minus_value(k);
            if m == NEG_INF {
                continue;
            }
            let cand = m + self.plus_value((k as i64 + slack) as u64);
            if best.is_none_or(|(_, b)| cand > b) {
                best = Some((k, cand));
            }
        }
        best
    }
}

/// Optimal solution in `O(n + s³)` time.
pub fn solve_small_sizes(inst: &KnapsackInstance) -> SolutionVector {
    if inst.n() == 0 {
        return inst.empty_solution();
    }
    let red = proximity_reduce(inst);
    let r = &red.instance;
    let p = maximal_prefix(r);
    if p.takes_all() || r.n() == 0 {
        return inst.solution(red.lift(&p.counts));
    }
    let s = r.max_size();
    let k_max = 2 * s * s;
    let corr = TwoSidedCorrection::new(r.items(), &p.counts, k_max + s, k_max);
    let (k, _) = corr
        .best_k(p.slack as i64, k_max)
        .expect("k = 0 is always a candidate");
    let x = corr
        .combine(&p.counts, k, k + p.slack)
        .expect("profile entries used are attainable");
    debug_assert!(r.verify(&r.solution(x.clone())).unwrap().feasible);
    inst.solution(red.lift(&x))
}

/// Optimal values for every capacity in a window `[lo, t]`, sharing one
/// prefix solution and one pair of profiles.
#[derive(Debug, Clone)]
pub struct AllTargets {
    inst: KnapsackInstance,
    lo: u64,
    prefix: PrefixSolution,
    prefix_size: u64,
    prefix_value: i128,
    corr: Option<TwoSidedCorrection>,
    k_max: u64,
    values: Vec<i128>,
    choice: Vec<u64>,
}

impl AllTargets {
    pub fn low(&self) -> u64 {
        self.lo
    }

    pub fn high(&self) -> u64 {
        self.inst.capacity()
    }

    /// `values()[i]` is the optimum for capacity `low() + i`.
    pub fn values(&self) -> &[i128] {
        &self.values
    }

    pub fn value(&self, capacity: u64) -> Option<i128> {
        capacity
            .checked_sub(self.lo)
            .and_then(|i| self.values.get(i as usize).copied())
    }

    /// An optimal solution for capacity `c` (inside the window).
    pub fn solution(&self, c: u64) -> Option<SolutionVector> {
        let i = c.checked_sub(self.lo)? as usize;
        let k = *self.choice.get(i)?;
        let counts = match &self.corr {
            None => self.prefix.counts.clone(),
            Some(corr) => {
                let slack = c as i64 - self.prefix_size as i64;
                corr.combine(&self.prefix.counts, k, (k as i64 + slack) as u64)
                    .expect("window entries are attainable")
            }
        };
        Some(self.inst.solution(counts))
    }
}

/// Optima for every capacity in `[window_low, t]` (clamped at 0). The work is
/// `O(n + s²·(s + w))` for window width `w`.
pub fn solve_all_targets(inst: &KnapsackInstance, window_low: u64) -> AllTargets {
    let t = inst.capacity();
    let lo = window_low.min(t);
    let width = t - lo;
    let prefix = maximal_prefix(inst);
    let prefix_size = t - prefix.slack;
    let prefix_value = prefix.value(inst.items());
    let s = inst.max_size();
    // The prefix for any capacity in the window is within (w + s) copies of
    // the prefix for t, and some optimum is within 2s copies of its prefix.
    let k_max = s * (3 * s + width);
    let corr = (inst.n() > 0)
        .then(|| TwoSidedCorrection::new(inst.items(), &prefix.counts, k_max + s, k_max));
    let mut values = Vec::with_capacity(width as usize + 1);
    let mut choice = Vec::with_capacity(width as usize + 1);
    for c in lo..=t {
        match &corr {
            None => {
                values.push(0);
                choice.push(0);
            }
            Some(corr) => {
                let slack = c as i64 - prefix_size as i64;
                let (k, gain) = corr
                    .best_k(slack, k_max)
                    .expect("removing everything down to zero is always possible");
                values.push(prefix_value + gain);
                choice.push(k);
            }
        }
    }
    AllTargets {
        inst: inst.clone(),
        lo,
        prefix,
        prefix_size,
        prefix_value,
        corr,
        k_max,
        values,
        choice,
    }
}

/// Optimal solution in `O(n + v³)` time.
///
/// Solves the complementary problem: choose the copies `y` to leave out,
/// with `Σ s_i y_i ≥ Σ s_i u_i − t` and least value. With sizes and values
/// swapped this is a Knapsack instance whose relevant capacities lie in a
/// window of width `v` located by the prefix solution.
pub fn solve_small_values(inst: &KnapsackInstance) -> SolutionVector {
    let stats = inst.stats();
    if stats.total_size <= inst.capacity() as i128 {
        return inst.solution(inst.multiplicities());
    }
    let items = inst.items();
    let useful: Vec<usize> = (0..inst.n()).filter(|&i| items[i].value > 0).collect();
    let total_size: i128 = useful
        .iter()
        .map(|&i| items[i].size as i128 * items[i].multiplicity as i128)
        .sum();
    let mut counts = vec![0u64; inst.n()];
    if total_size <= inst.capacity() as i128 {
        for &i in &useful {
            counts[i] = items[i].multiplicity;
        }
        return inst.solution(counts);
    }
    let total_value: i128 = stats.total_value;
    let p = maximal_prefix(inst);
    let t2 = u64::try_from(total_value - p.value(items)).expect("value sums fit in u64");
    let need = total_size - inst.capacity() as i128;

    let swapped: Vec<Item> = useful
        .iter()
        .map(|&i| Item::new(items[i].value, items[i].size, items[i].multiplicity))
        .collect();
    let swapped = KnapsackInstance::normalized(swapped, t2).expect("swapped instance is valid");
    let origin: HashMap<(u64, u64), usize> = useful
        .iter()
        .map(|&i| ((items[i].value, items[i].size), i))
        .collect();

    let all = solve_all_targets(&swapped, t2.saturating_sub(inst.max_value()));
    let pos = all
        .values()
        .iter()
        .position(|&f| f >= need)
        .expect("leaving out the complement of the prefix meets the demand");
    let c = all.low() + pos as u64;
    let y = all.solution(c).expect("c lies in the window");
    for &i in &useful {
        counts[i] = items[i].multiplicity;
    }
    for (it, &yi) in swapped.items().iter().zip(&y.counts) {
        counts[origin[&(it.size, it.value)]] -= yi;
    }
    inst.solution(counts)
}

/// Solver selection for [`solve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnapsackAlgo {
    /// Pick by `min(s, v)`.
    Auto,
    SmallSizes,
    SmallValues,
}

/// Optimal solution, dispatching on the smaller of `s` and `v`.
pub fn solve(inst: &KnapsackInstance, algo: KnapsackAlgo) -> SolutionVector {
    match algo {
        KnapsackAlgo::SmallSizes => solve_small_sizes(inst),
        KnapsackAlgo::SmallValues => solve_small_values(inst),
        KnapsackAlgo::Auto if inst.max_value() < inst.max_size() => solve_small_values(inst),
        KnapsackAlgo::Auto => solve_small_sizes(inst),
    }
}

impl AllTargets {
    /// Largest removal size scanned per capacity.
    pub fn k_max(&self) -> u64 {
        self.k_max
    }

    pub fn prefix(&self) -> &PrefixSolution {
        &self.prefix
    }

    pub fn prefix_value(&self) -> i128 {
        self.prefix_value
    }
}
