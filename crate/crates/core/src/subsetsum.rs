//! Subset Sum with multiplicities in `Õ(n + s^{5/3})` time.
//!
//! Copies of each item are grouped into bundles of `k = ⌊s^{1/3}⌋`. The
//! bundled part `I↑` only needs to be searched near the robust split of the
//! prefix solution, which yields few candidate sums `t'`; the remainder
//! `I↓` is dense, so `t − k·t' ∈ S(I↓)` is a constant-time oracle query.

use std::collections::HashMap;
use std::rc::Rc;

use crate::bitset::Bitset;
use crate::dense::{DenseConfig, DenseOracle};
use crate::error::{Error, Result};
use crate::instance::{SolutionVector, SubsetSumInstance};
use crate::prefix::{maximal_prefix, proximity_reduce};
use crate::sumset::{sumset, SumsetWithWitness};

/// `⌊x^{1/3}⌋`.
pub fn icbrt(x: u64) -> u64 {
    let mut r = (x as f64).cbrt() as u64;
    while r * r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Bundle size `max(1, ⌊s^{1/3}⌋)`.
pub fn bundle_size(s: u64) -> u64 {
    icbrt(s).max(1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleSplit {
    pub k: u64,
    /// Largest item size.
    pub s: u64,
    pub sizes: Vec<u64>,
    /// `u↑_i = max(0, ⌊u_i/k⌋ − 8)` bundles of `k` copies.
    pub up: Vec<u64>,
    /// `u↓_i = u_i − k·u↑_i` single copies.
    pub down: Vec<u64>,
}

impl BundleSplit {
    pub fn up_pairs(&self) -> Vec<(u64, u64)> {
        self.sizes.iter().copied().zip(self.up.iter().copied()).collect()
    }

    pub fn down_pairs(&self) -> Vec<(u64, u64)> {
        self.sizes.iter().copied().zip(self.down.iter().copied()).collect()
    }
}

/// Splits `(size, multiplicity)` items into bundles and leftovers.
pub fn bundle_split(items: &[(u64, u64)]) -> BundleSplit {
    let s = items.iter().map(|&(size, _)| size).max().unwrap_or(0);
    let k = bundle_size(s);
    let up: Vec<u64> = items.iter().map(|&(_, u)| (u / k).saturating_sub(8)).collect();
    let down = items.iter().zip(&up).map(|(&(_, u), &b)| u - k * b).collect();
    BundleSplit {
        k,
        s,
        sizes: items.iter().map(|&(size, _)| size).collect(),
        up,
        down,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobustSplit {
    pub up: Vec<u64>,
    pub down: Vec<u64>,
}

/// Splits prefix counts `p` as `p = k·p↑ + p↓` so that small changes of `p`
/// only touch `p↓`. The interior case `⌊p/k⌋ − 2` is clamped to
/// `u↑ = ⌊u/k⌋ − 8` so that `p↑` stays a valid count of `I↑`; `p↓` then
/// keeps at least `2k` copies of slack below and `4k` above.
pub fn robust_split(p: &[u64], u: &[u64], k: u64) -> RobustSplit {
    let up: Vec<u64> = p
        .iter()
        .zip(u)
        .map(|(&pi, &ui)| {
            if pi <= 4 * k || ui <= 8 * k {
                0
            } else if pi + 4 * k >= ui {
                ui / k - 8
            } else {
                (pi / k - 2).min(ui / k - 8)
            }
        })
        .collect();
    let down = p.iter().zip(&up).map(|(&pi, &b)| pi - k * b).collect();
    RobustSplit { up, down }
}

/// Candidate sums `t_p + a − b` of `I↑` with `a ∈ S⁺`, `b ∈ S⁻`.
#[derive(Debug, Clone)]
pub struct CandidateSet {
    pub t_p: u64,
    /// Sums of `S⁺` and `S⁻` are bounded by this window.
    pub window: u64,
    p_up: Vec<u64>,
    plus: SumsetWithWitness,
    minus: SumsetWithWitness,
    /// Bit `m` set iff `t_p + m − window` is a member.
    offsets: Bitset,
}

impl CandidateSet {
    pub fn contains(&self, t: u64) -> bool {
        match (t + self.window).checked_sub(self.t_p) {
            Some(m) => self.offsets.get(m as usize),
            None => false,
        }
    }

    /// Members in increasing order.
    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        self.offsets
            .ones()
            .filter_map(|m| (self.t_p + m as u64).checked_sub(self.window))
    }

    /// Members in `[lo, hi]`, increasing.
    pub fn members_in(&self, lo: u64, hi: u64) -> impl Iterator<Item = u64> + '_ {
        let base = self.t_p as i128 - self.window as i128;
        let from = (lo as i128 - base).max(0);
        let to = (hi as i128 - base).min(self.offsets.len() as i128 - 1);
        (from..=to)
            .filter(move |&m| self.offsets.get(m as usize))
            .map(move |m| (base + m) as u64)
    }

    /// Bundle counts `x↑` with `Σ s_i x↑_i = t`.
    pub fn recover(&self, t: u64) -> Result<Vec<u64>> {
        if !self.contains(t) {
            return Err(Error::Unreachable(t as i128));
        }
        let m = t + self.window - self.t_p;
        // m = a + (window − b)
        let b_of = |a: u64| (a + self.window).checked_sub(m).filter(|&b| b <= self.window);
        let a = self
            .plus
            .attainable()
            .into_iter()
            .find(|&a| b_of(a).is_some_and(|b| self.minus.contains(b)))
            .ok_or_else(|| Error::Internal(format!("candidate {t} has no split")))?;
        let b = b_of(a).expect("checked above");
        let mut x = self.p_up.clone();
        for (i, c) in self.minus.recover_subset(b)? {
            x[i] -= c;
        }
        for (i, c) in self.plus.recover_subset(a)? {
            x[i] += c;
        }
        Ok(x)
    }
}

/// Window `⌈c·s^{5/3}⌉`.
pub fn candidate_window(s: u64, c: f64) -> u64 {
    (c * (s as f64).powf(5.0 / 3.0)).ceil() as u64
}

pub fn candidate_set(split: &BundleSplit, rsplit: &RobustSplit, c: f64) -> CandidateSet {
    let window = candidate_window(split.s, c);
    let t_p: u64 = split.sizes.iter().zip(&rsplit.up).map(|(&s, &p)| s * p).sum();
    let minus_items: Vec<(u64, u64)> = split.sizes.iter().copied().zip(rsplit.up.iter().copied()).collect();
    let plus_items: Vec<(u64, u64)> = split
        .sizes
        .iter()
        .zip(split.up.iter().zip(&rsplit.up))
        .map(|(&s, (&u, &p))| (s, u - p))
        .collect();
    let plus = SumsetWithWitness::bounded_subset_sums(&plus_items, window);
    let minus = SumsetWithWitness::bounded_subset_sums(&minus_items, window);
    // W − b for b ∈ S⁻
    let mirrored = Bitset::from_positions(
        window as usize + 1,
        minus.attainable().into_iter().map(|b| (window - b) as usize),
    );
    let offsets = sumset(&plus.bits(), &mirrored, 2 * window);
    CandidateSet {
        t_p,
        window,
        p_up: rsplit.up.clone(),
        plus,
        minus,
        offsets,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubsetSumConfig {
    /// Candidate window constant `c`.
    pub c: f64,
    /// Targets or totals up to this size are answered from a direct table.
    pub direct_threshold: u64,
    pub dense: DenseConfig,
    /// Oracles kept for reuse across calls.
    pub cache_limit: usize,
}

impl Default for SubsetSumConfig {
    fn default() -> Self {
        SubsetSumConfig {
            c: 64.0,
            direct_threshold: 64,
            dense: DenseConfig::default(),
            cache_limit: 4096,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Yes(SolutionVector),
    No,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }
}

/// Solver holding a cache of dense oracles keyed by the leftover multiset.
#[derive(Debug, Default)]
pub struct SubsetSumSolver {
    cfg: SubsetSumConfig,
    cache: HashMap<Vec<(u64, u64)>, Rc<DenseOracle>>,
}

impl SubsetSumSolver {
    pub fn new(cfg: SubsetSumConfig) -> Self {
        SubsetSumSolver {
            cfg,
            cache: HashMap::new(),
        }
    }

    pub fn config(&self) -> &SubsetSumConfig {
        &self.cfg
    }

    fn oracle(&mut self, items: Vec<(u64, u64)>) -> Result<Rc<DenseOracle>> {
        if let Some(o) = self.cache.get(&items) {
            return Ok(Rc::clone(o));
        }
        let o = Rc::new(DenseOracle::build(&items, &self.cfg.dense)?);
        if self.cache.len() >= self.cfg.cache_limit {
            self.cache.clear();
        }
        self.cache.insert(items, Rc::clone(&o));
        Ok(o)
    }

    /// Decides the instance; a `Yes` always carries a verified solution.
    pub fn solve(&mut self, inst: &SubsetSumInstance) -> Result<Decision> {
        let t = inst.target();
        let total = inst.stats().total_size as u64;
        if t > total {
            return Ok(Decision::No);
        }
        if t == 0 {
            return Ok(Decision::Yes(inst.solution(vec![0; inst.n()])));
        }
        let decision = if t <= self.cfg.direct_threshold || total <= self.cfg.direct_threshold {
            direct(inst)?
        } else {
            self.pipeline(inst)?
        };
        if let Decision::Yes(x) = &decision {
            if !inst.verify(x)?.feasible {
                return Err(Error::Internal("assembled subset does not verify".into()));
            }
        }
        Ok(decision)
    }

    fn pipeline(&mut self, inst: &SubsetSumInstance) -> Result<Decision> {
        let red = proximity_reduce(inst.as_knapsack());
        let r = &red.instance;
        let t = r.capacity();
        let pairs: Vec<(u64, u64)> = r.items().iter().map(|it| (it.size, it.multiplicity)).collect();
        let split = bundle_split(&pairs);
        let k = split.k;
        let p = maximal_prefix(r);
        let rsplit = robust_split(&p.counts, &r.multiplicities(), k);
        let oracle = self.oracle(split.down_pairs())?;
        let cands = candidate_set(&split, &rsplit, self.cfg.c);
        let down_sum = oracle.sum();
        let lo = t.saturating_sub(down_sum).div_ceil(k);
        let hi = t / k;
        let hit = cands
            .members_in(lo, hi)
            .find(|&tp| oracle.contains(t - k * tp));
        let Some(tp) = hit else {
            return Ok(Decision::No);
        };
        let up = cands.recover(tp)?;
        let down = oracle.recover(t - k * tp)?;
        let reduced: Vec<u64> = up.iter().zip(&down).map(|(&a, &b)| k * a + b).collect();
        Ok(Decision::Yes(inst.solution(red.lift(&reduced))))
    }
}

/// Decision and witness from the full table of sums up to `t`.
fn direct(inst: &SubsetSumInstance) -> Result<Decision> {
    let table = SumsetWithWitness::bounded_subset_sums(&inst.pairs(), inst.target());
    if !table.contains(inst.target()) {
        return Ok(Decision::No);
    }
    let mut counts = vec![0u64; inst.n()];
    for (i, c) in table.recover_subset(inst.target())? {
        counts[i] = c;
    }
    Ok(Decision::Yes(inst.solution(counts)))
}

/// One-shot solve with the default configuration.
pub fn solve_subset_sum(inst: &SubsetSumInstance) -> Result<Decision> {
    SubsetSumSolver::new(SubsetSumConfig::default()).solve(inst)
}
