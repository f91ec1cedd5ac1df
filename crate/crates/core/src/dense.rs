//! Constant-time subset-sum membership for dense multisets, with recovery.
//!
//! A multiset `I` of `N` numbers bounded by `s` with multiplicities at most
//! `u` is dense when `N² ≫ u·s`. After dividing out a common almost-divisor
//! `d`, the reduced multiset `X' = I(d)/d` attains every sum in a long
//! middle interval, so membership of a large target only depends on its
//! residue modulo `d`.
//!
//! The interval is not taken on faith. The oracle partitions `X'` into
//! `R ⊎ A ⊎ G`, computes the low sums `T` of `R ∪ A`, and looks for a run
//! `[α, β] ⊆ T` at least as long as the largest element of `G`. Greedily
//! adding elements of `G` then reaches every value in `[α, Σ(G) + β]`,
//! which together with complements covers `[α, Σ(X') − α]`. Only when these
//! inequalities hold does the oracle answer from residues; otherwise it
//! keeps a full table of sums up to `Σ/2`. Answers are exact either way.

use crate::bellman::binary_split;
use crate::error::{Error, Result};
use crate::sumset::SumsetWithWitness;

/// Tuning constants. None of them affects correctness, only which mode is
/// chosen and how large the tables are.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenseConfig {
    /// Multiplier of `λ = C_λ · u·s·Σ/N² · log₂(2u)^e`.
    pub c_lambda: f64,
    /// Exponent `e` of the logarithmic factor in `λ`.
    pub lambda_log_exponent: i32,
    /// The low sums of `R ∪ A` are computed up to `C_T · λ(X')`.
    pub c_t: f64,
    /// `τ = ⌈C_τ · u·Σ(X')/|X'|²⌉`.
    pub c_tau: f64,
    /// Instances with `Σ ≤ C_fb · s^{3/2} u^{1/2}` always use the table.
    pub c_fb: f64,
    /// Almost-divisor parameter.
    pub alpha: f64,
    /// Density threshold: require `N² ≥ δ·u·s`.
    pub delta: f64,
    /// Largest table (parts × range) the oracle may build.
    pub budget: u128,
}

impl Default for DenseConfig {
    fn default() -> Self {
        DenseConfig {
            c_lambda: 1.0,
            lambda_log_exponent: 1,
            c_t: 4.0,
            c_tau: 1.0,
            c_fb: 1.0,
            alpha: 1.0,
            delta: 4.0,
            budget: 1 << 34,
        }
    }
}

/// Size parameters of a multiset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityStats {
    /// Number of copies `N`.
    pub count: u64,
    pub max_multiplicity: u64,
    pub max_size: u64,
    pub sum: u64,
    /// `N² / (u·s)`.
    pub rho: f64,
    pub lambda: u64,
}

impl DensityStats {
    pub fn of(items: &[(u64, u64)], cfg: &DenseConfig) -> Result<Self> {
        let mut count = 0u64;
        let mut sum = 0u64;
        let mut u = 0u64;
        let mut s = 0u64;
        for &(size, mult) in items {
            if mult == 0 {
                continue;
            }
            count = count.checked_add(mult).ok_or(Error::Overflow("element count"))?;
            let part = size.checked_mul(mult).ok_or(Error::Overflow("multiset sum"))?;
            sum = sum.checked_add(part).ok_or(Error::Overflow("multiset sum"))?;
            u = u.max(mult);
            s = s.max(size);
        }
        let (nf, uf, sf) = (count as f64, u as f64, s as f64);
        let rho = if count == 0 { 0.0 } else { nf * nf / (uf * sf) };
        let lambda = if count == 0 {
            0
        } else {
            let log = (2.0 * uf).log2().max(1.0).powi(cfg.lambda_log_exponent);
            (cfg.c_lambda * uf * sf * sum as f64 / (nf * nf) * log).ceil() as u64
        };
        Ok(DensityStats {
            count,
            max_multiplicity: u,
            max_size: s,
            sum,
            rho,
            lambda,
        })
    }

    pub fn is_dense(&self, cfg: &DenseConfig) -> bool {
        self.count > 0 && self.rho >= cfg.delta
    }

    /// `α·u·Σ/N²`: an integer `q > 1` is an almost divisor when at most this
    /// many elements are not divisible by it.
    pub fn almost_divisor_bound(&self, alpha: f64) -> f64 {
        let n = self.count as f64;
        alpha * self.max_multiplicity as f64 * self.sum as f64 / (n * n)
    }
}

/// Primes up to `n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Output of [`divisor_reduce`]: `X' = X(d)/d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorReduction {
    pub d: u64,
    /// `(input index, size / d, multiplicity)` for every input item divisible
    /// by `d`.
    pub items: Vec<(usize, u64, u64)>,
}

impl DivisorReduction {
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        self.items.iter().map(|&(_, s, m)| (s, m)).collect()
    }
}

/// Smallest prime that is an `α`-almost divisor of the multiset, if any.
pub fn find_almost_divisor(items: &[(u64, u64)], alpha: f64) -> Option<u64> {
    let stats = DensityStats::of(items, &DenseConfig::default()).ok()?;
    if stats.count == 0 {
        return None;
    }
    let bound = stats.almost_divisor_bound(alpha);
    let n = stats.count as f64;
    let u = stats.max_multiplicity as f64;
    let k = (42480.0 * u * stats.sum as f64 * (2.0 * u).log2() / (n * n)).ceil();
    let limit = (stats.max_size as f64).min(k.max(2.0)) as u64;
    primes_up_to(limit).into_iter().find(|&q| {
        let missed: u64 = items
            .iter()
            .filter(|&&(s, _)| s % q != 0)
            .map(|&(_, m)| m)
            .sum();
        (missed as f64) <= bound
    })
}

/// Divides out almost divisors until none is left.
///
/// Fails when the multiset is not `δ`-dense, since then the almost-divisor
/// condition is meaningless.
pub fn divisor_reduce(items: &[(u64, u64)], cfg: &DenseConfig) -> Result<DivisorReduction> {
    let stats = DensityStats::of(items, cfg)?;
    if !stats.is_dense(cfg) {
        return Err(Error::NotDense(format!(
            "N² / (u·s) = {:.2} is below {}",
            stats.rho, cfg.delta
        )));
    }
    let mut d = 1u64;
    let mut cur: Vec<(usize, u64, u64)> = items
        .iter()
        .enumerate()
        .filter(|(_, &(_, m))| m > 0)
        .map(|(i, &(s, m))| (i, s, m))
        .collect();
    loop {
        let pairs: Vec<(u64, u64)> = cur.iter().map(|&(_, s, m)| (s, m)).collect();
        let Some(q) = find_almost_divisor(&pairs, cfg.alpha) else {
            break;
        };
        d *= q;
        cur = cur
            .into_iter()
            .filter(|&(_, s, _)| s % q == 0)
            .map(|(i, s, m)| (i, s / q, m))
            .collect();
    }
    Ok(DivisorReduction { d, items: cur })
}

/// Partition of `X'` into `R ⊎ A ⊎ G`, by copies per item of `X'`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseDecomposition {
    pub reduction: DivisorReduction,
    pub tau: u64,
    /// Primes `p ≤ τ` dividing at least half of the first `τ` copies.
    pub primes: Vec<u64>,
    pub r: Vec<u64>,
    pub a: Vec<u64>,
    pub g: Vec<u64>,
    /// `K = 42480·u·Σ(X')·log₂(2u)/|X'|²`.
    pub k_bound: f64,
}

impl DenseDecomposition {
    fn sum_of(&self, counts: &[u64]) -> u64 {
        self.reduction
            .items
            .iter()
            .zip(counts)
            .map(|(&(_, s, _), &c)| s * c)
            .sum()
    }

    pub fn sum_r(&self) -> u64 {
        self.sum_of(&self.r)
    }

    pub fn sum_a(&self) -> u64 {
        self.sum_of(&self.a)
    }

    pub fn sum_g(&self) -> u64 {
        self.sum_of(&self.g)
    }

    pub fn sum(&self) -> u64 {
        self.reduction.items.iter().map(|&(_, s, m)| s * m).sum()
    }
}

/// Builds `R`, `A` and `G`; "arbitrary" choices take copies in item order.
pub fn build_decomposition(red: DivisorReduction, cfg: &DenseConfig) -> Result<DenseDecomposition> {
    let pairs = red.pairs();
    let stats = DensityStats::of(&pairs, cfg)?;
    let (n, u, sum) = (stats.count, stats.max_multiplicity, stats.sum);
    if n == 0 {
        return Err(Error::NotDense("reduced multiset is empty".into()));
    }
    let nf = n as f64;
    let tau = ((cfg.c_tau * u as f64 * sum as f64 / (nf * nf)).ceil() as u64).max(1);
    if tau > n {
        return Err(Error::NotDense(format!("τ = {tau} exceeds |X'| = {n}")));
    }
    let k_bound = 42480.0 * u as f64 * sum as f64 * (2.0 * u as f64).log2() / (nf * nf);
    let m = red.items.len();
    let mut r = vec![0u64; m];
    let mut left = tau;
    for (i, &(_, _, mult)) in red.items.iter().enumerate() {
        let take = mult.min(left);
        r[i] = take;
        left -= take;
    }
    let primes: Vec<u64> = primes_up_to(tau)
        .into_iter()
        .filter(|&p| {
            let divisible: u64 = red
                .items
                .iter()
                .zip(&r)
                .filter(|(&(_, s, _), _)| s % p == 0)
                .map(|(_, &c)| c)
                .sum();
            2 * divisible >= tau
        })
        .collect();
    for &p in &primes {
        let mut left = tau;
        for (i, &(_, s, mult)) in red.items.iter().enumerate() {
            if left == 0 {
                break;
            }
            if s % p != 0 {
                let take = (mult - r[i]).min(left);
                r[i] += take;
                left -= take;
            }
        }
    }
    let rest: u64 = red.items.iter().zip(&r).map(|(&(_, _, mult), &c)| mult - c).sum();
    let mut a_left = (n / 4).min(rest);
    let mut by_size: Vec<usize> = (0..m).collect();
    by_size.sort_by_key(|&i| (red.items[i].1, i));
    let mut a = vec![0u64; m];
    for &i in &by_size {
        let take = (red.items[i].2 - r[i]).min(a_left);
        a[i] = take;
        a_left -= take;
    }
    let g: Vec<u64> = (0..m).map(|i| red.items[i].2 - r[i] - a[i]).collect();
    let dec = DenseDecomposition {
        reduction: red,
        tau,
        primes,
        r,
        a,
        g,
        k_bound,
    };
    if 2 * dec.sum_g() < sum {
        return Err(Error::NotDense(format!(
            "Σ(G) = {} is less than half of Σ(X') = {sum}",
            dec.sum_g()
        )));
    }
    Ok(dec)
}

/// Least-sum subset of the items not divisible by `d` for every residue
/// modulo `d`.
#[derive(Debug, Clone)]
struct ResidueTable {
    d: u64,
    /// `(item, copies, size of the part)`.
    parts: Vec<(usize, u64, u64)>,
    min_sum: Vec<u64>,
    /// `take[p * d + r]`: the optimum for residue `r` after part `p` uses it.
    take: Vec<bool>,
}

impl ResidueTable {
    fn build(items: &[(u64, u64)], d: u64) -> Self {
        let du = d as usize;
        let mut parts = Vec::new();
        for (i, &(s, m)) in items.iter().enumerate() {
            if s % d != 0 {
                for c in binary_split(m) {
                    parts.push((i, c, s * c));
                }
            }
        }
        let mut min_sum = vec![u64::MAX; du];
        min_sum[0] = 0;
        let mut take = vec![false; parts.len() * du];
        for (p, &(_, _, size)) in parts.iter().enumerate() {
            let prev = min_sum.clone();
            for r in 0..du {
                if prev[r] == u64::MAX {
                    continue;
                }
                let r2 = (r + (size % d) as usize) % du;
                let cand = prev[r] + size;
                if cand < min_sum[r2] {
                    min_sum[r2] = cand;
                    take[p * du + r2] = true;
                }
            }
        }
        ResidueTable {
            d,
            parts,
            min_sum,
            take,
        }
    }

    fn attainable(&self, residue: u64) -> bool {
        self.min_sum[residue as usize] != u64::MAX
    }

    fn max_min_sum(&self) -> u64 {
        self.min_sum.iter().copied().filter(|&v| v != u64::MAX).max().unwrap_or(0)
    }

    fn recover(&self, residue: u64, counts: &mut [u64]) -> u64 {
        let du = self.d as usize;
        let mut r = residue as usize;
        let mut total = 0;
        for (p, &(item, c, size)) in self.parts.iter().enumerate().rev() {
            if self.take[p * du + r] {
                counts[item] += c;
                total += size;
                r = (r + du - (size % self.d) as usize) % du;
            }
        }
        debug_assert_eq!(r, 0);
        total
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Dense,
    Fallback,
}

#[derive(Debug, Clone)]
struct DenseParts {
    decomposition: DenseDecomposition,
    residues: ResidueTable,
    /// Subset sums of `R ∪ A` (as items of `X'`) up to a cap.
    low_sums: SumsetWithWitness,
    run: (u64, u64),
}

/// Membership oracle for the subset sums of a multiset `I`.
#[derive(Debug, Clone)]
pub struct DenseOracle {
    items: Vec<(u64, u64)>,
    stats: DensityStats,
    /// Targets up to this bound (after complementing) use `low_table`.
    low_bound: u64,
    low_table: SumsetWithWitness,
    dense: Option<DenseParts>,
}

impl DenseOracle {
    /// Builds the oracle for `(size, multiplicity)` items.
    pub fn build(items: &[(u64, u64)], cfg: &DenseConfig) -> Result<Self> {
        let stats = DensityStats::of(items, cfg)?;
        let half = stats.sum / 2;
        let sf = stats.max_size as f64;
        let small = (stats.sum as f64) <= cfg.c_fb * sf.powf(1.5) * (stats.max_multiplicity as f64).sqrt();
        if !small && stats.is_dense(cfg) {
            if let Ok(Some(oracle)) = Self::try_dense(items, stats, cfg) {
                return Ok(oracle);
            }
        }
        let low_table = table(items, half, cfg.budget)?;
        Ok(DenseOracle {
            items: items.to_vec(),
            stats,
            low_bound: half,
            low_table,
            dense: None,
        })
    }

    fn try_dense(items: &[(u64, u64)], stats: DensityStats, cfg: &DenseConfig) -> Result<Option<Self>> {
        let red = divisor_reduce(items, cfg)?;
        let d = red.d;
        let dec = build_decomposition(red, cfg)?;
        let xs = dec.reduction.items.clone();
        let sum_x = dec.sum();
        let lambda_x = DensityStats::of(&dec.reduction.pairs(), cfg)?.lambda;
        let ra: Vec<(u64, u64)> = xs.iter().enumerate().map(|(i, &(_, s, _))| (s, dec.r[i] + dec.a[i])).collect();
        let sum_ra = dec.sum_r() + dec.sum_a();
        let cap = ((cfg.c_t * lambda_x as f64).ceil() as u64).min(sum_ra);
        let low_sums = table(&ra, cap, cfg.budget)?;
        let g_max = xs.iter().zip(&dec.g).filter(|(_, &c)| c > 0).map(|(&(_, s, _), _)| s).max().unwrap_or(0);
        let Some(run) = find_run(&low_sums, g_max.max(1)) else {
            return Ok(None);
        };
        let (alpha, beta) = run;
        let sum_g = dec.sum_g();
        let sum_rest = stats.sum - d * sum_x;
        // [α, Σ(G) + β] and its complement inside X' must overlap ...
        let covers = 2 * (sum_g + beta) + 1 >= sum_x;
        // ... and every residual target of a query must land in [α, Σ(X') − α].
        let fits = d * sum_x + sum_rest <= 2 * d * sum_x.saturating_sub(alpha);
        if !covers || !fits || 2 * alpha > sum_x {
            return Ok(None);
        }
        let residues = ResidueTable::build(items, d);
        let low_bound = stats.lambda.max(residues.max_min_sum() + d * alpha);
        if low_bound >= stats.sum / 2 {
            return Ok(None);
        }
        let low_table = table(items, low_bound, cfg.budget)?;
        Ok(Some(DenseOracle {
            items: items.to_vec(),
            stats,
            low_bound,
            low_table,
            dense: Some(DenseParts {
                decomposition: dec,
                residues,
                low_sums,
                run,
            }),
        }))
    }

    pub fn mode(&self) -> Mode {
        if self.dense.is_some() {
            Mode::Dense
        } else {
            Mode::Fallback
        }
    }

    pub fn stats(&self) -> &DensityStats {
        &self.stats
    }

    pub fn sum(&self) -> u64 {
        self.stats.sum
    }

    /// `λ'`: the largest (complemented) target answered from the table.
    pub fn low_bound(&self) -> u64 {
        self.low_bound
    }

    pub fn divisor(&self) -> u64 {
        self.dense.as_ref().map_or(1, |p| p.decomposition.reduction.d)
    }

    pub fn decomposition(&self) -> Option<&DenseDecomposition> {
        self.dense.as_ref().map(|p| &p.decomposition)
    }

    /// The certified run `[α, β]` of consecutive low sums of `R ∪ A`.
    pub fn run(&self) -> Option<(u64, u64)> {
        self.dense.as_ref().map(|p| p.run)
    }

    /// Whether `t` is a subset sum; `false` outside `[0, Σ]`.
    pub fn contains(&self, t: u64) -> bool {
        if t > self.stats.sum {
            return false;
        }
        let t = t.min(self.stats.sum - t);
        if t <= self.low_bound {
            return self.low_table.contains(t);
        }
        let parts = self.dense.as_ref().expect("targets above the table need dense mode");
        parts.residues.attainable(t % parts.residues.d)
    }

    pub fn query(&self, t: u64) -> Result<bool> {
        if t > self.stats.sum {
            return Err(Error::OutOfRange {
                target: t,
                total: self.stats.sum,
            });
        }
        Ok(self.contains(t))
    }

    /// Copies per item of a sub-multiset summing to `t`.
    pub fn recover(&self, t: u64) -> Result<Vec<u64>> {
        if !self.query(t)? {
            return Err(Error::Unreachable(t as i128));
        }
        let flip = t > self.stats.sum - t;
        let target = if flip { self.stats.sum - t } else { t };
        let mut counts = if target <= self.low_bound {
            let mut c = vec![0u64; self.items.len()];
            for (i, k) in self.low_table.recover_subset(target)? {
                c[i] = k;
            }
            c
        } else {
            self.recover_dense(target)?
        };
        if flip {
            for (c, &(_, m)) in counts.iter_mut().zip(&self.items) {
                *c = m - *c;
            }
        }
        debug_assert_eq!(
            counts.iter().zip(&self.items).map(|(&c, &(s, _))| c * s).sum::<u64>(),
            t
        );
        Ok(counts)
    }

    fn recover_dense(&self, t: u64) -> Result<Vec<u64>> {
        let parts = self.dense.as_ref().expect("dense mode");
        let dec = &parts.decomposition;
        let d = dec.reduction.d;
        let mut counts = vec![0u64; self.items.len()];
        let used = parts.residues.recover(t % d, &mut counts);
        let r = (t - used) / d;
        let xs = &dec.reduction.items;
        let sum_x = dec.sum();
        let (flip, r) = if r > dec.sum_g() + parts.run.1 {
            (true, sum_x - r)
        } else {
            (false, r)
        };
        let mut inner = self
            .greedy_prefix(parts, r)
            .ok_or_else(|| Error::Internal(format!("no greedy prefix reaches residual {r}")))?;
        if flip {
            for (c, &(_, _, m)) in inner.iter_mut().zip(xs) {
                *c = m - *c;
            }
        }
        for (&(orig, _, _), &c) in xs.iter().zip(&inner) {
            counts[orig] += c;
        }
        Ok(counts)
    }

    /// Copies per item of `X'` summing to `r`: a greedy prefix of `G`
    /// (largest first) plus low sums of `R ∪ A`.
    fn greedy_prefix(&self, parts: &DenseParts, r: u64) -> Option<Vec<u64>> {
        let dec = &parts.decomposition;
        let xs = &dec.reduction.items;
        let mut order: Vec<usize> = (0..xs.len()).filter(|&i| dec.g[i] > 0).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(xs[i].1), i));
        let mut taken = vec![0u64; xs.len()];
        let mut rest = r;
        let mut copies = order.iter().flat_map(|&i| std::iter::repeat_n(i, dec.g[i] as usize));
        loop {
            if parts.low_sums.contains(rest) {
                let mut out: Vec<u64> = xs.iter().map(|_| 0).collect();
                for (i, k) in parts.low_sums.recover_subset(rest).ok()? {
                    out[i] = k;
                }
                for (o, t) in out.iter_mut().zip(&taken) {
                    *o += t;
                }
                return Some(out);
            }
            let i = copies.next()?;
            rest = rest.checked_sub(xs[i].1)?;
            taken[i] += 1;
        }
    }
}

/// Subset sums up to `cap`, refusing tables over budget.
fn table(items: &[(u64, u64)], cap: u64, budget: u128) -> Result<SumsetWithWitness> {
    let parts: u128 = items
        .iter()
        .map(|&(_, m)| binary_split(m).len() as u128)
        .sum();
    let needed = parts.max(1) * (cap as u128 + 1);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(SumsetWithWitness::bounded_subset_sums(items, cap))
}

/// First maximal run of consecutive attainable sums of length at least
/// `len`.
fn find_run(sums: &SumsetWithWitness, len: u64) -> Option<(u64, u64)> {
    let bits = sums.bits();
    let mut start: Option<u64> = None;
    for v in 0..=bits.len() as u64 {
        if bits.get(v as usize) {
            start.get_or_insert(v);
        } else if let Some(a) = start.take() {
            if v - a >= len {
                return Some((a, v - 1));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(items: &[(u64, u64)]) -> Vec<bool> {
        let sum: u64 = items.iter().map(|&(s, m)| s * m).sum();
        let mut reach = vec![false; sum as usize + 1];
        reach[0] = true;
        for &(s, m) in items {
            for _ in 0..m {
                for v in (s as usize..=sum as usize).rev() {
                    reach[v] |= reach[v - s as usize];
                }
            }
        }
        reach
    }

    fn check_all(items: &[(u64, u64)], oracle: &DenseOracle) {
        let truth = dp(items);
        for (t, &yes) in truth.iter().enumerate() {
            assert_eq!(oracle.contains(t as u64), yes, "t = {t}");
            if yes {
                let c = oracle.recover(t as u64).unwrap();
                let total: u64 = c.iter().zip(items).map(|(&c, &(s, m))| {
                    assert!(c <= m);
                    c * s
                }).sum();
                assert_eq!(total, t as u64);
            }
        }
    }

    #[test]
    fn primes() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(primes_up_to(1).is_empty());
    }

    #[test]
    fn all_ones() {
        let items = [(1u64, 400u64)];
        let o = DenseOracle::build(&items, &DenseConfig::default()).unwrap();
        for t in 0..=400 {
            assert!(o.contains(t));
        }
        assert_eq!(o.recover(3).unwrap(), vec![3]);
        assert!(!o.contains(401));
        assert!(o.query(401).is_err());
    }

    #[test]
    fn odd_elements_have_no_divisor() {
        let items: Vec<(u64, u64)> = (0..10).map(|i| (2 * i + 1, 10)).collect();
        let red = divisor_reduce(&items, &DenseConfig::default()).unwrap();
        assert_eq!(red.d, 1);
    }

    #[test]
    fn multiples_of_four() {
        let items: Vec<(u64, u64)> = (1..=10).map(|i| (4 * i, 10)).collect();
        let red = divisor_reduce(&items, &DenseConfig::default()).unwrap();
        assert_eq!(red.d % 4, 0);
        assert!(red.items.iter().all(|&(i, s, _)| s * red.d == items[i].0));
    }

    #[test]
    fn sparse_input_is_rejected_by_reduction() {
        let items = [(37u64, 1u64), (40, 1)];
        assert!(matches!(
            divisor_reduce(&items, &DenseConfig::default()),
            Err(Error::NotDense(_))
        ));
        let o = DenseOracle::build(&items, &DenseConfig::default()).unwrap();
        assert_eq!(o.mode(), Mode::Fallback);
        check_all(&items, &o);
    }

    #[test]
    fn dense_mode_with_divisor_and_outliers() {
        // many multiples of 3 plus one stray element
        let items: Vec<(u64, u64)> = vec![(3, 60), (6, 60), (9, 60), (12, 60), (5, 1)];
        let o = DenseOracle::build(&items, &DenseConfig::default()).unwrap();
        assert_eq!(o.mode(), Mode::Dense);
        assert_eq!(o.divisor(), 3);
        check_all(&items, &o);
    }

    #[test]
    fn dense_mode_plain() {
        let items: Vec<(u64, u64)> = (5..=20).map(|s| (s, 20)).collect();
        let o = DenseOracle::build(&items, &DenseConfig::default()).unwrap();
        assert_eq!(o.mode(), Mode::Dense);
        check_all(&items, &o);
        let dec = o.decomposition().unwrap();
        for (i, &(_, _, m)) in dec.reduction.items.iter().enumerate() {
            assert_eq!(dec.r[i] + dec.a[i] + dec.g[i], m);
        }
        assert!(2 * dec.sum_g() >= dec.sum());
    }

    #[test]
    fn empty_multiset() {
        let o = DenseOracle::build(&[], &DenseConfig::default()).unwrap();
        assert!(o.contains(0));
        assert!(!o.contains(1));
        assert_eq!(o.recover(0).unwrap(), Vec::<u64>::new());
    }
}
