//! Row maxima of inverse-Monge matrices, and equality-constrained knapsack
//! profiles for all capacities built from them.
//!
//! A matrix is inverse-Monge when
//! `M[i,j] + M[i+1,j+1] ≥ M[i+1,j] + M[i,j+1]`. Its leftmost row maxima move
//! weakly to the right going down, which SMAWK exploits to find all of them
//! with `O(rows + cols)` entry evaluations.
//!
//! The profile builder groups items by size. Within one size `h` the best
//! choice of `i` copies is the `i` most valuable ones, a concave sequence, so
//! merging class `h` into the profile of all smaller sizes is a
//! `(max,+)`-convolution with a concave kernel: one inverse-Monge matrix per
//! remainder modulo `h`.

use std::cell::Cell;

use crate::error::{Error, Result};

/// Sentinel for "no solution". Never produced by adding finite values.
pub const NEG_INF: i128 = i128::MIN;

/// Adds two extended values; `NEG_INF` absorbs.
#[inline]
pub fn ext_add(a: i128, b: i128) -> i128 {
    if a == NEG_INF || b == NEG_INF {
        NEG_INF
    } else {
        a + b
    }
}

/// An integer extended by a lexicographically dominant "depth below −∞".
///
/// Entries that are conceptually −∞ get a negative `depth` chosen so that
/// the matrix stays inverse-Monge over this ordered group. Every finite
/// entry (depth 0) beats every −∞ entry, and SMAWK's tie-breaking stays
/// consistent on rows that contain no finite entry at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Penalized {
    pub depth: i64,
    pub value: i128,
}

impl Penalized {
    pub const fn finite(value: i128) -> Self {
        Penalized { depth: 0, value }
    }

    pub fn is_finite(self) -> bool {
        self.depth == 0
    }

    pub fn to_ext(self) -> i128 {
        if self.depth == 0 {
            self.value
        } else {
            NEG_INF
        }
    }
}

impl std::ops::Add for Penalized {
    type Output = Penalized;

    fn add(self, rhs: Penalized) -> Penalized {
        Penalized {
            depth: self.depth + rhs.depth,
            value: self.value + rhs.value,
        }
    }
}

/// An implicit matrix whose entries are computed on demand.
pub trait MongeView {
    type Entry: Ord + Copy;

    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn entry(&self, i: usize, j: usize) -> Self::Entry;
}

/// A [`MongeView`] backed by a closure.
pub struct FnView<F> {
    rows: usize,
    cols: usize,
    f: F,
}

impl<T: Ord + Copy, F: Fn(usize, usize) -> T> FnView<F> {
    pub fn new(rows: usize, cols: usize, f: F) -> Self {
        FnView { rows, cols, f }
    }
}

impl<T: Ord + Copy, F: Fn(usize, usize) -> T> MongeView for FnView<F> {
    type Entry = T;

    fn rows(&self) -> usize {
        self.rows
    }

    fn cols(&self) -> usize {
        self.cols
    }

    fn entry(&self, i: usize, j: usize) -> T {
        (self.f)(i, j)
    }
}

/// Wraps a view and counts entry evaluations.
pub struct Counting<V> {
    inner: V,
    evaluations: Cell<usize>,
}

impl<V: MongeView> Counting<V> {
    pub fn new(inner: V) -> Self {
        Counting {
            inner,
            evaluations: Cell::new(0),
        }
    }

    pub fn evaluations(&self) -> usize {
        self.evaluations.get()
    }
}

impl<V: MongeView> MongeView for Counting<V> {
    type Entry = V::Entry;

    fn rows(&self) -> usize {
        self.inner.rows()
    }

    fn cols(&self) -> usize {
        self.inner.cols()
    }

    fn entry(&self, i: usize, j: usize) -> V::Entry {
        self.evaluations.set(self.evaluations.get() + 1);
        self.inner.entry(i, j)
    }
}

/// Leftmost maximum `(column, value)` of every row.
///
/// The matrix must be totally monotone for maxima (inverse-Monge suffices);
/// this is not checked. An empty matrix gives an empty result.
pub fn row_maxima<V: MongeView>(m: &V) -> Vec<(usize, V::Entry)> {
    let (rows, cols) = (m.rows(), m.cols());
    if rows == 0 || cols == 0 {
        return Vec::new();
    }
    let row_ids: Vec<usize> = (0..rows).collect();
    let col_ids: Vec<usize> = (0..cols).collect();
    let mut out: Vec<Option<(usize, V::Entry)>> = vec![None; rows];
    smawk(m, &row_ids, &col_ids, &mut out);
    out.into_iter()
        .map(|e| e.expect("every row receives a maximum"))
        .collect()
}

fn smawk<V: MongeView>(
    m: &V,
    rows: &[usize],
    cols: &[usize],
    out: &mut [Option<(usize, V::Entry)>],
) {
    if rows.is_empty() {
        return;
    }
    // Reduce: keep at most rows.len() columns that can still hold a maximum.
    // Stack slot k is compared on row rows[k]; its entry there is cached.
    let mut stack: Vec<(usize, Option<V::Entry>)> = Vec::with_capacity(rows.len());
    for &c in cols {
        while !stack.is_empty() {
            let r = rows[stack.len() - 1];
            let top = stack.last_mut().expect("non-empty");
            let top_val = *top.1.get_or_insert_with(|| m.entry(r, top.0));
            if top_val < m.entry(r, c) {
                stack.pop();
            } else {
                break;
            }
        }
        if stack.len() < rows.len() {
            stack.push((c, None));
        }
    }
    let kept: Vec<usize> = stack.iter().map(|&(c, _)| c).collect();

    let odd: Vec<usize> = rows.iter().skip(1).step_by(2).copied().collect();
    smawk(m, &odd, &kept, out);

    let mut start = 0;
    for i in (0..rows.len()).step_by(2) {
        let r = rows[i];
        let stop = if i + 1 < rows.len() {
            out[rows[i + 1]].expect("odd rows solved").0
        } else {
            *kept.last().expect("at least one column")
        };
        let mut k = start;
        let mut best = (kept[k], m.entry(r, kept[k]));
        while kept[k] != stop {
            k += 1;
            let v = m.entry(r, kept[k]);
            if v > best.1 {
                best = (kept[k], v);
            }
        }
        out[r] = Some(best);
        start = k;
    }
}

/// Best values of taking `i` copies from one size class, for
/// `i = 0..=⌊t/h⌋` (or fewer when the class runs out of copies).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeClassProfile {
    pub size: u64,
    /// `prefix[i]` is the total value of the `i` most valuable copies.
    pub prefix: Vec<i128>,
}

impl SizeClassProfile {
    /// `w^{(h)}_c`: value of exactly `c` units of this size, or `NEG_INF`.
    pub fn at(&self, c: u64) -> i128 {
        if !c.is_multiple_of(self.size) {
            return NEG_INF;
        }
        self.prefix
            .get((c / self.size) as usize)
            .copied()
            .unwrap_or(NEG_INF)
    }

    fn kernel(&self, k: i64) -> Penalized {
        let cnt = self.prefix.len() as i64 - 1;
        if k < 0 {
            Penalized { depth: k, value: 0 }
        } else if k > cnt {
            Penalized {
                depth: cnt - k,
                value: self.prefix[cnt as usize],
            }
        } else {
            Penalized::finite(self.prefix[k as usize])
        }
    }
}

/// Prefix sums of the most valuable copies of size `h`, expanding at most
/// `⌊t/h⌋` copies. `items` lists `(value, multiplicity)`.
pub fn size_class_profile(h: u64, items: &[(i128, u64)], t: u64) -> SizeClassProfile {
    let mut sorted: Vec<(i128, u64)> = items.to_vec();
    sorted.sort_by(|a, b| b.0.cmp(&a.0));
    let limit = t / h;
    let mut prefix = Vec::with_capacity(1 + limit.min(1 << 20) as usize);
    prefix.push(0i128);
    let mut total = 0i128;
    'outer: for (value, mult) in sorted {
        for _ in 0..mult {
            if prefix.len() as u64 > limit {
                break 'outer;
            }
            total += value;
            prefix.push(total);
        }
    }
    SizeClassProfile { size: h, prefix }
}

/// An item with a possibly negative value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedItem {
    pub size: u64,
    pub value: i128,
    pub multiplicity: u64,
}

impl SignedItem {
    pub fn new(size: u64, value: i128, multiplicity: u64) -> Self {
        SignedItem {
            size,
            value,
            multiplicity,
        }
    }
}

#[derive(Debug, Clone)]
struct Layer {
    size: u64,
    /// Items of this size, most valuable first (ties: lower index).
    members: Vec<usize>,
    /// Copies of this size used by the optimum at each capacity.
    taken: Vec<u32>,
}

/// Optimal values of the equality-constrained problem for every capacity,
/// plus the per-size decisions needed to rebuild solutions.
#[derive(Debug, Clone)]
pub struct ValueProfile {
    values: Vec<i128>,
    layers: Vec<Layer>,
    items: Vec<SignedItem>,
}

impl ValueProfile {
    /// `values()[c]`: best `Σ v̄_i x_i` with `Σ s_i x_i = c`, or `NEG_INF`.
    pub fn values(&self) -> &[i128] {
        &self.values
    }

    pub fn capacity(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    /// Rebuilds per-item counts of an optimal solution for capacity `c`.
    pub fn recover_counts(&self, c: u64) -> Result<Vec<u64>> {
        let v = *self
            .values
            .get(c as usize)
            .ok_or(Error::Unreachable(c as i128))?;
        if v == NEG_INF {
            return Err(Error::Unreachable(c as i128));
        }
        let mut counts = vec![0u64; self.items.len()];
        let mut cap = c as usize;
        for layer in self.layers.iter().rev() {
            let mut q = layer.taken[cap] as u64;
            cap -= (q * layer.size) as usize;
            for &i in &layer.members {
                if q == 0 {
                    break;
                }
                let take = q.min(self.items[i].multiplicity);
                counts[i] = take;
                q -= take;
            }
            debug_assert_eq!(q, 0);
        }
        if cap != 0 {
            return Err(Error::Internal(format!(
                "profile walk for capacity {c} left {cap} units"
            )));
        }
        Ok(counts)
    }
}

/// Solves `max Σ v̄_i x_i` s.t. `Σ s_i x_i = c`, `0 ≤ x_i ≤ u_i` for every
/// `c ∈ 0..=t` in `O(n + s·t)` time after sorting the size classes.
pub fn equality_profiles(items: &[SignedItem], t: u64) -> ValueProfile {
    assert!(t < u32::MAX as u64, "capacity too large for a profile");
    let width = t as usize + 1;
    let mut values = vec![NEG_INF; width];
    values[0] = 0;

    let max_size = items
        .iter()
        .map(|it| it.size)
        .filter(|&s| s <= t)
        .max()
        .unwrap_or(0);
    // counting-bucket partition by size
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_size as usize + 1];
    for (i, it) in items.iter().enumerate() {
        if it.size >= 1 && it.size <= t && it.multiplicity > 0 {
            buckets[it.size as usize].push(i);
        }
    }

    let mut layers = Vec::new();
    for (h, mut members) in buckets.into_iter().enumerate() {
        if members.is_empty() {
            continue;
        }
        let h = h as u64;
        members.sort_by(|&a, &b| items[b].value.cmp(&items[a].value).then(a.cmp(&b)));
        let class: Vec<(i128, u64)> = members
            .iter()
            .map(|&i| (items[i].value, items[i].multiplicity))
            .collect();
        let kernel = size_class_profile(h, &class, t);
        let mut next = vec![NEG_INF; width];
        let mut taken = vec![0u32; width];
        merge_class(&values, &kernel, &mut next, &mut taken);
        values = next;
        layers.push(Layer {
            size: h,
            members,
            taken,
        });
    }
    ValueProfile {
        values,
        layers,
        items: items.to_vec(),
    }
}

/// `next[c] = max_q prev[c − q·h] + w[q]`, one SMAWK call per remainder.
fn merge_class(prev: &[i128], kernel: &SizeClassProfile, next: &mut [i128], taken: &mut [u32]) {
    let h = kernel.size as usize;
    let width = prev.len();
    for r in 0..h.min(width) {
        let len = (width - 1 - r) / h + 1;
        let column = |j: usize| {
            let p = prev[j * h + r];
            if p == NEG_INF {
                Penalized { depth: -1, value: 0 }
            } else {
                Penalized::finite(p)
            }
        };
        let view = FnView::new(len, len, |i, j| {
            column(j) + kernel.kernel(i as i64 - j as i64)
        });
        for (i, (j, best)) in row_maxima(&view).into_iter().enumerate() {
            let c = i * h + r;
            if best.is_finite() {
                next[c] = best.value;
                taken[c] = (i - j) as u32;
            }
        }
    }
}
