//! Seeded random instances. Output is deterministic per seed across
//! platforms (ChaCha8).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::instance::{Item, KnapsackInstance, SubsetSumInstance};
use crate::io::{Instance, InstanceFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Knapsack,
    SubsetSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Sizes uniform in `[1, s]`.
    Uniform,
    /// A handful of size classes near `s` with high multiplicities.
    Clustered,
    /// Every size even (all sizes 1 when `s = 1`).
    Parity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetMode {
    /// Uniform in `[1, Σ]`.
    Random,
    /// Sum of a random sub-multiset.
    Feasible,
    /// `⌊Σ/2⌋`.
    Half,
    Fixed(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub kind: Kind,
    pub family: Family,
    pub n: usize,
    /// Largest size.
    pub s: u64,
    /// Largest value (knapsack only).
    pub v: u64,
    /// Largest multiplicity.
    pub u: u64,
    pub target: TargetMode,
    pub seed: u64,
}

impl GenParams {
    pub fn new(kind: Kind, n: usize, s: u64, u: u64, seed: u64) -> Self {
        GenParams {
            kind,
            family: Family::Uniform,
            n,
            s,
            v: s,
            u,
            target: TargetMode::Random,
            seed,
        }
    }
}

fn draw_items(p: &GenParams, rng: &mut ChaCha8Rng) -> Vec<Item> {
    let s = p.s.max(1);
    let u = p.u.max(1);
    let classes: Vec<u64> = match p.family {
        Family::Clustered => {
            let c = (p.n as f64).sqrt().ceil().max(1.0) as usize;
            let lo = (3 * s / 4).max(1);
            (0..c).map(|_| rng.gen_range(lo..=s)).collect()
        }
        _ => Vec::new(),
    };
    (0..p.n)
        .map(|_| {
            let size = match p.family {
                Family::Uniform => rng.gen_range(1..=s),
                Family::Clustered => classes[rng.gen_range(0..classes.len())],
                Family::Parity if s >= 2 => 2 * rng.gen_range(1..=s / 2),
                Family::Parity => 1,
            };
            let mult = match p.family {
                Family::Clustered => rng.gen_range(u.div_ceil(2)..=u),
                _ => rng.gen_range(1..=u),
            };
            let value = match p.kind {
                Kind::Knapsack => rng.gen_range(0..=p.v),
                Kind::SubsetSum => size,
            };
            Item::new(size, value, mult)
        })
        .collect()
}

/// Draws an instance; the seed is recorded as a comment.
pub fn generate(p: &GenParams) -> Result<InstanceFile> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let items = draw_items(p, &mut rng);
    let total: u128 = items.iter().map(|it| it.size as u128 * it.multiplicity as u128).sum();
    let total = total.min(i64::MAX as u128) as u64;
    let t = match p.target {
        TargetMode::Random if total == 0 => 0,
        TargetMode::Random => rng.gen_range(1..=total),
        TargetMode::Half => total / 2,
        TargetMode::Fixed(t) => t,
        TargetMode::Feasible => {
            let sum: u128 = items
                .iter()
                .map(|it| it.size as u128 * rng.gen_range(0..=it.multiplicity) as u128)
                .sum();
            sum.min(i64::MAX as u128) as u64
        }
    };
    let instance = match p.kind {
        Kind::Knapsack => Instance::Knapsack(KnapsackInstance::normalized(items, t)?),
        Kind::SubsetSum => {
            let pairs: Vec<(u64, u64)> = items.iter().map(|it| (it.size, it.multiplicity)).collect();
            Instance::SubsetSum(SubsetSumInstance::normalized(&pairs, t)?)
        }
    };
    Ok(InstanceFile {
        comments: vec![format!("seed {}", p.seed)],
        instance,
    })
}
