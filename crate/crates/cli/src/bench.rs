//! Built-in benchmark suites. Each row is one instance and one algorithm,
//! timed as the minimum over repetitions.

use std::io::Write;
use std::time::{Duration, Instant};

use anyhow::Result;
use clap::ValueEnum;
use multiknap::gen::{generate, Family, GenParams, Kind, TargetMode};
use multiknap::io::{Instance, Status};

use crate::{solve, Algo};

pub const CSV_HEADER: &str = "kind,n,s,u,t,algo,seed,micros,result";

#[derive(Clone, Copy, ValueEnum, Debug)]
pub enum Suite {
    /// Knapsack, n fixed, s doubling.
    SScaling,
    /// Knapsack, the same items at t = 10^6 and t = 10^9.
    TIndependence,
    /// Subset Sum on clustered instances, pipeline against the DP.
    DenseVsDp,
}

struct Row {
    params: GenParams,
    algo: Algo,
}

fn rows(suite: Suite, seed: u64) -> Vec<Row> {
    let knapsack = |n, s, t| GenParams {
        v: 1000,
        target: TargetMode::Fixed(t),
        ..GenParams::new(Kind::Knapsack, n, s, 10_000_000, seed)
    };
    match suite {
        Suite::SScaling => [16, 32, 64, 128]
            .into_iter()
            .map(|s| Row {
                params: knapsack(200, s, 1_000_000_000),
                algo: Algo::S3,
            })
            .collect(),
        Suite::TIndependence => [1_000_000, 1_000_000_000]
            .into_iter()
            .map(|t| Row {
                params: knapsack(500, 64, t),
                algo: Algo::S3,
            })
            .collect(),
        Suite::DenseVsDp => [10, 20, 40]
            .into_iter()
            .flat_map(|s| {
                let params = GenParams {
                    family: Family::Clustered,
                    target: TargetMode::Half,
                    ..GenParams::new(Kind::SubsetSum, 8, s, 200, seed)
                };
                [Algo::S53, Algo::Dp].map(|algo| Row { params, algo })
            })
            .collect(),
    }
}

fn algo_name(a: Algo) -> &'static str {
    match a {
        Algo::S3 => "s3",
        Algo::V3 => "v3",
        Algo::S53 => "s53",
        Algo::Dp => "dp",
    }
}

pub fn run(suite: Suite, seed: u64, reps: usize, out: &mut impl Write) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows(suite, seed) {
        let inst = generate(&row.params)?.instance;
        let mut best = Duration::MAX;
        let mut result = String::new();
        for _ in 0..reps {
            let start = Instant::now();
            let sol = solve(&inst, Some(row.algo))?;
            best = best.min(start.elapsed());
            result = match sol.status {
                Status::Opt => sol.value.to_string(),
                s => s.to_string(),
            };
        }
        let k = inst.as_knapsack();
        let kind = match inst {
            Instance::Knapsack(_) => "knapsack",
            Instance::SubsetSum(_) => "subsetsum",
        };
        writeln!(
            out,
            "{kind},{},{},{},{},{},{seed},{},{result}",
            k.n(),
            k.max_size(),
            k.stats().max_multiplicity,
            k.capacity(),
            algo_name(row.algo),
            best.as_micros()
        )?;
    }
    Ok(())
}
