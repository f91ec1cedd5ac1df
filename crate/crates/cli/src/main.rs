use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use multiknap::bellman::bellman_oracle;
use multiknap::gen::{generate, Family, GenParams, Kind, TargetMode};
use multiknap::io::{parse_instance, parse_solution, Instance, SolutionFile, Status};
use multiknap::knapsack::{solve_small_sizes, solve_small_values};
use multiknap::subsetsum::{solve_subset_sum, Decision};
use multiknap::KnapsackInstance;

mod bench;

#[derive(Parser)]
#[command(name = "multiknap", version, about = "Knapsack and Subset Sum with multiplicities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file and print a solution file.
    Solve {
        path: PathBuf,
        #[arg(long, value_enum)]
        algo: Option<Algo>,
    },
    /// Print a random instance file.
    Gen {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        u: u64,
        /// Largest value (knapsack); defaults to s.
        #[arg(long)]
        v: Option<u64>,
        #[arg(long, value_enum, default_value = "uniform")]
        family: FamilyArg,
        #[arg(long = "t-mode", value_enum, default_value = "random")]
        t_mode: TModeArg,
        /// Explicit target; overrides --t-mode.
        #[arg(long)]
        t: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a solution file against an instance file.
    Verify {
        instance: PathBuf,
        solution: PathBuf,
        /// Recompute the optimum (or reachability) with the reference DP.
        #[arg(long, value_enum)]
        against: Option<Against>,
    },
    /// Run a benchmark suite and print CSV.
    Bench {
        #[arg(value_enum)]
        suite: bench::Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Timed repetitions per row; the minimum is reported.
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq, Debug)]
pub enum Algo {
    /// Knapsack, small sizes.
    S3,
    /// Knapsack, small values.
    V3,
    /// Subset Sum.
    S53,
    /// Reference dynamic program.
    Dp,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Knapsack,
    Subsetsum,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Uniform,
    Clustered,
    Parity,
}

#[derive(Clone, Copy, ValueEnum)]
enum TModeArg {
    Random,
    Feasible,
    Half,
}

#[derive(Clone, Copy, ValueEnum)]
enum Against {
    Dp,
}

/// Outcome of a check, as opposed to a usage or input error.
enum Verdict {
    Ok,
    Rejected(String),
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_instance(path: &Path) -> Result<Instance> {
    let text = read(path)?;
    Ok(parse_instance(&text).with_context(|| path.display().to_string())?.instance)
}

fn dp_optimum(k: &KnapsackInstance) -> Result<multiknap::bellman::DpProfile> {
    Ok(bellman_oracle(k)?)
}

/// Solves `inst`; the solution's status tells the decision.
pub fn solve(inst: &Instance, algo: Option<Algo>) -> Result<SolutionFile> {
    match inst {
        Instance::Knapsack(k) => {
            let algo = algo.unwrap_or(if k.max_value() < k.max_size() { Algo::V3 } else { Algo::S3 });
            let x = match algo {
                Algo::S3 => solve_small_sizes(k),
                Algo::V3 => solve_small_values(k),
                Algo::Dp => dp_optimum(k)?.recover(k, k.capacity())?,
                Algo::S53 => bail!("algorithm s53 solves subset sum instances only"),
            };
            Ok(SolutionFile::from_solution(&x, Status::Opt))
        }
        Instance::SubsetSum(ss) => {
            let k = ss.as_knapsack();
            let t = ss.target();
            let x = match algo.unwrap_or(Algo::S53) {
                Algo::S53 => match solve_subset_sum(ss)? {
                    Decision::Yes(x) => Some(x),
                    Decision::No => None,
                },
                Algo::S3 => Some(solve_small_sizes(k)),
                Algo::V3 => Some(solve_small_values(k)),
                Algo::Dp => {
                    let dp = dp_optimum(k)?;
                    Some(dp.recover(k, t)?)
                }
            };
            Ok(match x {
                Some(x) if x.total_size == t as i128 => SolutionFile::from_solution(&x, Status::Yes),
                _ => SolutionFile::no(),
            })
        }
    }
}

fn verify(inst: &Instance, sol: &SolutionFile, against: Option<Against>) -> Result<Verdict> {
    let k = inst.as_knapsack();
    let counts = match sol.counts(k.n()) {
        Ok(c) => c,
        Err(e) => return Ok(Verdict::Rejected(e.to_string())),
    };
    let x = k.solution(counts);
    let within = x.counts.iter().zip(k.items()).all(|(&c, it)| c <= it.multiplicity);
    if !within {
        return Ok(Verdict::Rejected("a count exceeds its multiplicity".into()));
    }
    if x.total_value != sol.value as i128 || x.total_size != sol.size as i128 {
        return Ok(Verdict::Rejected(format!(
            "header says value {} size {}, entries give value {} size {}",
            sol.value, sol.size, x.total_value, x.total_size
        )));
    }
    match (inst, sol.status) {
        (Instance::Knapsack(_), Status::Opt) => {
            if x.total_size > k.capacity() as i128 {
                return Ok(Verdict::Rejected("size exceeds capacity".into()));
            }
            if against.is_some() {
                let opt = dp_optimum(k)?.optimum();
                if opt != x.total_value {
                    return Ok(Verdict::Rejected(format!("value {} is not optimal ({opt})", x.total_value)));
                }
            }
        }
        (Instance::SubsetSum(ss), Status::Yes) => {
            if x.total_size != ss.target() as i128 {
                return Ok(Verdict::Rejected(format!("sum {} differs from target {}", x.total_size, ss.target())));
            }
        }
        (Instance::SubsetSum(ss), Status::No) => {
            if !sol.entries.is_empty() {
                return Ok(Verdict::Rejected("NO answer lists items".into()));
            }
            if against.is_some() && dp_optimum(k)?.optimum() == ss.target() as i128 {
                return Ok(Verdict::Rejected("target is attainable".into()));
            }
        }
        (inst, status) => {
            return Ok(Verdict::Rejected(format!("status {status} does not apply to a {} instance", inst.kind())));
        }
    }
    Ok(Verdict::Ok)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve { path, algo } => {
            let inst = load_instance(&path)?;
            let sol = solve(&inst, algo)?;
            print!("{sol}");
            Ok(if sol.status == Status::No { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Gen {
            kind,
            n,
            s,
            u,
            v,
            family,
            t_mode,
            t,
            seed,
        } => {
            if s == 0 || u == 0 {
                bail!("--s and --u must be positive");
            }
            let target = match (t, t_mode) {
                (Some(t), _) => TargetMode::Fixed(t),
                (None, TModeArg::Random) => TargetMode::Random,
                (None, TModeArg::Feasible) => TargetMode::Feasible,
                (None, TModeArg::Half) => TargetMode::Half,
            };
            let p = GenParams {
                kind: match kind {
                    KindArg::Knapsack => Kind::Knapsack,
                    KindArg::Subsetsum => Kind::SubsetSum,
                },
                family: match family {
                    FamilyArg::Uniform => Family::Uniform,
                    FamilyArg::Clustered => Family::Clustered,
                    FamilyArg::Parity => Family::Parity,
                },
                n,
                s,
                v: v.unwrap_or(s),
                u,
                target,
                seed,
            };
            print!("{}", generate(&p)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            instance,
            solution,
            against,
        } => {
            let inst = load_instance(&instance)?;
            let sol = parse_solution(&read(&solution)?).with_context(|| solution.display().to_string())?;
            match verify(&inst, &sol, against)? {
                Verdict::Ok => {
                    println!("ok");
                    Ok(ExitCode::SUCCESS)
                }
                Verdict::Rejected(why) => {
                    println!("rejected: {why}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Bench { suite, seed, reps } => {
            bench::run(suite, seed, reps.max(1), &mut std::io::stdout().lock())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
