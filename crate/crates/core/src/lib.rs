//! Exact solvers for Knapsack and Subset Sum where every item carries a
//! binary-encoded multiplicity. Running times depend on the number of
//! distinct items and the largest item size (or value), not on the capacity.

pub mod bellman;
pub mod bitset;
pub mod dense;
pub mod error;
pub mod gen;
pub mod instance;
pub mod io;
pub mod knapsack;
pub mod ntt;
pub mod prefix;
pub mod smawk;
pub mod subsetsum;
pub mod sumset;

pub use error::{Error, Result};
pub use instance::{
    validate_and_normalize, Item, KnapsackInstance, RawItem, Report, SolutionVector, Stats,
    SubsetSumInstance,
};
