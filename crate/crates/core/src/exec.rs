//! Execution mode for the data-parallel loops in this crate.
//!
//! Every sweep (search over copy counts, binomial branch sums, Monte Carlo
//! shots, random property checks) goes through [`Execution::map`], which keeps
//! output order fixed. Reductions are done afterwards in a fixed order, so the
//! results do not depend on the number of threads.
//!
//! Without the `parallel` feature, [`Execution::Parallel`] silently runs
//! sequentially.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run in parallel.
    pub const fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            _ => items.into_iter().map(f).collect(),
        }
    }

    /// Maps `f` over `0..len`, preserving order.
    pub fn map_range<R, F>(self, len: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                (0..len).into_par_iter().map(f).collect()
            }
            _ => (0..len).map(f).collect(),
        }
    }
}

/// Pairwise (cascade) summation. The split points depend only on the length.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 16;
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}
