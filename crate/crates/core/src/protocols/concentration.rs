//! Entanglement concentration read off the binomial decomposition.
//!
//! Measuring the branch label `m` of `(√p|00⟩ + √(1−p)|11⟩)^{⊗n}` leaves a
//! maximally entangled state of rank `C(n,m)`, which converts exactly into
//! `⌊log₂ C(n,m)⌋` EPR pairs (uniform(r) ≺ uniform(2^j) iff `2^j ≤ r`).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use super::binomial::{branch_average, check_np};
use crate::bigmath::{binomial_row, floor_log2_big};
use crate::error::{Error, Result};
use crate::exec::{pairwise_sum, Execution};

/// Shots per independently seeded chunk. Fixed so that results do not depend
/// on the thread count.
pub const SHOTS_PER_CHUNK: usize = 1024;

/// `(1/n) Σ_m P(m) ⌊log₂ C(n,m)⌋`: expected EPR pairs per copy.
pub fn concentration_yield(n: u64, p: f64) -> Result<f64> {
    concentration_yield_with(n, p, Execution::default())
}

pub fn concentration_yield_with(n: u64, p: f64, exec: Execution) -> Result<f64> {
    check_np(n, p)?;
    Ok(branch_average(n, p, exec, |c| floor_log2_big(c) as f64))
}

/// `concentration_yield(n, p)` for every `n = 1..=n_max`, as CSV-ready rows.
pub fn concentration_yield_sweep(n_max: u64, p: f64, exec: Execution) -> Result<Vec<(u64, f64)>> {
    check_np(n_max, p)?;
    let ns: Vec<u64> = (1..=n_max).collect();
    exec.map(ns, |n| {
        concentration_yield_with(n, p, Execution::Sequential).map(|y| (n, y))
    })
    .into_iter()
    .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationSample {
    pub n: u64,
    pub p: f64,
    pub seed: u64,
    /// Per-shot yields `⌊log₂ C(n,m)⌋ / n`.
    pub yields: Vec<f64>,
    pub mean: f64,
    pub std_dev: f64,
    /// `std_dev / √shots`.
    pub std_error: f64,
    /// Exact [`concentration_yield`].
    pub expected: f64,
}

/// Monte Carlo run of the concentration protocol: sample `m ~ Binomial(n, p)`
/// and record `⌊log₂ C(n,m)⌋ / n` per shot.
pub fn concentration_simulate(
    n: u64,
    p: f64,
    shots: usize,
    seed: u64,
    exec: Execution,
) -> Result<ConcentrationSample> {
    check_np(n, p)?;
    if shots < 1 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let table: Vec<f64> = binomial_row(n)
        .iter()
        .map(|c| floor_log2_big(c) as f64 / n as f64)
        .collect();
    let dist = Binomial::new(n, p).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let chunks = shots.div_ceil(SHOTS_PER_CHUNK);
    let parts = exec.map_range(chunks, |c| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(c as u64);
        let len = SHOTS_PER_CHUNK.min(shots - c * SHOTS_PER_CHUNK);
        (0..len)
            .map(|_| table[dist.sample(&mut rng) as usize])
            .collect::<Vec<f64>>()
    });
    let yields: Vec<f64> = parts.into_iter().flatten().collect();
    let mean = pairwise_sum(&yields) / shots as f64;
    let sq: Vec<f64> = yields.iter().map(|y| (y - mean) * (y - mean)).collect();
    let var = if shots > 1 {
        pairwise_sum(&sq) / (shots - 1) as f64
    } else {
        0.0
    };
    let std_dev = var.sqrt();
    Ok(ConcentrationSample {
        n,
        p,
        seed,
        mean,
        std_dev,
        std_error: std_dev / (shots as f64).sqrt(),
        expected: concentration_yield_with(n, p, exec)?,
        yields,
    })
}
