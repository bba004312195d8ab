use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bigmath::{binomial, binomial_row, log2_big};
use crate::error::{Error, Result};
use crate::exec::{pairwise_sum, Execution};
use crate::functionals::h2;

/// One term of `(√p φ ⊕ √(1−p) ψ)^{⊗n} = ⊕_m √P(m) φ^{⊗m} ⊗ ψ^{⊗(n−m)} ⊗ GHZ_{C(n,m)}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinomialBranch {
    pub m: u64,
    /// `C(n,m) p^m (1−p)^{n−m}`.
    pub probability: f64,
    /// `C(n,m)`, the GHZ rank attached to this branch.
    #[serde(with = "crate::bigmath::big_decimal")]
    pub ghz_rank: BigUint,
}

pub(crate) fn check_np(n: u64, p: f64) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    Ok(())
}

/// `log₂(p^m (1−p)^{n−m})` with `0·log 0 = 0`.
fn log2_bernoulli(n: u64, m: u64, p: f64) -> f64 {
    let term = |count: u64, x: f64| if count == 0 { 0.0 } else { count as f64 * x.log2() };
    term(m, p) + term(n - m, 1.0 - p)
}

/// `P(m) = C(n,m) p^m (1−p)^{n−m}` evaluated in the log domain.
pub(crate) fn branch_probability(n: u64, m: u64, p: f64, log2_c: f64) -> f64 {
    (log2_c + log2_bernoulli(n, m, p)).exp2()
}

/// The `n + 1` branches of the binomial decomposition.
pub fn binomial_decomposition(n: u64, p: f64) -> Result<Vec<BinomialBranch>> {
    check_np(n, p)?;
    Ok(binomial_row(n)
        .into_iter()
        .enumerate()
        .map(|(m, c)| {
            let m = m as u64;
            BinomialBranch {
                m,
                probability: branch_probability(n, m, p, log2_big(&c)),
                ghz_rank: c,
            }
        })
        .collect())
}

/// `(1/n) Σ_m P(m) · f(C(n,m))` with deterministic pairwise summation.
pub(crate) fn branch_average(
    n: u64,
    p: f64,
    exec: Execution,
    f: impl Fn(&BigUint) -> f64 + Sync + Send,
) -> f64 {
    let row = binomial_row(n);
    let terms = exec.map_range(row.len(), |m| {
        let c = &row[m];
        let prob = branch_probability(n, m as u64, p, log2_big(c));
        if prob == 0.0 {
            0.0
        } else {
            prob * f(c)
        }
    });
    pairwise_sum(&terms) / n as f64
}

/// `(1/n) Σ_m P(m) log₂ C(n,m)`, the per-copy expected GHZ entanglement.
pub fn expected_log_ghz(n: u64, p: f64) -> Result<f64> {
    expected_log_ghz_with(n, p, Execution::default())
}

pub fn expected_log_ghz_with(n: u64, p: f64, exec: Execution) -> Result<f64> {
    check_np(n, p)?;
    Ok(branch_average(n, p, exec, log2_big))
}

/// `Σ_m P(m) h(m/n) − 2 log₂(n+1)/n`, the lower estimate of
/// [`expected_log_ghz`] from the method-of-types bounds.
pub fn expected_log_ghz_types_lower(n: u64, p: f64) -> Result<f64> {
    check_np(n, p)?;
    let row = binomial_row(n);
    let terms: Vec<f64> = row
        .iter()
        .enumerate()
        .map(|(m, c)| {
            branch_probability(n, m as u64, p, log2_big(c)) * h2(m as f64 / n as f64)
        })
        .collect();
    Ok(pairwise_sum(&terms) - 2.0 * ((n + 1) as f64).log2() / n as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogBinomialBounds {
    /// `n h(m/n) − 2 log₂(n+1)`.
    pub lower: f64,
    /// `log₂ C(n,m)`.
    pub exact: f64,
    /// `n h(m/n)`.
    pub upper: f64,
}

impl LogBinomialBounds {
    pub fn holds(&self) -> bool {
        self.lower <= self.exact && self.exact <= self.upper
    }
}

/// `n h(m/n)` computed as `−m log(m/n) − (n−m) log((n−m)/n)`.
fn n_h(n: u64, m: u64) -> f64 {
    let (n, m) = (n as f64, m as f64);
    let term = |x: f64| if x == 0.0 { 0.0 } else { -x * (x / n).log2() };
    term(m) + term(n - m)
}

fn bounds_from(n: u64, m: u64, c: &BigUint) -> LogBinomialBounds {
    let upper = n_h(n, m);
    LogBinomialBounds {
        lower: upper - 2.0 * ((n + 1) as f64).log2(),
        exact: log2_big(c),
        upper,
    }
}

/// `n h(m/n) − 2 log(n+1) ≤ log C(n,m) ≤ n h(m/n)` with exact binomials.
pub fn log_binomial_bounds(n: u64, m: u64) -> Result<LogBinomialBounds> {
    if n < 1 || m > n {
        return Err(Error::OutOfRange { n, m });
    }
    Ok(bounds_from(n, m, &binomial(n, m)))
}

/// [`log_binomial_bounds`] for every `m = 0..=n`.
pub fn log_binomial_bounds_row(n: u64) -> Result<Vec<LogBinomialBounds>> {
    if n < 1 {
        return Err(Error::OutOfRange { n, m: 0 });
    }
    Ok(binomial_row(n)
        .iter()
        .enumerate()
        .map(|(m, c)| bounds_from(n, m as u64, c))
        .collect())
}
