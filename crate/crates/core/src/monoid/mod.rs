//! Preordered commutative monoids with a generator, and a search for
//! certified lower bounds on achievable rates.
//!
//! For copy counts `n = 1..=n_max` the search finds the largest `m` with
//!
//! ```text
//! x^n · g^⌊δn⌋  ≥_ε  y^m
//! ```
//!
//! and reports the best ratio `m/n` together with its witness. Every entry of
//! the per-`n` table is an instance of the relation above, so the reported
//! ratio is a lower bound for the `(δ, ε)`-relaxed rate.

mod bipartite;
pub mod majorization;
mod toy;

use serde::{Deserialize, Serialize};

pub use bipartite::{monoid_of_bipartite_pure, BipartitePureMonoid};
pub use majorization::{majorization_geq, majorized_by, truncate_spectrum};
pub use toy::NaturalsMonoid;

use crate::error::{Error, Result};
use crate::exec::Execution;

pub const DEFAULT_N_MAX: u64 = 200;
pub const N_MAX_CAP: u64 = 5000;
/// Largest `m` probed before the target is declared unit-like.
pub const M_SEARCH_CAP: u64 = 1 << 20;

/// A preordered commutative monoid in multiplicative notation with a
/// generator and an ε-relaxed order oracle.
///
/// `geq(x, y, ε)` means "`x` can reach within purified distance `ε` of `y`".
/// It must be reflexive at `ε = 0`, monotone in `ε`, and `x ≥ 1` must hold
/// for every element.
pub trait PreorderedMonoid: Sync {
    type Element: Clone + Send + Sync;

    fn unit(&self) -> Self::Element;

    fn combine(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;

    fn generator(&self) -> Self::Element;

    fn geq(&self, x: &Self::Element, y: &Self::Element, eps: f64) -> Result<bool>;

    /// `x^n` by square-and-multiply; override when a closed form exists.
    fn power(&self, x: &Self::Element, n: u64) -> Self::Element {
        let mut acc = self.unit();
        let mut base = x.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.combine(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.combine(&base, &base);
            }
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchParams {
    /// Generator budget per copy; `⌊δn⌋` generator copies are used at `n`.
    pub delta: f64,
    /// Allowed purified-distance error.
    pub eps: f64,
    pub n_max: u64,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            delta: 0.05,
            eps: 0.05,
            n_max: DEFAULT_N_MAX,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub n: u64,
    pub m: u64,
    pub d: u64,
    pub eps: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: u64,
    pub d: u64,
    /// Largest `m` with `x^n g^d ≥_ε y^m`.
    pub m: u64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateSearchResult {
    pub best_ratio: f64,
    pub witness: Witness,
    pub table: Vec<TableRow>,
}

impl RateSearchResult {
    /// Per-`n` table as CSV with header `n,d,m,ratio`.
    pub fn table_csv(&self) -> String {
        let mut out = String::from("n,d,m,ratio\n");
        for r in &self.table {
            out.push_str(&format!("{},{},{},{:.12}\n", r.n, r.d, r.m, r.ratio));
        }
        out
    }
}

/// `⌊δn⌋`, robust to the representation error of decimal `δ`.
pub fn generator_budget(delta: f64, n: u64) -> u64 {
    (delta * n as f64 * (1.0 + 1e-12)).floor().max(0.0) as u64
}

/// Largest `m` with `geq(source, y^m, ε)`, verified at the boundary.
fn largest_m<M: PreorderedMonoid>(
    monoid: &M,
    source: &M::Element,
    y: &M::Element,
    eps: f64,
) -> Result<u64> {
    let test = |m: u64| monoid.geq(source, &monoid.power(y, m), eps);
    if !test(0)? {
        return Err(Error::SearchFailed(
            "order oracle rejects x ≥ 1".to_string(),
        ));
    }
    let mut lo = 0u64;
    let mut hi = 1u64;
    while test(hi)? {
        lo = hi;
        hi *= 2;
        if hi > M_SEARCH_CAP {
            return Err(Error::SearchFailed(format!(
                "no failure up to m = {M_SEARCH_CAP}; target behaves like the unit"
            )));
        }
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if test(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Boundary check: m* accepted, m*+1 rejected.
    if !test(lo)? || test(lo + 1)? {
        return Err(Error::SearchFailed(format!(
            "oracle is not antitone in m at the boundary m = {lo}"
        )));
    }
    Ok(lo)
}

/// Searches `n = 1..=n_max` for the best ratio `m/n` with
/// `x^n g^⌊δn⌋ ≥_ε y^m`. Ties keep the smallest `n`.
pub fn achievable_rate_lower_bound<M: PreorderedMonoid>(
    monoid: &M,
    x: &M::Element,
    y: &M::Element,
    params: SearchParams,
    exec: Execution,
) -> Result<RateSearchResult> {
    if params.n_max < 1 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    if params.n_max > N_MAX_CAP {
        return Err(Error::InvalidArgument(format!(
            "n_max {} exceeds the cap {N_MAX_CAP}",
            params.n_max
        )));
    }
    if !(params.delta >= 0.0) || !(params.eps >= 0.0) {
        return Err(Error::InvalidArgument(
            "delta and eps must be nonnegative".into(),
        ));
    }
    let g = monoid.generator();
    let ns: Vec<u64> = (1..=params.n_max).collect();
    let rows = exec.map(ns, |n| {
        let d = generator_budget(params.delta, n);
        let source = monoid.combine(&monoid.power(x, n), &monoid.power(&g, d));
        let m = largest_m(monoid, &source, y, params.eps)?;
        Ok(TableRow {
            n,
            d,
            m,
            ratio: m as f64 / n as f64,
        })
    });
    let table: Vec<TableRow> = rows.into_iter().collect::<Result<_>>()?;
    let best = table
        .iter()
        .copied()
        .reduce(|best, r| {
            if u128::from(r.m) * u128::from(best.n) > u128::from(best.m) * u128::from(r.n) {
                r
            } else {
                best
            }
        })
        .expect("n_max ≥ 1");
    Ok(RateSearchResult {
        best_ratio: best.ratio,
        witness: Witness {
            n: best.n,
            m: best.m,
            d: best.d,
            eps: params.eps,
        },
        table,
    })
}
