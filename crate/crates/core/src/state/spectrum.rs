//! Grouped Schmidt spectra: `(weight, multiplicity)` pairs with log-domain
//! weights and exact big-integer multiplicities.
//!
//! Tensor powers of a state have exponentially many Schmidt coefficients but
//! only polynomially many distinct values, so everything downstream of a
//! single-copy spectrum works on this compressed form.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bigmath::{ceil_to_big, log2_big, mass};
use crate::error::{Error, Result};

/// Eigenvalues closer than this are grouped into one entry.
pub const EIGEN_GROUP_TOL: f64 = 1e-9;
/// Eigenvalues at or below this are treated as zero.
pub const EIGEN_ZERO_TOL: f64 = 1e-12;
/// Entries whose log₂-weights differ by less than this are merged.
pub const LOG_MERGE_TOL: f64 = 1e-9;
/// Allowed deviation of the total mass from 1.
pub const MASS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    /// `log₂` of the eigenvalue.
    pub log2_weight: f64,
    /// Number of eigenvalues equal to this weight.
    #[serde(with = "crate::bigmath::big_decimal")]
    pub multiplicity: BigUint,
}

impl SpectrumEntry {
    pub fn weight(&self) -> f64 {
        self.log2_weight.exp2()
    }

    /// `weight · multiplicity`.
    pub fn mass(&self) -> f64 {
        mass(&self.multiplicity, self.log2_weight)
    }
}

/// Compressed eigenvalue spectrum of a reduced state, sorted by weight descending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchmidtSpectrum {
    entries: Vec<SpectrumEntry>,
}

impl SchmidtSpectrum {
    /// Builds a spectrum from `(weight, multiplicity)` pairs in any order.
    pub fn new(pairs: impl IntoIterator<Item = (f64, BigUint)>) -> Result<Self> {
        let mut raw = Vec::new();
        for (w, c) in pairs {
            if !(w > 0.0 && w <= 1.0 + MASS_TOL) {
                return Err(Error::InvalidSpectrum(format!("weight {w} not in (0, 1]")));
            }
            if c.is_zero() {
                return Err(Error::InvalidSpectrum("zero multiplicity".into()));
            }
            raw.push((w.log2(), c));
        }
        let s = Self::from_log_pairs(raw);
        s.validate()?;
        Ok(s)
    }

    /// Convenience constructor from plain probabilities, each with multiplicity 1.
    pub fn from_probabilities(ps: &[f64]) -> Result<Self> {
        Self::new(
            ps.iter()
                .filter(|&&p| p > 0.0)
                .map(|&p| (p, BigUint::one())),
        )
    }

    /// Groups raw eigenvalues (tolerance [`EIGEN_GROUP_TOL`]), dropping zeros.
    pub fn from_eigenvalues(eigs: &[f64]) -> Result<Self> {
        let mut vals: Vec<f64> = eigs.iter().copied().filter(|&v| v > EIGEN_ZERO_TOL).collect();
        vals.sort_by(|a, b| b.total_cmp(a));
        let mut groups: Vec<(f64, usize, f64)> = Vec::new(); // (sum, count, first)
        for v in vals {
            match groups.last_mut() {
                Some((sum, count, first)) if (*first - v).abs() <= EIGEN_GROUP_TOL => {
                    *sum += v;
                    *count += 1;
                }
                _ => groups.push((v, 1, v)),
            }
        }
        let entries = groups
            .into_iter()
            .map(|(sum, count, _)| SpectrumEntry {
                log2_weight: (sum / count as f64).log2(),
                multiplicity: BigUint::from(count),
            })
            .collect();
        let s = Self { entries };
        s.validate()?;
        Ok(s)
    }

    /// Uniform spectrum of rank `r ≥ 1`.
    pub fn uniform(r: BigUint) -> Self {
        assert!(!r.is_zero(), "uniform spectrum needs rank ≥ 1");
        Self {
            entries: vec![SpectrumEntry {
                log2_weight: -log2_big(&r),
                multiplicity: r,
            }],
        }
    }

    /// Uniform spectrum of rank `2^e`, the spectrum of `EPR^{⊗e}`.
    pub fn uniform_pow2(e: u64) -> Self {
        Self {
            entries: vec![SpectrumEntry {
                log2_weight: -(e as f64),
                multiplicity: BigUint::one() << e,
            }],
        }
    }

    /// The spectrum of a product state.
    pub fn trivial() -> Self {
        Self::uniform_pow2(0)
    }

    /// Sorts descending and merges entries with equal log-weight.
    pub(crate) fn from_log_pairs(mut raw: Vec<(f64, BigUint)>) -> Self {
        raw.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut entries: Vec<SpectrumEntry> = Vec::with_capacity(raw.len());
        for (lw, c) in raw {
            match entries.last_mut() {
                Some(last) if (last.log2_weight - lw).abs() <= LOG_MERGE_TOL => {
                    last.multiplicity += c;
                }
                _ => entries.push(SpectrumEntry {
                    log2_weight: lw,
                    multiplicity: c,
                }),
            }
        }
        Self { entries }
    }

    fn validate(&self) -> Result<()> {
        if self.entries.is_empty() {
            return Err(Error::InvalidSpectrum("empty spectrum".into()));
        }
        let m = self.total_mass();
        if (m - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidSpectrum(format!("total mass {m} ≠ 1")));
        }
        Ok(())
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ weight · multiplicity`.
    pub fn total_mass(&self) -> f64 {
        self.entries.iter().map(SpectrumEntry::mass).sum()
    }

    /// Schmidt rank (number of nonzero eigenvalues).
    pub fn rank(&self) -> BigUint {
        self.entries.iter().map(|e| &e.multiplicity).sum()
    }

    /// Largest eigenvalue.
    pub fn max_weight(&self) -> f64 {
        self.entries[0].weight()
    }

    /// Shannon entropy in bits, `−Σ c·w·log₂ w`.
    pub fn entropy(&self) -> f64 {
        let h: f64 = self
            .entries
            .iter()
            .map(|e| -e.mass() * e.log2_weight)
            .sum();
        h.max(0.0)
    }

    /// Spectrum of the tensor product: all pairwise products, merged.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut raw = Vec::with_capacity(self.len() * other.len());
        for a in &self.entries {
            for b in &other.entries {
                raw.push((
                    a.log2_weight + b.log2_weight,
                    &a.multiplicity * &b.multiplicity,
                ));
            }
        }
        Self::from_log_pairs(raw)
    }

    /// Spectrum of the `n`-th tensor power, grouped by multinomial type class.
    ///
    /// An entry with composition `(n_1..n_r)` has weight `Π w_i^{n_i}` and
    /// multiplicity `n!/(Π n_i!) · Π c_i^{n_i}`. The number of type classes is
    /// `C(n+r-1, r-1)` before merging.
    pub fn power(&self, n: u64) -> Self {
        if n == 0 {
            return Self::trivial();
        }
        if n == 1 {
            return self.clone();
        }
        let lws: Vec<f64> = self.entries.iter().map(|e| e.log2_weight).collect();
        let pows: Vec<Vec<BigUint>> = self
            .entries
            .iter()
            .map(|e| {
                let mut v = Vec::with_capacity(n as usize + 1);
                let mut acc = BigUint::one();
                v.push(acc.clone());
                for _ in 0..n {
                    acc *= &e.multiplicity;
                    v.push(acc.clone());
                }
                v
            })
            .collect();
        let mut raw = Vec::new();
        compositions(&lws, &pows, 0, n, 0.0, BigUint::one(), &mut raw);
        Self::from_log_pairs(raw)
    }

    /// Keeps the heaviest eigenvalues until their mass reaches `1 − ε²`, then
    /// renormalizes. The result is a pure state within purified distance `ε`
    /// of the input (same Schmidt basis, fidelity `√kept`).
    pub fn truncate(&self, eps: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&eps) {
            return Err(Error::InvalidDistance(eps));
        }
        if eps == 0.0 {
            return Ok(self.clone());
        }
        let total = self.total_mass();
        let target = total * (1.0 - eps * eps);
        let mut kept: Vec<SpectrumEntry> = Vec::new();
        let mut cum = 0.0;
        for e in &self.entries {
            let m = e.mass();
            if cum + m < target {
                cum += m;
                kept.push(e.clone());
                continue;
            }
            let need = (target - cum).max(0.0);
            let mut t = ceil_to_big((need.log2() - e.log2_weight).exp2());
            if t.is_zero() {
                t = BigUint::one();
            }
            if t > e.multiplicity {
                t = e.multiplicity.clone();
            }
            cum += mass(&t, e.log2_weight);
            kept.push(SpectrumEntry {
                log2_weight: e.log2_weight,
                multiplicity: t,
            });
            break;
        }
        let shift = cum.log2();
        for e in &mut kept {
            e.log2_weight -= shift;
        }
        Ok(Self { entries: kept })
    }

    /// Removes the `count` heaviest entries entirely and renormalizes.
    /// Returns the new spectrum and the removed mass.
    pub fn drop_heaviest_entries(&self, count: usize) -> Option<(Self, f64)> {
        if count >= self.entries.len() {
            return None;
        }
        let removed: f64 = self.entries[..count].iter().map(SpectrumEntry::mass).sum();
        let rest = &self.entries[count..];
        let kept: f64 = rest.iter().map(SpectrumEntry::mass).sum();
        let shift = kept.log2();
        let entries = rest
            .iter()
            .map(|e| SpectrumEntry {
                log2_weight: e.log2_weight - shift,
                multiplicity: e.multiplicity.clone(),
            })
            .collect();
        Some((Self { entries }, removed / (removed + kept)))
    }

    /// Weights expanded with multiplicity; only for small ranks.
    pub fn expanded(&self) -> Option<Vec<f64>> {
        let r = self.rank().to_usize().filter(|&r| r <= 1 << 24)?;
        let mut out = Vec::with_capacity(r);
        for e in &self.entries {
            let w = e.weight();
            out.extend(std::iter::repeat_n(w, e.multiplicity.to_usize()?));
        }
        Some(out)
    }

    /// Entry-wise comparison: same multiplicities, weights within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.len() == other.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| {
                    a.multiplicity == b.multiplicity && (a.weight() - b.weight()).abs() <= tol
                })
    }
}

fn compositions(
    lws: &[f64],
    pows: &[Vec<BigUint>],
    i: usize,
    remaining: u64,
    lw: f64,
    mult: BigUint,
    out: &mut Vec<(f64, BigUint)>,
) {
    if i + 1 == lws.len() {
        out.push((
            lw + remaining as f64 * lws[i],
            mult * &pows[i][remaining as usize],
        ));
        return;
    }
    // C(remaining, t) built incrementally.
    let mut binom = BigUint::one();
    for t in 0..=remaining {
        if t > 0 {
            binom = binom * BigUint::from(remaining - t + 1) / BigUint::from(t);
        }
        let m = &mult * &binom * &pows[i][t as usize];
        compositions(
            lws,
            pows,
            i + 1,
            remaining - t,
            lw + t as f64 * lws[i],
            m,
            out,
        );
    }
}
