//! Single-shot bipartite pure-state order on grouped spectra.
//!
//! `φ → ψ` by LOCC iff the Schmidt spectrum of `φ` is majorized by that of
//! `ψ`. The ε-relaxed order used by the rate search combines this exact test
//! with two sound approximations:
//!
//! - the target is replaced by its top-weight truncation (a pure state within
//!   purified distance `ε_t` of it), and
//! - whole heaviest entries of the source are removed (a pure state within
//!   purified distance `ε_s` of it); the exact protocol for the smoothed source
//!   applied to the true source lands within `ε_s` of the same output by
//!   contractivity.
//!
//! With `ε_s + ε_t = ε` the triangle inequality gives the ε-relaxed relation.

use num_bigint::BigUint;

use crate::bigmath::log2_big;
use crate::state::SchmidtSpectrum;

/// Relative slack on partial-sum comparisons.
pub const MAJORIZATION_REL_TOL: f64 = 1e-12;

/// Number of equal steps used to split `ε` between source and target.
pub const EPS_SPLITS: u32 = 4;

struct Profile {
    ends: Vec<BigUint>,
    lws: Vec<f64>,
    heads: Vec<f64>,
    tails: Vec<f64>,
}

impl Profile {
    fn new(s: &SchmidtSpectrum) -> Self {
        let total = s.total_mass();
        let masses: Vec<f64> = s.entries().iter().map(|e| e.mass() / total).collect();
        let lws: Vec<f64> = s
            .entries()
            .iter()
            .map(|e| e.log2_weight - total.log2())
            .collect();
        let mut ends = Vec::with_capacity(s.len());
        let mut acc = BigUint::default();
        for e in s.entries() {
            acc += &e.multiplicity;
            ends.push(acc.clone());
        }
        let mut heads = Vec::with_capacity(s.len());
        let mut h = 0.0;
        for m in &masses {
            h += m;
            heads.push(h);
        }
        // tails[i] = mass strictly after entry i, summed from the light end.
        let mut tails = vec![0.0; s.len()];
        let mut t = 0.0;
        for i in (0..s.len()).rev() {
            tails[i] = t;
            t += masses[i];
        }
        Self {
            ends,
            lws,
            heads,
            tails,
        }
    }

    /// `(head, tail)` mass at count `j`, where entry `i` is the first with `ends[i] ≥ j`.
    fn at(&self, i: usize, j: &BigUint) -> (f64, f64) {
        if i >= self.ends.len() {
            return (1.0, 0.0);
        }
        let start = if i == 0 {
            BigUint::default()
        } else {
            self.ends[i - 1].clone()
        };
        let prev_head = if i == 0 { 0.0 } else { self.heads[i - 1] };
        let inside = (log2_big(&(j - &start)) + self.lws[i]).exp2();
        let remaining = (log2_big(&(&self.ends[i] - j)) + self.lws[i]).exp2();
        (prev_head + inside, self.tails[i] + remaining)
    }
}

/// Exact majorization `x ≺ y`: every partial sum of the descending weights of
/// `x` is at most the corresponding partial sum of `y`.
///
/// Partial sums are piecewise linear between entry boundaries, so it suffices
/// to compare at the union of both boundary sets. Near-one partial sums are
/// compared through their complementary tails to keep relative precision.
pub fn majorized_by(x: &SchmidtSpectrum, y: &SchmidtSpectrum) -> bool {
    let px = Profile::new(x);
    let py = Profile::new(y);
    let (mut a, mut b) = (0usize, 0usize);
    let (mut ix, mut iy) = (0usize, 0usize);
    loop {
        let next = match (px.ends.get(a), py.ends.get(b)) {
            (None, None) => return true,
            (Some(u), None) => {
                a += 1;
                u.clone()
            }
            (None, Some(v)) => {
                b += 1;
                v.clone()
            }
            (Some(u), Some(v)) => {
                if u <= v {
                    if u == v {
                        b += 1;
                    }
                    a += 1;
                    u.clone()
                } else {
                    b += 1;
                    v.clone()
                }
            }
        };
        while ix < px.ends.len() && px.ends[ix] < next {
            ix += 1;
        }
        while iy < py.ends.len() && py.ends[iy] < next {
            iy += 1;
        }
        let (hx, tx) = px.at(ix, &next);
        let (hy, ty) = py.at(iy, &next);
        let ok = if hy <= 0.5 {
            hx <= hy * (1.0 + MAJORIZATION_REL_TOL)
        } else {
            tx >= ty * (1.0 - MAJORIZATION_REL_TOL)
        };
        if !ok {
            return false;
        }
    }
}

/// Top-weight truncation of a spectrum; see [`SchmidtSpectrum::truncate`].
pub fn truncate_spectrum(s: &SchmidtSpectrum, eps: f64) -> crate::Result<SchmidtSpectrum> {
    s.truncate(eps)
}

/// Sources obtained by removing whole heaviest entries with removed mass at
/// most `eps²`, most aggressive first. Always ends with `s` itself.
pub fn smoothed_sources(s: &SchmidtSpectrum, eps: f64) -> Vec<SchmidtSpectrum> {
    let budget = eps * eps;
    let total = s.total_mass();
    let mut max_count = 0;
    let mut cum = 0.0;
    for e in s.entries().iter().take(s.len().saturating_sub(1)) {
        cum += e.mass() / total;
        if cum > budget {
            break;
        }
        max_count += 1;
    }
    (0..=max_count)
        .rev()
        .filter_map(|c| {
            if c == 0 {
                Some(s.clone())
            } else {
                s.drop_heaviest_entries(c)
                    .filter(|(_, removed)| *removed <= budget)
                    .map(|(t, _)| t)
            }
        })
        .collect()
}

/// Whether `xs` can be converted by LOCC into a state within purified
/// distance `eps` of `ys` (sound, not necessarily optimal).
///
/// At `eps = 0` this is exact majorization. For `eps ≥ 1` every target is
/// within reach.
pub fn majorization_geq(xs: &SchmidtSpectrum, ys: &SchmidtSpectrum, eps: f64) -> bool {
    if eps <= 0.0 {
        return majorized_by(xs, ys);
    }
    if eps >= 1.0 {
        return true;
    }
    (0..=EPS_SPLITS).any(|j| {
        let eps_s = eps * f64::from(j) / f64::from(EPS_SPLITS);
        let eps_t = (eps - eps_s).max(0.0);
        let Ok(target) = ys.truncate(eps_t) else {
            return false;
        };
        smoothed_sources(xs, eps_s)
            .iter()
            .any(|src| majorized_by(src, &target))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(ps: &[f64]) -> SchmidtSpectrum {
        SchmidtSpectrum::from_probabilities(ps).unwrap()
    }

    #[test]
    fn uniform_vs_uniform() {
        for n in 0..8u64 {
            for m in 0..8u64 {
                let got = majorized_by(
                    &SchmidtSpectrum::uniform_pow2(n),
                    &SchmidtSpectrum::uniform_pow2(m),
                );
                assert_eq!(got, n >= m, "n={n} m={m}");
            }
        }
        // Large ranks go through log-domain counts.
        assert!(majorized_by(
            &SchmidtSpectrum::uniform_pow2(3000),
            &SchmidtSpectrum::uniform_pow2(2999)
        ));
        assert!(!majorized_by(
            &SchmidtSpectrum::uniform_pow2(2999),
            &SchmidtSpectrum::uniform_pow2(3000)
        ));
    }

    #[test]
    fn examples() {
        assert!(!majorization_geq(&sp(&[0.9, 0.1]), &sp(&[0.5, 0.5]), 0.0));
        assert!(majorization_geq(&sp(&[0.5, 0.5]), &sp(&[0.9, 0.1]), 0.0));
        let u3 = SchmidtSpectrum::uniform(BigUint::from(3u32));
        assert!(majorization_geq(&u3, &sp(&[0.5, 0.5]), 0.0));
        assert!(!majorization_geq(&sp(&[0.5, 0.5]), &u3, 0.0));
        assert!(majorization_geq(&sp(&[0.5, 0.5]), &u3, 1.0));
    }

    #[test]
    fn reflexive_on_grouped_spectra() {
        let s = sp(&[0.6, 0.3, 0.1]).power(30);
        assert!(majorized_by(&s, &s));
        assert!(majorization_geq(&s, &s, 0.0));
    }

    #[test]
    fn truncation_helps_near_misses() {
        // Target has a tiny extra atom beyond the source rank.
        let x = sp(&[0.5, 0.5]);
        let y = sp(&[0.6, 0.395, 0.005]);
        assert!(!majorization_geq(&x, &y, 0.0));
        assert!(majorization_geq(&x, &y, 0.1));
    }

    #[test]
    fn smoothing_removes_heavy_entries_within_budget() {
        let s = sp(&[0.001, 0.0005, 0.9985]);
        let c = smoothed_sources(&s, 0.0);
        assert_eq!(c.len(), 1);
        let s = SchmidtSpectrum::new([
            (0.002, BigUint::from(1u32)),
            (0.001, BigUint::from(998u32)),
        ])
        .unwrap();
        let c = smoothed_sources(&s, 0.05);
        assert_eq!(c.len(), 2);
        assert!((c[0].max_weight() - 0.001 / 0.998).abs() < 1e-12);
    }
}
