//! Normalized entanglement functionals on pure states and their axiom checks.
//!
//! The built-in family is the set of cut entropies `H(Tr_{S^c} |φ⟩⟨φ|)`, one
//! per bipartition `S | S^c`. Every member is normalized (`E(GHZ) = 1`), fully
//! additive, monotone on average, satisfies the direct-sum chain rule
//!
//! ```text
//! E(√p φ ⊕ √(1−p) ψ) = p E(φ) + (1−p) E(ψ) + h(p)
//! ```
//!
//! and hence the explicit continuity estimate
//! `|E(φ) − E(ψ)| ≤ a(D) log dim H + b(D)` with `D` the purified distance.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{Cut, PureState};

/// The kinds of functional this crate can evaluate. Evaluation dispatches
/// through [`Functional::evaluate`], so new kinds only need a match arm there.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FunctionalKind {
    CutEntropy(Cut),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Functional {
    pub kind: FunctionalKind,
    pub label: String,
}

impl Functional {
    pub fn cut_entropy(cut: Cut) -> Self {
        let label = format!("cut:{}", cut.label());
        Self {
            kind: FunctionalKind::CutEntropy(cut),
            label,
        }
    }

    /// All `2^{k−1} − 1` cut entropies for `k` parties.
    pub fn all_cut_entropies(k: usize) -> Vec<Self> {
        Cut::all(k).into_iter().map(Self::cut_entropy).collect()
    }

    /// Parses `"cut:1,3"` (1-based parties) for a `k`-party system.
    pub fn parse(s: &str, k: usize) -> Result<Self> {
        let parties = s.trim().strip_prefix("cut:").ok_or_else(|| Error::Parse {
            position: 0,
            message: format!("expected cut:<parties>, got {s:?}"),
        })?;
        Ok(Self::cut_entropy(Cut::parse_one_based(parties, k)?))
    }

    pub fn evaluate(&self, phi: &PureState) -> Result<f64> {
        match &self.kind {
            FunctionalKind::CutEntropy(cut) => Ok(phi.schmidt_spectrum(cut)?.entropy()),
        }
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// `E(φ)` for a functional `E`.
pub fn evaluate(e: &Functional, phi: &PureState) -> Result<f64> {
    e.evaluate(phi)
}

/// `h(p) = −p log p − (1−p) log(1−p)`, with `0 log 0 = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    Ok(h2(p))
}

pub(crate) fn h2(p: f64) -> f64 {
    let term = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.log2() };
    term(p) + term(1.0 - p)
}

/// Outcome of an axiom check. `residual` is the quantity compared against
/// `tolerance`; its meaning is documented per check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// `|E(φ⊗ψ) − E(φ) − E(ψ)|`.
pub fn check_additivity(
    e: &Functional,
    phi: &PureState,
    psi: &PureState,
    tol: f64,
) -> Result<AxiomCheck> {
    let joint = e.evaluate(&phi.tensor(psi)?)?;
    let residual = (joint - e.evaluate(phi)? - e.evaluate(psi)?).abs();
    Ok(AxiomCheck {
        residual,
        tolerance: tol,
        pass: residual <= tol,
    })
}

/// Chain-rule evaluation, keeping the signed gap so the one-sided lower bound
/// can be inspected separately.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainRuleCheck {
    /// `E(√p φ ⊕ √(1−p) ψ)`.
    pub direct_sum_value: f64,
    /// `p E(φ) + (1−p) E(ψ) + h(p)`.
    pub predicted: f64,
    /// `direct_sum_value − predicted`.
    pub gap: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// `|E(√p φ ⊕ √(1−p) ψ) − p E(φ) − (1−p) E(ψ) − h(p)|`.
pub fn check_chain_rule(
    e: &Functional,
    phi: &PureState,
    psi: &PureState,
    p: f64,
    tol: f64,
) -> Result<ChainRuleCheck> {
    let sum = PureState::direct_sum(phi, psi, p)?;
    let direct_sum_value = e.evaluate(&sum)?;
    let predicted = p * e.evaluate(phi)? + (1.0 - p) * e.evaluate(psi)? + h2(p);
    let gap = direct_sum_value - predicted;
    Ok(ChainRuleCheck {
        direct_sum_value,
        predicted,
        gap,
        residual: gap.abs(),
        tolerance: tol,
        pass: gap.abs() <= tol,
    })
}

/// Pure-state ensemble `{(P(x), σ_x)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    branches: Vec<(f64, PureState)>,
}

impl Ensemble {
    pub fn new(branches: Vec<(f64, PureState)>) -> Result<Self> {
        if branches.is_empty() {
            return Err(Error::InvalidEnsemble("no branches".into()));
        }
        if let Some((p, _)) = branches.iter().find(|(p, _)| !(*p >= 0.0)) {
            return Err(Error::InvalidEnsemble(format!("negative probability {p}")));
        }
        let total: f64 = branches.iter().map(|(p, _)| p).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidEnsemble(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(Self { branches })
    }

    pub fn branches(&self) -> &[(f64, PureState)] {
        &self.branches
    }

    /// `Σ P(x) E(σ_x)`.
    pub fn average(&self, e: &Functional) -> Result<f64> {
        self.branches
            .iter()
            .map(|(p, s)| Ok(p * e.evaluate(s)?))
            .sum()
    }
}

/// Local projective measurement on `party` with projectors diagonal in the
/// computational basis: each class lists the local basis indices of one
/// projector. Classes must partition `0..d_party`. Zero-probability outcomes
/// are dropped.
pub fn measure_local(phi: &PureState, party: usize, classes: &[Vec<usize>]) -> Result<Ensemble> {
    let dims = phi.dims();
    if party >= dims.parties() {
        return Err(Error::InvalidArgument(format!("no party {}", party + 1)));
    }
    let d = dims.get(party);
    let mut owner = vec![usize::MAX; d];
    for (c, class) in classes.iter().enumerate() {
        for &i in class {
            if i >= d || owner[i] != usize::MAX {
                return Err(Error::InvalidEnsemble(format!(
                    "projector classes do not partition 0..{d}"
                )));
            }
            owner[i] = c;
        }
    }
    if owner.contains(&usize::MAX) {
        return Err(Error::InvalidEnsemble(format!(
            "projector classes do not cover 0..{d}"
        )));
    }
    let stride = dims.strides()[party];
    let mut parts = vec![vec![Complex64::new(0.0, 0.0); dims.total()]; classes.len()];
    for (i, a) in phi.amplitudes().iter().enumerate() {
        let local = (i / stride) % d;
        parts[owner[local]][i] = *a;
    }
    let mut branches = Vec::new();
    for v in parts {
        let p: f64 = v.iter().map(Complex64::norm_sqr).sum();
        if p > 1e-15 {
            branches.push((p, PureState::normalized(dims.clone(), v)?));
        }
    }
    let total: f64 = branches.iter().map(|(p, _)| p).sum();
    for b in &mut branches {
        b.0 /= total;
    }
    Ensemble::new(branches)
}

/// Measurement of one party's flag qubit of a direct sum built by
/// [`PureState::direct_sum`]: local index parity.
pub fn measure_flag(sum: &PureState, party: usize) -> Result<Ensemble> {
    let d = sum.dims().get(party);
    let even = (0..d).step_by(2).collect();
    let odd = (1..d).step_by(2).collect();
    measure_local(sum, party, &[even, odd])
}

/// `slack = E(φ) − Σ P(x) E(σ_x)`; passes iff `slack ≥ −tol`.
pub fn check_monotone_on_average(
    e: &Functional,
    phi: &PureState,
    ensemble: &Ensemble,
    tol: f64,
) -> Result<AxiomCheck> {
    let slack = e.evaluate(phi)? - ensemble.average(e)?;
    Ok(AxiomCheck {
        residual: slack,
        tolerance: tol,
        pass: slack >= -tol,
    })
}

fn check_delta(delta: f64) -> Result<()> {
    if !(0.0..1.0).contains(&delta) {
        return Err(Error::InvalidDistance(delta));
    }
    Ok(())
}

/// `(1 + δ^{2/(k+1)})^{k+1}`.
fn continuity_base(delta: f64, k: usize) -> f64 {
    let e = (k + 1) as f64;
    (1.0 + delta.powf(2.0 / e)).powf(e)
}

/// `a(δ) = ((1+δ^{2/(k+1)})^{k+1} − 1 + δ²) / (1 − δ²)`.
pub fn continuity_a(delta: f64, k: usize) -> Result<f64> {
    check_delta(delta)?;
    if delta == 0.0 {
        return Ok(0.0);
    }
    Ok((continuity_base(delta, k) - 1.0 + delta * delta) / (1.0 - delta * delta))
}

/// `b(δ) = (1+δ^{2/(k+1)})^{k+1} / (1 − δ²) · h(1 / (1+δ^{2/(k+1)}))`.
pub fn continuity_b(delta: f64, k: usize) -> Result<f64> {
    check_delta(delta)?;
    if delta == 0.0 {
        return Ok(0.0);
    }
    let e = (k + 1) as f64;
    let q = 1.0 / (1.0 + delta.powf(2.0 / e));
    Ok(continuity_base(delta, k) / (1.0 - delta * delta) * h2(q))
}

/// Purified distances at or above this are treated as `D = 1`, where the
/// continuity bound is vacuous.
pub const CONTINUITY_VACUOUS_AT: f64 = 1.0 - 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuityCheck {
    pub distance: f64,
    /// `|E(φ) − E(ψ)|`.
    pub lhs: f64,
    /// `a(D) log dim H + b(D)`; `+∞` when `D = 1`.
    pub rhs: f64,
    /// `rhs − lhs`.
    pub margin: f64,
    pub pass: bool,
}

/// Checks `|E(φ) − E(ψ)| ≤ a(D) log dim H + b(D)` with margin tolerance 1e-9.
pub fn check_continuity_estimate(
    e: &Functional,
    phi: &PureState,
    psi: &PureState,
) -> Result<ContinuityCheck> {
    let distance = phi.purified_distance(psi)?;
    let lhs = (e.evaluate(phi)? - e.evaluate(psi)?).abs();
    let k = phi.parties();
    let rhs = if distance >= CONTINUITY_VACUOUS_AT {
        f64::INFINITY
    } else {
        continuity_a(distance, k)? * phi.dims().log2_total() + continuity_b(distance, k)?
    };
    let margin = rhs - lhs;
    Ok(ContinuityCheck {
        distance,
        lhs,
        rhs,
        margin,
        pass: margin >= -1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{random, LocalDims};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn epr() -> PureState {
        PureState::ghz(2, 2).unwrap()
    }

    fn cut1(k: usize) -> Functional {
        Functional::cut_entropy(Cut::new(vec![0], k).unwrap())
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // −¼log¼ − ¾log¾ = ½ + ¾·log(4/3)
        let want = 0.5 + 0.75 * (4.0f64 / 3.0).log2();
        assert!((binary_entropy(0.25).unwrap() - want).abs() < 1e-15);
        assert!((want - 0.811278).abs() < 1e-6);
        assert!(binary_entropy(1.1).is_err());
        assert!(binary_entropy(-0.1).is_err());
        assert!((h2(0.3) - h2(0.7)).abs() < 1e-15);
    }

    #[test]
    fn evaluate_examples() {
        assert!((cut1(3).evaluate(&PureState::ghz(2, 3).unwrap()).unwrap() - 1.0).abs() < 1e-12);
        let prod = PureState::basis(LocalDims::new(vec![2, 2, 2]).unwrap(), &[0, 0, 0]).unwrap();
        assert!(cut1(3).evaluate(&prod).unwrap().abs() < 1e-12);
        let s = PureState::from_schmidt(&[0.9, 0.1]).unwrap();
        // h(0.9) = 0.468996 (direct evaluation of the formula)
        assert!((cut1(2).evaluate(&s).unwrap() - 0.468995593589281).abs() < 1e-9);
        assert!(cut1(3).evaluate(&s).is_err());
    }

    #[test]
    fn parse_functional() {
        let f = Functional::parse("cut:1,3", 4).unwrap();
        assert_eq!(f.label, "cut:1,3");
        assert!(Functional::parse("cut:", 4).is_err());
        assert!(Functional::parse("foo:1", 4).is_err());
    }

    #[test]
    fn additivity_examples() {
        let f = cut1(2);
        assert!(check_additivity(&f, &epr(), &epr(), 1e-12).unwrap().residual < 1e-12);
        let s = PureState::from_schmidt(&[0.7, 0.2, 0.1]).unwrap();
        let zero = PureState::product_zero(2).unwrap();
        assert!(check_additivity(&f, &s, &zero, 1e-12).unwrap().pass);
    }

    #[test]
    fn chain_rule_examples() {
        let f = cut1(2);
        let c = check_chain_rule(&f, &epr(), &epr(), 0.5, 1e-10).unwrap();
        assert!((c.direct_sum_value - 2.0).abs() < 1e-10 && c.pass);
        let d = LocalDims::new(vec![2, 2]).unwrap();
        let a = PureState::basis(d.clone(), &[0, 0]).unwrap();
        let b = PureState::basis(d, &[1, 1]).unwrap();
        for p in [0.1, 0.3, 0.5, 0.77] {
            let c = check_chain_rule(&f, &a, &b, p, 1e-10).unwrap();
            assert!((c.direct_sum_value - h2(p)).abs() < 1e-10);
        }
        let g = PureState::ghz(2, 3).unwrap();
        let z = PureState::basis(LocalDims::new(vec![2, 2, 2]).unwrap(), &[0, 0, 0]).unwrap();
        let c = check_chain_rule(&cut1(3), &g, &z, 1.0 / 3.0, 1e-10).unwrap();
        assert!((c.direct_sum_value - (1.0 / 3.0 + h2(1.0 / 3.0))).abs() < 1e-10);
        // direct_sum(EPR, EPR, 1/3) has cut entropy 1 + h(1/3) = 1.918296
        let c = check_chain_rule(&f, &epr(), &epr(), 1.0 / 3.0, 1e-10).unwrap();
        assert!((c.direct_sum_value - 1.918295834054489).abs() < 1e-9);
    }

    #[test]
    fn monotone_on_average_examples() {
        let f = cut1(2);
        let ens = measure_local(&epr(), 0, &[vec![0], vec![1]]).unwrap();
        assert_eq!(ens.branches().len(), 2);
        let c = check_monotone_on_average(&f, &epr(), &ens, 1e-9).unwrap();
        assert!((c.residual - 1.0).abs() < 1e-12 && c.pass);
        let trivial = measure_local(&epr(), 0, &[vec![0, 1]]).unwrap();
        let c = check_monotone_on_average(&f, &epr(), &trivial, 1e-9).unwrap();
        assert!(c.residual.abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let dims = LocalDims::new(vec![2, 3]).unwrap();
        let phi = random::random_pure(&mut rng, &dims).unwrap();
        let psi = random::random_pure(&mut rng, &dims).unwrap();
        let sum = PureState::direct_sum(&phi, &psi, 0.3).unwrap();
        let ens = measure_flag(&sum, 0).unwrap();
        let c = check_monotone_on_average(&f, &sum, &ens, 1e-9).unwrap();
        assert!((c.residual - h2(0.3)).abs() < 1e-9);
    }

    #[test]
    fn measurement_validation() {
        assert!(measure_local(&epr(), 0, &[vec![0]]).is_err());
        assert!(measure_local(&epr(), 0, &[vec![0, 1], vec![1]]).is_err());
        assert!(measure_local(&epr(), 2, &[vec![0, 1]]).is_err());
        let s = PureState::ghz(2, 2).unwrap();
        assert!(Ensemble::new(vec![(0.5, s.clone()), (0.6, s.clone())]).is_err());
        assert!(Ensemble::new(vec![(-0.5, s.clone()), (1.5, s)]).is_err());
        assert!(Ensemble::new(vec![]).is_err());
    }

    #[test]
    fn continuity_functions() {
        for k in 1..6 {
            assert_eq!(continuity_a(0.0, k).unwrap(), 0.0);
            assert_eq!(continuity_b(0.0, k).unwrap(), 0.0);
        }
        assert!(continuity_a(1.0, 2).is_err());
        assert!(continuity_b(-0.1, 2).is_err());
        // Reference values from the closed forms (independent evaluation).
        let base = (1.0 + 0.1f64.powf(2.0 / 3.0)).powi(3);
        let a = (base - 1.0 + 0.01) / 0.99;
        assert!((continuity_a(0.1, 2).unwrap() - a).abs() < 1e-14);
        assert!((a - 0.813_715_224).abs() < 1e-8);
        let q = 1.0 / (1.0 + 0.1f64.powf(2.0 / 3.0));
        let b = base / 0.99 * h2(q);
        assert!((continuity_b(0.1, 2).unwrap() - b).abs() < 1e-14);
        assert!((b - 1.222_507_731).abs() < 1e-8);
        let mut prev = (0.0, 0.0);
        for i in 1..100 {
            let d = i as f64 / 100.0;
            let cur = (continuity_a(d, 3).unwrap(), continuity_b(d, 3).unwrap());
            assert!(cur.0 >= prev.0 && cur.1 >= prev.1);
            prev = cur;
        }
    }

    #[test]
    fn continuity_estimate_examples() {
        let f = cut1(2);
        let c = check_continuity_estimate(&f, &epr(), &epr()).unwrap();
        assert!(c.pass && c.lhs < 1e-12);
        let d = LocalDims::new(vec![2, 2]).unwrap();
        let a = PureState::basis(d.clone(), &[0, 0]).unwrap();
        let b = PureState::basis(d, &[1, 1]).unwrap();
        let c = check_continuity_estimate(&f, &a, &b).unwrap();
        assert!(c.pass && c.margin == f64::INFINITY);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let dims = LocalDims::new(vec![4, 4]).unwrap();
        let (p, q) = random::random_pair_at_distance(&mut rng, &dims, 0.05).unwrap();
        let c = check_continuity_estimate(&f, &p, &q).unwrap();
        assert!(c.pass && (c.distance - 0.05).abs() < 1e-9);
    }
}
