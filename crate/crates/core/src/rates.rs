//! Rate bounds from the functional characterization.
//!
//! Any normalized, fully additive, asymptotically monotone functional `E`
//! gives `R(φ → ψ) ≤ E(φ)/E(ψ)` whenever `E(ψ) ≠ 0`. Minimizing over the
//! cut entropies gives an upper bound; for two parties it is the exact rate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::functionals::Functional;
use crate::state::PureState;

/// Functional values at or below this count as zero.
pub const ZERO_ENTROPY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RateKind {
    Exact,
    UpperBound,
    LowerBound,
}

impl fmt::Display for RateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RateKind::Exact => "exact",
            RateKind::UpperBound => "upper-bound",
            RateKind::LowerBound => "lower-bound",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateEstimate {
    pub value: f64,
    pub kind: RateKind,
    pub certificate: String,
}

/// Values of every built-in functional on a state, in [`Functional::all_cut_entropies`] order.
pub fn family_values(phi: &PureState, exec: Execution) -> Result<Vec<(Functional, f64)>> {
    let family = Functional::all_cut_entropies(phi.parties());
    exec.map(family, |f| {
        let v = f.evaluate(phi)?;
        Ok((f, v))
    })
    .into_iter()
    .collect()
}

/// `min_E E(φ)/E(ψ)` over cut entropies with `E(ψ) > 1e-12`.
///
/// The result is `Exact` for two parties when both states are entangled and
/// `UpperBound` otherwise.
pub fn rate_upper_bound(phi: &PureState, psi: &PureState) -> Result<RateEstimate> {
    rate_upper_bound_with(phi, psi, Execution::default())
}

pub fn rate_upper_bound_with(
    phi: &PureState,
    psi: &PureState,
    exec: Execution,
) -> Result<RateEstimate> {
    if phi.parties() != psi.parties() {
        return Err(Error::PartyMismatch {
            left: phi.parties(),
            right: psi.parties(),
        });
    }
    if phi.parties() < 2 {
        return Err(Error::SeparableTarget);
    }
    let src = family_values(phi, exec)?;
    let dst = family_values(psi, exec)?;
    let best = src
        .iter()
        .zip(&dst)
        .filter(|(_, (_, t))| *t > ZERO_ENTROPY_TOL)
        .map(|((f, s), (_, t))| (f, s / t, *s, *t))
        .min_by(|a, b| a.1.total_cmp(&b.1));
    let Some((f, value, s, t)) = best else {
        return Err(Error::SeparableTarget);
    };
    let source_entangled = src.iter().any(|(_, v)| *v > ZERO_ENTROPY_TOL);
    let kind = if phi.parties() == 2 && source_entangled {
        RateKind::Exact
    } else {
        RateKind::UpperBound
    };
    Ok(RateEstimate {
        value,
        kind,
        certificate: format!("{f}: E(from) = {s:.12}, E(to) = {t:.12}"),
    })
}

/// `H(Tr₁ φ) / H(Tr₁ ψ)` for bipartite pure states.
pub fn bipartite_pure_rate(phi: &PureState, psi: &PureState) -> Result<RateEstimate> {
    for s in [phi, psi] {
        if s.parties() != 2 {
            return Err(Error::WrongPartyCount {
                expected: 2,
                got: s.parties(),
            });
        }
    }
    let f = Functional::all_cut_entropies(2).remove(0);
    let t = f.evaluate(psi)?;
    if t <= ZERO_ENTROPY_TOL {
        return Err(Error::SeparableTarget);
    }
    let s = f.evaluate(phi)?;
    if s <= ZERO_ENTROPY_TOL {
        return Err(Error::SeparableSource);
    }
    Ok(RateEstimate {
        value: s / t,
        kind: RateKind::Exact,
        certificate: format!("entropy ratio {s:.12} / {t:.12}"),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GhzRateBounds {
    /// `min_E E(φ)`: upper bound on the GHZ distillation rate.
    pub distill_upper: f64,
    /// `max_E E(φ)`: lower bound on the GHZ cost `1/R(GHZ → φ)`.
    pub cost_lower: f64,
    pub distill_functional: String,
    pub cost_functional: String,
}

pub fn ghz_rate_bounds(phi: &PureState) -> Result<GhzRateBounds> {
    if phi.parties() < 2 {
        return Err(Error::WrongPartyCount {
            expected: 2,
            got: phi.parties(),
        });
    }
    let vals = family_values(phi, Execution::default())?;
    let min = vals.iter().min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
    let max = vals.iter().max_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
    Ok(GhzRateBounds {
        distill_upper: min.1,
        cost_lower: max.1,
        distill_functional: min.0.label.clone(),
        cost_functional: max.0.label.clone(),
    })
}

/// Whether some built-in functional differs on the two states by more than `tol`.
/// When this is false, no rate bound from this family can tell them apart.
pub fn family_separates(phi: &PureState, psi: &PureState, tol: f64) -> Result<bool> {
    if phi.parties() != psi.parties() {
        return Err(Error::PartyMismatch {
            left: phi.parties(),
            right: psi.parties(),
        });
    }
    let a = family_values(phi, Execution::default())?;
    let b = family_values(psi, Execution::default())?;
    Ok(a.iter().zip(&b).any(|((_, x), (_, y))| (x - y).abs() > tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::h2;

    fn epr() -> PureState {
        PureState::ghz(2, 2).unwrap()
    }

    fn epr3(a: usize, b: usize) -> PureState {
        PureState::epr_between(a, b, 3).unwrap()
    }

    fn zero3() -> PureState {
        PureState::product_zero(3).unwrap()
    }

    #[test]
    fn bipartite_upper_bound_is_exact() {
        let phi = PureState::from_schmidt(&[0.9, 0.1]).unwrap();
        let r = rate_upper_bound(&phi, &epr()).unwrap();
        assert_eq!(r.kind, RateKind::Exact);
        assert!((r.value - h2(0.9)).abs() < 1e-12);
        assert!((r.value - 0.468996).abs() < 1e-6);
    }

    #[test]
    fn epr_pair_cannot_make_ghz() {
        let phi = epr3(0, 1).tensor(&zero3()).unwrap();
        let r = rate_upper_bound(&phi, &PureState::ghz(2, 3).unwrap()).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.kind, RateKind::UpperBound);
        assert!(r.certificate.starts_with("cut:3"), "{}", r.certificate);
    }

    #[test]
    fn ghz_to_epr_excludes_vanishing_cut() {
        let r = rate_upper_bound(&PureState::ghz(2, 3).unwrap(), &epr3(0, 1)).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn separable_target_is_an_error() {
        assert_eq!(
            rate_upper_bound(&epr(), &PureState::product_zero(2).unwrap()),
            Err(Error::SeparableTarget)
        );
        assert_eq!(
            bipartite_pure_rate(&epr(), &PureState::product_zero(2).unwrap()),
            Err(Error::SeparableTarget)
        );
        assert_eq!(
            bipartite_pure_rate(&PureState::product_zero(2).unwrap(), &epr()),
            Err(Error::SeparableSource)
        );
        let r = rate_upper_bound(&PureState::product_zero(2).unwrap(), &epr()).unwrap();
        assert_eq!((r.value, r.kind), (0.0, RateKind::UpperBound));
    }

    #[test]
    fn bipartite_rates() {
        assert!((bipartite_pure_rate(&epr(), &epr()).unwrap().value - 1.0).abs() < 1e-12);
        let s = PureState::from_schmidt(&[0.75, 0.25]).unwrap();
        let r = bipartite_pure_rate(&s, &epr()).unwrap();
        assert!((r.value - 0.811278).abs() < 1e-6);
        let r = bipartite_pure_rate(&epr(), &s).unwrap();
        assert!((r.value - 1.0 / h2(0.25)).abs() < 1e-12);
        assert!((r.value - 1.232622).abs() < 1e-6);
        assert!(matches!(
            bipartite_pure_rate(&PureState::ghz(2, 3).unwrap(), &epr()),
            Err(Error::WrongPartyCount { .. })
        ));
    }

    #[test]
    fn ghz_bounds_examples() {
        for k in 2..5 {
            let b = ghz_rate_bounds(&PureState::ghz(2, k).unwrap()).unwrap();
            assert!((b.distill_upper - 1.0).abs() < 1e-12);
            assert!((b.cost_lower - 1.0).abs() < 1e-12);
        }
        let tri = epr3(0, 1).tensor(&epr3(1, 2)).unwrap().tensor(&epr3(0, 2)).unwrap();
        let b = ghz_rate_bounds(&tri).unwrap();
        assert!((b.distill_upper - 2.0).abs() < 1e-12 && (b.cost_lower - 2.0).abs() < 1e-12);
        let g = PureState::ghz(2, 3).unwrap();
        assert!(!family_separates(&tri, &g.tensor(&g).unwrap(), 1e-9).unwrap());
        assert!(family_separates(&tri, &g, 1e-9).unwrap());
        let b = ghz_rate_bounds(&epr3(0, 1).tensor(&zero3()).unwrap()).unwrap();
        assert!(b.distill_upper.abs() < 1e-12 && (b.cost_lower - 1.0).abs() < 1e-12);
        assert_eq!(b.distill_functional, "cut:3");
    }

    #[test]
    fn self_rate_is_one_and_scales() {
        let g = PureState::ghz(3, 3).unwrap();
        let s = PureState::from_schmidt(&[0.6, 0.4]).unwrap();
        assert!((rate_upper_bound(&g, &g).unwrap().value - 1.0).abs() < 1e-12);
        let r1 = rate_upper_bound(&s, &epr()).unwrap().value;
        let r2 = rate_upper_bound(&s.tensor(&s).unwrap(), &epr()).unwrap().value;
        assert!((r2 - 2.0 * r1).abs() < 1e-10);
    }
}
