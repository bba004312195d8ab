//! Asymptotic LOCC transformation rates between multipartite pure states.
//!
//! The crate is organized bottom-up:
//!
//! - [`state`]: dense k-partite states, distances, reduced states and grouped
//!   Schmidt spectra (exact big-integer multiplicities, log-domain weights).
//! - [`functionals`]: the cut-entropy family of normalized, fully additive
//!   functionals and checkers for additivity, the direct-sum chain rule,
//!   monotonicity on average and the explicit continuity estimate.
//! - [`rates`]: rate upper bounds as an infimum of functional ratios, exact
//!   bipartite pure rates, and GHZ distillation/cost bounds.
//! - [`monoid`]: preordered commutative monoids with a generator and a search
//!   for certified achievable-rate lower bounds.
//! - [`protocols`]: binomial direct-sum decomposition, entanglement
//!   concentration, log-binomial estimates and the continuity-estimate
//!   measurement construction.
//!
//! All logarithms are base 2.

pub mod bigmath;
pub mod error;
pub mod exec;
pub mod functionals;
pub mod monoid;
pub mod protocols;
pub mod rates;
pub mod state;

pub use error::{Error, Result};
pub use exec::Execution;
pub use functionals::{binary_entropy, Functional};
pub use state::{Cut, LocalDims, MixedState, PureState, SchmidtSpectrum};
