//! Explicit protocols: the binomial decomposition of tensor powers of direct
//! sums, entanglement concentration, log-binomial estimates, and the
//! continuity-estimate measurement construction.

mod binomial;
mod concentration;
mod continuity;

pub use binomial::{
    binomial_decomposition, expected_log_ghz, expected_log_ghz_types_lower,
    expected_log_ghz_with, log_binomial_bounds, log_binomial_bounds_row, BinomialBranch,
    LogBinomialBounds,
};
pub use concentration::{
    concentration_simulate, concentration_yield, concentration_yield_sweep,
    concentration_yield_with, ConcentrationSample, SHOTS_PER_CHUNK,
};
pub use continuity::{
    check_projection_bound, continuity_construction, continuity_protocol_check, u_closed_form,
    ContinuityConstruction, ProjectionBound, ProtocolCheck, DEGENERATE_TOL, OMEGA_NORM_TOL,
};
