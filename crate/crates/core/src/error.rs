use thiserror::Error;

/// Errors raised by state construction, functionals, rate queries and protocols.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("state must have at least one party")]
    NoParties,
    #[error("local dimension of party {party} is zero")]
    ZeroDimension { party: usize },
    #[error("total dimension overflows or exceeds the cap of {cap}")]
    DimensionTooLarge { cap: usize },
    #[error("amplitude vector has length {got}, expected {expected}")]
    AmplitudeLength { expected: usize, got: usize },
    #[error("state is not normalized: squared norm {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },
    #[error("party count mismatch: {left} vs {right}")]
    PartyMismatch { left: usize, right: usize },
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("invalid cut {parties:?} for {k} parties")]
    InvalidCut { parties: Vec<usize>, k: usize },
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),
    #[error("distance {0} outside [0, 1)")]
    InvalidDistance(f64),
    #[error("target state is separable across every cut; the rate is degenerate")]
    SeparableTarget,
    #[error("source state is separable; the exact bipartite rate is withheld")]
    SeparableSource,
    #[error("operation requires {expected} parties, got {got}")]
    WrongPartyCount { expected: usize, got: usize },
    #[error("degenerate pair: purified distance {0} is not in (0, 1)")]
    DegeneratePair(f64),
    #[error("m = {m} out of range for n = {n}")]
    OutOfRange { n: u64, m: u64 },
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("rate search failed: {0}")]
    SearchFailed(String),
    #[error("construction residual {residual} exceeds tolerance {tolerance}")]
    ConstructionResidual { residual: f64, tolerance: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
