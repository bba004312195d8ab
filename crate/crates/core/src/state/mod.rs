//! k-partite pure and mixed states: tensor products with party-wise
//! regrouping, direct sums, reduced states, distances and grouped Schmidt
//! spectra.

mod cut;
mod dims;
pub mod literal;
mod mixed;
mod pure;
pub mod random;
mod spectrum;

pub use cut::Cut;
pub(crate) use dims::regrouped_index;
pub use dims::{LocalDims, MAX_TOTAL_DIM};
pub use literal::parse_state;
pub use mixed::{MixedState, DENSITY_TOL};
pub use pure::{PureState, NORM_TOL};
pub use spectrum::{
    SchmidtSpectrum, SpectrumEntry, EIGEN_GROUP_TOL, EIGEN_ZERO_TOL, LOG_MERGE_TOL, MASS_TOL,
};

/// Tensor product, party-wise regrouped.
pub fn tensor(a: &PureState, b: &PureState) -> crate::Result<PureState> {
    a.tensor(b)
}

/// `√p·a ⊕ √(1−p)·b`.
pub fn direct_sum(a: &PureState, b: &PureState, p: f64) -> crate::Result<PureState> {
    PureState::direct_sum(a, b, p)
}

/// `(1/√r) Σ_i |i…i⟩` on `k` parties.
pub fn ghz(r: usize, k: usize) -> crate::Result<PureState> {
    PureState::ghz(r, k)
}

pub fn fidelity(rho: &MixedState, sigma: &MixedState) -> crate::Result<f64> {
    rho.fidelity(sigma)
}

pub fn purified_distance(rho: &MixedState, sigma: &MixedState) -> crate::Result<f64> {
    rho.purified_distance(sigma)
}

pub fn reduced_state(phi: &PureState, cut: &Cut) -> crate::Result<MixedState> {
    phi.reduced_state(cut)
}

pub fn schmidt_spectrum(phi: &PureState, cut: &Cut) -> crate::Result<SchmidtSpectrum> {
    phi.schmidt_spectrum(cut)
}

/// Grouped spectrum of the `n`-fold tensor power.
pub fn spectrum_power(s: &SchmidtSpectrum, n: u64) -> SchmidtSpectrum {
    s.power(n)
}
