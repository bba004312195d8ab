//! Seeded random states for property checks and verification suites.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{LocalDims, MixedState, PureState};
use crate::error::{Error, Result};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state on `dims`.
pub fn random_pure<R: Rng + ?Sized>(rng: &mut R, dims: &LocalDims) -> Result<PureState> {
    let amps = (0..dims.total()).map(|_| gaussian(rng)).collect();
    PureState::normalized(dims.clone(), amps)
}

/// Random local dimensions: `k` parties, each in `1..=max_dim`.
pub fn random_dims<R: Rng + ?Sized>(rng: &mut R, k: usize, max_dim: usize) -> Result<LocalDims> {
    LocalDims::new((0..k).map(|_| rng.random_range(1..=max_dim)).collect())
}

/// Random density matrix `G G† / Tr(G G†)` with a Ginibre `G` of the given rank.
pub fn random_mixed<R: Rng + ?Sized>(
    rng: &mut R,
    dims: &LocalDims,
    rank: usize,
) -> Result<MixedState> {
    let n = dims.total();
    let g = DMatrix::from_fn(n, rank.max(1), |_, _| gaussian(rng));
    let mut m = &g * g.adjoint();
    let tr = m.trace();
    m /= tr;
    let m = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    MixedState::new(dims.clone(), m)
}

/// A pair `(φ, ψ)` with `|⟨φ|ψ⟩| = √(1 − D²)`, i.e. purified distance `D`.
///
/// `ψ = √(1−D²)·φ + D·χ` with `χ` a random unit vector orthogonal to `φ`.
pub fn random_pair_at_distance<R: Rng + ?Sized>(
    rng: &mut R,
    dims: &LocalDims,
    distance: f64,
) -> Result<(PureState, PureState)> {
    if dims.total() < 2 && distance > 0.0 {
        return Err(Error::InvalidArgument(
            "a positive distance needs total dimension at least 2".into(),
        ));
    }
    let phi = random_pure(rng, dims)?;
    let chi = loop {
        let mut v: Vec<Complex64> = (0..dims.total()).map(|_| gaussian(rng)).collect();
        let overlap: Complex64 = phi
            .amplitudes()
            .iter()
            .zip(&v)
            .map(|(a, b)| a.conj() * b)
            .sum();
        for (x, a) in v.iter_mut().zip(phi.amplitudes()) {
            *x -= overlap * a;
        }
        let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm > 1e-6 || dims.total() < 2 {
            break v.into_iter().map(|x| x / norm.max(1e-300)).collect::<Vec<_>>();
        }
    };
    let c = (1.0 - distance * distance).max(0.0).sqrt();
    let psi: Vec<Complex64> = phi
        .amplitudes()
        .iter()
        .zip(&chi)
        .map(|(a, x)| a * c + x * distance)
        .collect();
    let psi = PureState::normalized(dims.clone(), psi)?;
    Ok((phi, psi))
}
