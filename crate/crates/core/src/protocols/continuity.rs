//! The measurement construction behind the continuity estimate.
//!
//! For unit vectors `φ, ψ` with `D = D(φ,ψ) ∈ (0,1)` set
//!
//! ```text
//! A = −1/√(1−F²),   B = conj(⟨φ|ψ⟩)/√(1−F²),   ω = Aφ + Bψ,
//! q = λ = 1 / (1 + D^{2/(k+1)}).
//! ```
//!
//! Projecting every flag qubit of `√q φ ⊕ √(1−q) ω` onto
//! `√λ|0⟩ + √(1−λ)|1⟩` leaves `B √((1−q)(1−λ)^k) ψ`, which succeeds with
//! probability `u = (1−D²) / (1+D^{2/(k+1)})^{k+1}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::{h2, Functional};
use crate::state::{regrouped_index, LocalDims, PureState};

/// Pairs closer than this (in `D²`) or nearly orthogonal (in `F`) admit no
/// construction.
pub const DEGENERATE_TOL: f64 = 1e-24;
/// Tolerance on `‖ω‖² − 1` when storing `ω`.
pub const OMEGA_NORM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityConstruction {
    pub k: usize,
    pub distance: f64,
    pub fidelity: f64,
    pub a: Complex64,
    pub b: Complex64,
    pub q: f64,
    pub lambda: f64,
    pub omega: PureState,
    /// `min{q, |B|²(1−q)(1−λ)^k}`.
    pub u: f64,
    /// `| |A|² + |B|² + 2 Re(conj(A) B ⟨φ|ψ⟩) − 1 |`.
    pub omega_unit_residual: f64,
    /// `| A + √(q/(1−q) · (λ/(1−λ))^k) |`.
    pub cancellation_residual: f64,
}

impl ContinuityConstruction {
    /// `(1 − D²) / (1 + D^{2/(k+1)})^{k+1}`.
    pub fn u_closed_form(&self) -> f64 {
        u_closed_form(self.distance, self.k)
    }
}

/// Closed form of the success weight `u` at distance `D` for `k` parties.
pub fn u_closed_form(distance: f64, k: usize) -> f64 {
    let e = (k + 1) as f64;
    (1.0 - distance * distance) / (1.0 + distance.powf(2.0 / e)).powf(e)
}

/// Builds `(A, B, q, λ, ω, u)` for the pair `(φ, ψ)`.
pub fn continuity_construction(phi: &PureState, psi: &PureState) -> Result<ContinuityConstruction> {
    let ip = phi.inner(psi)?;
    let k = phi.parties();
    // ψ_⊥ = ψ − ⟨φ|ψ⟩φ has norm D; computing D from it avoids cancellation.
    let perp: Vec<Complex64> = phi
        .amplitudes()
        .iter()
        .zip(psi.amplitudes())
        .map(|(f, s)| s - ip * f)
        .collect();
    let d2: f64 = perp.iter().map(Complex64::norm_sqr).sum();
    let distance = d2.sqrt();
    let fidelity = ip.norm();
    if !(d2 > DEGENERATE_TOL) || !(fidelity > 1e-12) || distance >= 1.0 {
        return Err(Error::DegeneratePair(distance));
    }
    let a = Complex64::new(-1.0 / distance, 0.0);
    let b = ip.conj() / distance;
    let s = distance.powf(2.0 / (k + 1) as f64);
    let q = 1.0 / (1.0 + s);
    let lambda = q;
    // ω = conj(ip)·ψ_⊥/D − D·φ, equal to Aφ + Bψ.
    let omega_amps: Vec<Complex64> = perp
        .iter()
        .zip(phi.amplitudes())
        .map(|(p, f)| b * p - f * distance)
        .collect();
    let omega = PureState::with_tolerance(phi.dims().clone(), omega_amps, OMEGA_NORM_TOL)?;
    let omega_unit_residual =
        (a.norm_sqr() + b.norm_sqr() + 2.0 * (a.conj() * b * ip).re - 1.0).abs();
    let target_a = -(q / (1.0 - q) * (lambda / (1.0 - lambda)).powi(k as i32)).sqrt();
    let cancellation_residual = (a - target_a).norm();
    let u = q.min(b.norm_sqr() * (1.0 - q) * (1.0 - lambda).powi(k as i32));
    Ok(ContinuityConstruction {
        k,
        distance,
        fidelity,
        a,
        b,
        q,
        lambda,
        omega,
        u,
        omega_unit_residual,
        cancellation_residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProtocolCheck {
    /// `‖P(√q φ ⊕ √(1−q) ω) − B√((1−q)(1−λ)^k) ψ‖`.
    pub residual: f64,
    /// Squared norm of the projected vector.
    pub success_weight: f64,
    /// `|B|²(1−q)(1−λ)^k`.
    pub expected_weight: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Applies the flag projection explicitly and compares with the predicted
/// multiple of `ψ`.
pub fn continuity_protocol_check(
    c: &ContinuityConstruction,
    phi: &PureState,
    psi: &PureState,
    tol: f64,
) -> Result<ProtocolCheck> {
    phi.inner(psi)?;
    let sum = PureState::direct_sum(phi, &c.omega, c.q)?;
    let common: &LocalDims = phi.dims();
    let flags = LocalDims::uniform(2, c.k)?;
    let v = [c.lambda.sqrt(), (1.0 - c.lambda).sqrt()];
    let flag_coeffs: Vec<f64> = (0..flags.total())
        .map(|f| flags.digits(f).iter().map(|&bit| v[bit]).product())
        .collect();
    let coeff = c.b * ((1.0 - c.q) * (1.0 - c.lambda).powi(c.k as i32)).sqrt();
    let amps = sum.amplitudes();
    let mut res2 = 0.0;
    let mut weight = 0.0;
    for (i, target) in psi.amplitudes().iter().enumerate() {
        let projected: Complex64 = flag_coeffs
            .iter()
            .enumerate()
            .map(|(f, w)| amps[regrouped_index(common, &flags, i, f)] * *w)
            .sum();
        weight += projected.norm_sqr();
        res2 += (projected - coeff * target).norm_sqr();
    }
    let residual = res2.sqrt();
    Ok(ProtocolCheck {
        residual,
        success_weight: weight,
        expected_weight: coeff.norm_sqr(),
        tolerance: tol,
        pass: residual <= tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectionBound {
    /// `u E(ψ)`.
    pub lhs: f64,
    /// `q E(φ) + (1−q) E(ω) + h(q)`.
    pub rhs: f64,
    /// `E(ψ) − E(φ)`.
    pub increase: f64,
    /// `(1−u)/u · log dim H + h(q)/u`.
    pub one_sided_bound: f64,
    pub pass: bool,
}

/// Checks `u E(ψ) ≤ q E(φ) + (1−q) E(ω) + h(q)` and the resulting one-sided
/// estimate `E(ψ) − E(φ) ≤ (1−u)/u · log dim H + h(q)/u`, both with slack `tol`.
pub fn check_projection_bound(
    c: &ContinuityConstruction,
    e: &Functional,
    phi: &PureState,
    psi: &PureState,
    tol: f64,
) -> Result<ProjectionBound> {
    let (ep, es, eo) = (e.evaluate(phi)?, e.evaluate(psi)?, e.evaluate(&c.omega)?);
    let lhs = c.u * es;
    let rhs = c.q * ep + (1.0 - c.q) * eo + h2(c.q);
    let increase = es - ep;
    let one_sided_bound =
        (1.0 - c.u) / c.u * phi.dims().log2_total() + h2(c.q) / c.u;
    Ok(ProjectionBound {
        lhs,
        rhs,
        increase,
        one_sided_bound,
        pass: lhs <= rhs + tol && increase <= one_sided_bound + tol,
    })
}
