use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::cut::Cut;
use super::dims::{regrouped_index, LocalDims};
use super::mixed::MixedState;
use super::spectrum::SchmidtSpectrum;
use crate::error::{Error, Result};

/// Unit-norm tolerance for [`PureState::new`].
pub const NORM_TOL: f64 = 1e-10;

/// A k-partite pure state as a dense amplitude vector in row-major
/// mixed-radix order (party 0 most significant).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PureState {
    dims: LocalDims,
    amps: Vec<Complex64>,
}

impl PureState {
    pub fn new(dims: LocalDims, amps: Vec<Complex64>) -> Result<Self> {
        Self::with_tolerance(dims, amps, NORM_TOL)
    }

    /// As [`PureState::new`], accepting a squared norm within `tol` of 1.
    /// The amplitudes are stored as given.
    pub fn with_tolerance(dims: LocalDims, amps: Vec<Complex64>, tol: f64) -> Result<Self> {
        if amps.len() != dims.total() {
            return Err(Error::AmplitudeLength {
                expected: dims.total(),
                got: amps.len(),
            });
        }
        let norm_sqr: f64 = amps.iter().map(Complex64::norm_sqr).sum();
        if !((norm_sqr - 1.0).abs() <= tol) {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { dims, amps })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalized(dims: LocalDims, mut amps: Vec<Complex64>) -> Result<Self> {
        let norm = amps.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::NotNormalized {
                norm_sqr: norm * norm,
            });
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Self::new(dims, amps)
    }

    /// Computational basis state `|i_1 … i_k⟩`.
    pub fn basis(dims: LocalDims, digits: &[usize]) -> Result<Self> {
        if digits.len() != dims.parties() {
            return Err(Error::PartyMismatch {
                left: dims.parties(),
                right: digits.len(),
            });
        }
        if digits.iter().zip(dims.as_slice()).any(|(&i, &d)| i >= d) {
            return Err(Error::InvalidArgument(format!(
                "basis digits {digits:?} out of range for {:?}",
                dims.as_slice()
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
        amps[dims.index(digits)] = Complex64::new(1.0, 0.0);
        Self::new(dims, amps)
    }

    /// `|0…0⟩` on `k` qubits-of-dimension-1, i.e. the trivial product state.
    pub fn product_zero(k: usize) -> Result<Self> {
        Self::basis(LocalDims::uniform(1, k)?, &vec![0; k])
    }

    /// Generalized GHZ state `(1/√r) Σ_i |i i … i⟩` on `k` parties of dimension `r`.
    pub fn ghz(r: usize, k: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroDimension { party: 0 });
        }
        let dims = LocalDims::uniform(r, k)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
        let a = Complex64::new(1.0 / (r as f64).sqrt(), 0.0);
        for i in 0..r {
            amps[dims.index(&vec![i; k])] = a;
        }
        Self::new(dims, amps)
    }

    /// EPR pair between parties `a` and `b` (0-based) of a `k`-party system,
    /// other parties in a one-dimensional trivial space.
    pub fn epr_between(a: usize, b: usize, k: usize) -> Result<Self> {
        if a == b || a >= k || b >= k {
            return Err(Error::InvalidArgument(format!(
                "EPR pair ({}, {}) invalid for k = {k}",
                a + 1,
                b + 1
            )));
        }
        let mut d = vec![1; k];
        d[a] = 2;
        d[b] = 2;
        let dims = LocalDims::new(d)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        for i in 0..2 {
            let mut digits = vec![0; k];
            digits[a] = i;
            digits[b] = i;
            amps[dims.index(&digits)] = h;
        }
        Self::new(dims, amps)
    }

    /// Bipartite state `Σ_i √p_i |i i⟩` in Schmidt form.
    pub fn from_schmidt(probabilities: &[f64]) -> Result<Self> {
        Self::from_schmidt_with_tolerance(probabilities, NORM_TOL)
    }

    pub(crate) fn from_schmidt_with_tolerance(probabilities: &[f64], tol: f64) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::InvalidArgument("empty Schmidt coefficient list".into()));
        }
        if let Some(&p) = probabilities.iter().find(|&&p| !(0.0..=1.0).contains(&p)) {
            return Err(Error::InvalidProbability(p));
        }
        let r = probabilities.len();
        let dims = LocalDims::uniform(r, 2)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
        for (i, p) in probabilities.iter().enumerate() {
            amps[i * r + i] = Complex64::new(p.sqrt(), 0.0);
        }
        Self::with_tolerance(dims, amps, tol)
    }

    pub fn dims(&self) -> &LocalDims {
        &self.dims
    }

    pub fn parties(&self) -> usize {
        self.dims.parties()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same_dims(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨φ|ψ⟩|`, the fidelity of two pure states.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        Ok(self.inner(other)?.norm().min(1.0))
    }

    /// `√(1 − |⟨φ|ψ⟩|²)`, evaluated as `‖ψ − ⟨φ|ψ⟩φ‖ / ‖ψ‖` (with `φ`
    /// normalized), which stays accurate when the states nearly coincide.
    pub fn purified_distance(&self, other: &Self) -> Result<f64> {
        let ip = self.inner(other)? / self.norm_sqr();
        let perp: f64 = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (b - ip * a).norm_sqr())
            .sum();
        Ok((perp / other.norm_sqr()).sqrt().min(1.0))
    }

    pub(crate) fn check_same_dims(&self, other: &Self) -> Result<()> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch {
                left: self.dims.as_slice().to_vec(),
                right: other.dims.as_slice().to_vec(),
            });
        }
        Ok(())
    }

    /// Tensor product with party-wise regrouping: party `j` of the result is
    /// `H_j ⊗ K_j` with dimension `d_j · e_j`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let dims = self.dims.product(&other.dims)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
        for (ia, a) in self.amps.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            for (ib, b) in other.amps.iter().enumerate() {
                amps[regrouped_index(&self.dims, &other.dims, ia, ib)] = a * b;
            }
        }
        Self::new(dims, amps)
    }

    /// `n`-fold tensor power, `n ≥ 1`.
    pub fn tensor_power(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Self::product_zero(self.parties());
        }
        let mut out = self.clone();
        for _ in 1..n {
            out = out.tensor(self)?;
        }
        Ok(out)
    }

    /// Embeds into larger local dimensions by zero padding.
    pub fn pad_to(&self, dims: &LocalDims) -> Result<Self> {
        self.dims.check_parties(dims)?;
        if self.dims.as_slice().iter().zip(dims.as_slice()).any(|(a, b)| a > b) {
            return Err(Error::DimensionMismatch {
                left: self.dims.as_slice().to_vec(),
                right: dims.as_slice().to_vec(),
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
        for (i, a) in self.amps.iter().enumerate() {
            amps[dims.index(&self.dims.digits(i))] = *a;
        }
        Self::new(dims.clone(), amps)
    }

    /// `√p·a ⊗ |0…0⟩ + √(1−p)·b ⊗ |1…1⟩`, with one flag qubit appended to each
    /// party after padding both inputs to the common local dimensions.
    ///
    /// Party `j` of the result has local index `2·i_j + flag`.
    pub fn direct_sum(a: &Self, b: &Self, p: f64) -> Result<Self> {
        a.dims.check_parties(&b.dims)?;
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        let common = LocalDims::new(
            a.dims
                .as_slice()
                .iter()
                .zip(b.dims.as_slice())
                .map(|(x, y)| *x.max(y))
                .collect(),
        )?;
        let a = a.pad_to(&common)?;
        let b = b.pad_to(&common)?;
        let flags = LocalDims::uniform(2, common.parties())?;
        let dims = common.product(&flags)?;
        let zeros = 0;
        let ones = flags.total() - 1;
        let (sp, sq) = (p.sqrt(), (1.0 - p).sqrt());
        let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
        for i in 0..common.total() {
            amps[regrouped_index(&common, &flags, i, zeros)] = a.amps[i] * sp;
            amps[regrouped_index(&common, &flags, i, ones)] = b.amps[i] * sq;
        }
        Self::new(dims, amps)
    }

    /// Amplitudes reshaped as a `dim(S) × dim(S^c)` matrix for a cut `S`.
    fn cut_matrix(&self, cut: &Cut) -> Result<(DMatrix<Complex64>, LocalDims)> {
        self.check_cut(cut)?;
        let k = self.parties();
        let inside: Vec<usize> = cut.parties().to_vec();
        let outside: Vec<usize> = (0..k).filter(|p| !cut.contains(*p)).collect();
        let d = self.dims.as_slice();
        let sub = LocalDims::new(inside.iter().map(|&p| d[p]).collect())?;
        let rest = LocalDims::new(outside.iter().map(|&p| d[p]).collect())?;
        let mut m = DMatrix::zeros(sub.total(), rest.total());
        for (i, a) in self.amps.iter().enumerate() {
            let digits = self.dims.digits(i);
            let r = inside.iter().fold(0, |acc, &p| acc * d[p] + digits[p]);
            let c = outside.iter().fold(0, |acc, &p| acc * d[p] + digits[p]);
            m[(r, c)] = *a;
        }
        Ok((m, sub))
    }

    fn check_cut(&self, cut: &Cut) -> Result<()> {
        if cut.k() != self.parties() {
            return Err(Error::InvalidCut {
                parties: cut.parties().to_vec(),
                k: self.parties(),
            });
        }
        Ok(())
    }

    /// `Tr_{S^c} |φ⟩⟨φ|` on the parties of `cut`.
    pub fn reduced_state(&self, cut: &Cut) -> Result<MixedState> {
        let (m, sub) = self.cut_matrix(cut)?;
        let rho = &m * m.adjoint();
        MixedState::new(sub, rho)
    }

    /// Grouped eigenvalues of the reduced state on `cut`, computed from the
    /// singular values of the cut-reshaped amplitude matrix.
    pub fn schmidt_spectrum(&self, cut: &Cut) -> Result<SchmidtSpectrum> {
        let (m, _) = self.cut_matrix(cut)?;
        let eigs = schmidt_eigenvalues(m);
        SchmidtSpectrum::from_eigenvalues(&eigs)
    }

    /// Density matrix `|φ⟩⟨φ|`.
    pub fn density(&self) -> MixedState {
        let v = nalgebra::DVector::from_column_slice(&self.amps);
        MixedState::from_parts_unchecked(self.dims.clone(), &v * v.adjoint())
    }
}

pub(crate) fn schmidt_eigenvalues(m: DMatrix<Complex64>) -> Vec<f64> {
    if m.nrows() == 1 || m.ncols() == 1 {
        let s: f64 = m.iter().map(Complex64::norm_sqr).sum();
        return vec![s];
    }
    let svd = m.svd(false, false);
    svd.singular_values.iter().map(|s| s * s).collect()
}
