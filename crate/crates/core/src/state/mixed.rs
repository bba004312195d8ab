use nalgebra::DMatrix;
use num_complex::Complex64;

use super::cut::Cut;
use super::dims::{regrouped_index, LocalDims};
use crate::error::{Error, Result};

/// Tolerance for Hermiticity, unit trace and positivity of density matrices.
pub const DENSITY_TOL: f64 = 1e-10;

/// A density matrix on a k-partite system.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedState {
    dims: LocalDims,
    matrix: DMatrix<Complex64>,
}

impl MixedState {
    pub fn new(dims: LocalDims, matrix: DMatrix<Complex64>) -> Result<Self> {
        let n = dims.total();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::InvalidDensityMatrix(format!(
                "matrix is {}×{}, expected {n}×{n}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let herm_err = (&matrix - matrix.adjoint())
            .iter()
            .fold(0.0f64, |m, z| m.max(z.norm()));
        if herm_err > DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (deviation {herm_err:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr} ≠ 1")));
        }
        let s = Self { dims, matrix };
        let min = s.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min < -DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(s)
    }

    pub(crate) fn from_parts_unchecked(dims: LocalDims, matrix: DMatrix<Complex64>) -> Self {
        Self { dims, matrix }
    }

    /// Maximally mixed state `I/d`.
    pub fn maximally_mixed(dims: LocalDims) -> Self {
        let n = dims.total();
        let m = DMatrix::from_diagonal_element(n, n, Complex64::new(1.0 / n as f64, 0.0));
        Self { dims, matrix: m }
    }

    pub fn dims(&self) -> &LocalDims {
        &self.dims
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = hermitize(&self.matrix)
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        v.sort_by(f64::total_cmp);
        v
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> f64 {
        -self
            .eigenvalues()
            .into_iter()
            .filter(|&l| l > 0.0)
            .map(|l| l * l.log2())
            .sum::<f64>()
    }

    fn check_total(&self, other: &Self) -> Result<()> {
        if self.dims.total() != other.dims.total() {
            return Err(Error::DimensionMismatch {
                left: self.dims.as_slice().to_vec(),
                right: other.dims.as_slice().to_vec(),
            });
        }
        Ok(())
    }

    /// Uhlmann fidelity `Tr √(σ^{1/2} ρ σ^{1/2})`, clamped to `[0, 1]`.
    pub fn fidelity(&self, sigma: &Self) -> Result<f64> {
        self.check_total(sigma)?;
        let root = psd_sqrt(&sigma.matrix);
        let inner = hermitize(&(&root * &self.matrix * &root));
        let f: f64 = inner
            .symmetric_eigenvalues()
            .iter()
            .map(|&l| l.max(0.0).sqrt())
            .sum();
        Ok(f.clamp(0.0, 1.0))
    }

    /// `√(1 − F²)`.
    pub fn purified_distance(&self, sigma: &Self) -> Result<f64> {
        let f = self.fidelity(sigma)?;
        Ok((1.0 - f * f).max(0.0).sqrt())
    }

    /// Tensor product with party-wise regrouping.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let dims = self.dims.product(&other.dims)?;
        let (na, nb) = (self.dims.total(), other.dims.total());
        let map: Vec<usize> = (0..na * nb)
            .map(|i| regrouped_index(&self.dims, &other.dims, i / nb, i % nb))
            .collect();
        let mut m = DMatrix::zeros(na * nb, na * nb);
        for r in 0..na * nb {
            for c in 0..na * nb {
                m[(map[r], map[c])] =
                    self.matrix[(r / nb, c / nb)] * other.matrix[(r % nb, c % nb)];
            }
        }
        Ok(Self { dims, matrix: m })
    }

    /// Partial trace keeping the parties of `keep`.
    pub fn partial_trace(&self, keep: &Cut) -> Result<Self> {
        if keep.k() != self.dims.parties() {
            return Err(Error::InvalidCut {
                parties: keep.parties().to_vec(),
                k: self.dims.parties(),
            });
        }
        let d = self.dims.as_slice();
        let inside = keep.parties();
        let sub = LocalDims::new(inside.iter().map(|&p| d[p]).collect())?;
        let outside: Vec<usize> = (0..d.len()).filter(|p| !keep.contains(*p)).collect();
        let n = self.dims.total();
        let split = |i: usize| {
            let digits = self.dims.digits(i);
            let a = inside.iter().fold(0, |acc, &p| acc * d[p] + digits[p]);
            let b = outside.iter().fold(0, |acc, &p| acc * d[p] + digits[p]);
            (a, b)
        };
        let parts: Vec<(usize, usize)> = (0..n).map(split).collect();
        let mut m = DMatrix::zeros(sub.total(), sub.total());
        for r in 0..n {
            for c in 0..n {
                let (ra, rb) = parts[r];
                let (ca, cb) = parts[c];
                if rb == cb {
                    m[(ra, ca)] += self.matrix[(r, c)];
                }
            }
        }
        Ok(Self {
            dims: sub,
            matrix: m,
        })
    }
}

fn hermitize(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Square root of a positive semidefinite matrix, negative eigenvalues clamped to 0.
fn psd_sqrt(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let eig = hermitize(m).symmetric_eigen();
    let roots = eig
        .eigenvalues
        .map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0));
    let v = &eig.eigenvectors;
    v * DMatrix::from_diagonal(&roots) * v.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::PureState;

    fn qubit() -> LocalDims {
        LocalDims::new(vec![2]).unwrap()
    }

    #[test]
    fn fidelity_examples() {
        let zero = PureState::basis(qubit(), &[0]).unwrap().density();
        let one = PureState::basis(qubit(), &[1]).unwrap().density();
        let mm = MixedState::maximally_mixed(qubit());
        assert!((zero.fidelity(&zero).unwrap() - 1.0).abs() < 1e-12);
        assert!(zero.fidelity(&one).unwrap().abs() < 1e-12);
        // Tr √(σ^{1/2} ρ σ^{1/2}) = Tr √(diag(1/2, 0)) = 1/√2.
        let f = zero.fidelity(&mm).unwrap();
        assert!((f - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((mm.fidelity(&zero).unwrap() - f).abs() < 1e-12);
        assert!((zero.purified_distance(&mm).unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((zero.purified_distance(&one).unwrap() - 1.0).abs() < 1e-12);
        assert!(zero.purified_distance(&zero).unwrap() < 1e-7);
    }

    #[test]
    fn validation_errors() {
        let d = qubit();
        let bad_trace = DMatrix::from_diagonal_element(2, 2, Complex64::new(1.0, 0.0));
        assert!(MixedState::new(d.clone(), bad_trace).is_err());
        let mut non_herm = DMatrix::from_diagonal_element(2, 2, Complex64::new(0.5, 0.0));
        non_herm[(0, 1)] = Complex64::new(0.1, 0.0);
        assert!(MixedState::new(d.clone(), non_herm).is_err());
        let mut neg = DMatrix::zeros(2, 2);
        neg[(0, 0)] = Complex64::new(1.5, 0.0);
        neg[(1, 1)] = Complex64::new(-0.5, 0.0);
        assert!(MixedState::new(d, neg).is_err());
    }

    #[test]
    fn dimension_mismatch() {
        let a = MixedState::maximally_mixed(qubit());
        let b = MixedState::maximally_mixed(LocalDims::new(vec![3]).unwrap());
        assert!(matches!(a.fidelity(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn partial_trace_of_epr() {
        let epr = PureState::ghz(2, 2).unwrap().density();
        let r = epr.partial_trace(&Cut::new(vec![1], 2).unwrap()).unwrap();
        let mm = MixedState::maximally_mixed(qubit());
        assert!((&r.matrix - &mm.matrix).norm() < 1e-14);
        assert!((r.entropy() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tensor_regroups_parties() {
        let epr = PureState::ghz(2, 2).unwrap();
        let t = epr.density().tensor(&epr.density()).unwrap();
        let want = epr.tensor(&epr).unwrap().density();
        assert!((t.matrix() - want.matrix()).norm() < 1e-14);
        assert_eq!(t.dims().as_slice(), &[4, 4]);
    }
}
