use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on the total Hilbert-space dimension of a dense state.
pub const MAX_TOTAL_DIM: usize = 1 << 20;

/// Local Hilbert-space dimensions `d_1..d_k` of a k-partite system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct LocalDims {
    dims: Vec<usize>,
    total: usize,
}

impl LocalDims {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::NoParties);
        }
        if let Some(party) = dims.iter().position(|&d| d == 0) {
            return Err(Error::ZeroDimension { party });
        }
        let total = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .filter(|&t| t <= MAX_TOTAL_DIM)
            .ok_or(Error::DimensionTooLarge { cap: MAX_TOTAL_DIM })?;
        Ok(Self { dims, total })
    }

    pub fn uniform(d: usize, k: usize) -> Result<Self> {
        Self::new(vec![d; k])
    }

    /// Number of parties `k`.
    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.dims
    }

    pub fn get(&self, party: usize) -> usize {
        self.dims[party]
    }

    /// `log₂ dim H`.
    pub fn log2_total(&self) -> f64 {
        (self.total as f64).log2()
    }

    /// Row-major strides; party 0 is the most significant digit.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for j in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * self.dims[j + 1];
        }
        strides
    }

    /// Mixed-radix digits of a flat index.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for j in (0..self.dims.len()).rev() {
            out[j] = index % self.dims[j];
            index /= self.dims[j];
        }
        out
    }

    /// Flat index of a mixed-radix tuple.
    pub fn index(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&i, &d)| acc * d + i)
    }

    /// Party-wise product `d_j · e_j`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_parties(other)?;
        Self::new(self.dims.iter().zip(&other.dims).map(|(a, b)| a * b).collect())
    }

    pub(crate) fn check_parties(&self, other: &Self) -> Result<()> {
        if self.parties() != other.parties() {
            return Err(Error::PartyMismatch {
                left: self.parties(),
                right: other.parties(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<usize>> for LocalDims {
    type Error = Error;

    fn try_from(dims: Vec<usize>) -> Result<Self> {
        Self::new(dims)
    }
}

impl From<LocalDims> for Vec<usize> {
    fn from(d: LocalDims) -> Self {
        d.dims
    }
}

/// Flat index in the party-wise regrouped product space of `a ⊗ b`.
///
/// Party `j` of the product has local index `i_j · e_j + i'_j`.
pub(crate) fn regrouped_index(a: &LocalDims, b: &LocalDims, ia: usize, ib: usize) -> usize {
    let da = a.digits(ia);
    let db = b.digits(ib);
    da.iter()
        .zip(&db)
        .zip(b.as_slice())
        .zip(a.as_slice())
        .fold(0, |acc, (((&x, &y), &e), &d)| acc * (d * e) + x * e + y)
}
