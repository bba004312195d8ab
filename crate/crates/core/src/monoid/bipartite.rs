use super::majorization::majorization_geq;
use super::PreorderedMonoid;
use crate::error::{Error, Result};
use crate::state::{Cut, PureState, SchmidtSpectrum};

/// Bipartite pure states up to local unitaries, represented by their grouped
/// Schmidt spectra. Combination is the tensor product, the generator is the
/// EPR pair, and the order is (ε-relaxed) majorization.
#[derive(Debug, Clone, Copy, Default)]
pub struct BipartitePureMonoid;

impl PreorderedMonoid for BipartitePureMonoid {
    type Element = SchmidtSpectrum;

    fn unit(&self) -> SchmidtSpectrum {
        SchmidtSpectrum::trivial()
    }

    fn combine(&self, a: &SchmidtSpectrum, b: &SchmidtSpectrum) -> SchmidtSpectrum {
        a.tensor(b)
    }

    fn generator(&self) -> SchmidtSpectrum {
        SchmidtSpectrum::uniform_pow2(1)
    }

    fn geq(&self, x: &SchmidtSpectrum, y: &SchmidtSpectrum, eps: f64) -> Result<bool> {
        Ok(majorization_geq(x, y, eps))
    }

    fn power(&self, x: &SchmidtSpectrum, n: u64) -> SchmidtSpectrum {
        x.power(n)
    }
}

/// Monoid element of a bipartite pure state: its grouped Schmidt spectrum.
pub fn monoid_of_bipartite_pure(phi: &PureState) -> Result<SchmidtSpectrum> {
    if phi.parties() != 2 {
        return Err(Error::WrongPartyCount {
            expected: 2,
            got: phi.parties(),
        });
    }
    phi.schmidt_spectrum(&Cut::new(vec![0], 2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn element_examples() {
        let m = BipartitePureMonoid;
        let epr = monoid_of_bipartite_pure(&PureState::ghz(2, 2).unwrap()).unwrap();
        assert!(m.combine(&epr, &epr).approx_eq(&SchmidtSpectrum::uniform_pow2(2), 1e-12));
        let s = monoid_of_bipartite_pure(&PureState::from_schmidt(&[0.75, 0.25]).unwrap()).unwrap();
        let sq = m.power(&s, 2);
        let want = SchmidtSpectrum::new([
            (0.5625, BigUint::from(1u32)),
            (0.1875, BigUint::from(2u32)),
            (0.0625, BigUint::from(1u32)),
        ])
        .unwrap();
        assert!(sq.approx_eq(&want, 1e-12));
        for d in [0u64, 1, 5, 40] {
            assert_eq!(m.power(&m.generator(), d), SchmidtSpectrum::uniform_pow2(d));
        }
        assert!(monoid_of_bipartite_pure(&PureState::ghz(2, 3).unwrap()).is_err());
    }

    #[test]
    fn every_element_dominates_unit() {
        let m = BipartitePureMonoid;
        let s = SchmidtSpectrum::from_probabilities(&[0.5, 0.3, 0.2]).unwrap();
        assert!(m.geq(&s, &m.unit(), 0.0).unwrap());
        assert!(m.geq(&m.power(&s, 9), &m.unit(), 0.0).unwrap());
    }
}
