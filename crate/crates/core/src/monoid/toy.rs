use super::PreorderedMonoid;
use crate::error::Result;

/// `(ℕ, +, ≥)` written multiplicatively: `x^n` is `n·x`, the unit is 0.
/// The generator is a fixed positive integer. The order ignores `ε`.
#[derive(Debug, Clone, Copy)]
pub struct NaturalsMonoid {
    generator: u64,
}

impl NaturalsMonoid {
    pub fn new(generator: u64) -> Self {
        Self { generator }
    }
}

impl PreorderedMonoid for NaturalsMonoid {
    type Element = u64;

    fn unit(&self) -> u64 {
        0
    }

    fn combine(&self, a: &u64, b: &u64) -> u64 {
        a.saturating_add(*b)
    }

    fn generator(&self) -> u64 {
        self.generator
    }

    fn geq(&self, x: &u64, y: &u64, _eps: f64) -> Result<bool> {
        Ok(x >= y)
    }

    fn power(&self, x: &u64, n: u64) -> u64 {
        x.saturating_mul(n)
    }
}
