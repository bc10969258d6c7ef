use num_complex::Complex64;

use super::zeta::{zeta_prime_at_zero, zeta_prime_trivial, MAX_TRIVIAL_INDEX};
use crate::{Error, Result};

/// Ordinates of the first nontrivial zeros `1/2 + i t_j`.
pub const KNOWN_ZERO_ORDINATES: [f64; 10] = [
    14.134_725_141_734_693,
    21.022_039_638_771_555,
    25.010_857_580_145_689,
    30.424_876_125_859_513,
    32.935_061_587_739_19,
    37.586_178_158_825_671,
    40.918_719_012_147_495,
    43.327_073_280_914_999,
    48.005_150_881_167_16,
    49.773_832_477_672_302,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NontrivialZero {
    pub imag: f64,
    pub zeta_prime: Complex64,
}

/// Zeros in use together with the derivative values the residue
/// expansions divide by.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    nontrivial: Vec<NontrivialZero>,
    /// `trivial_prime[n - 1] = zeta'(-2n)`.
    trivial_prime: Vec<f64>,
}

impl ZeroSet {
    /// The first `count` tabulated zeros, with `zeta'` computed numerically.
    pub fn first(count: usize) -> Result<Self> {
        if count > KNOWN_ZERO_ORDINATES.len() {
            return Err(Error::invalid(format!(
                "only {} zero ordinates are tabulated, requested {count}",
                KNOWN_ZERO_ORDINATES.len()
            )));
        }
        Self::from_ordinates(&KNOWN_ZERO_ORDINATES[..count])
    }

    pub fn from_ordinates(ordinates: &[f64]) -> Result<Self> {
        let nontrivial = ordinates
            .iter()
            .map(|&t| {
                Ok(NontrivialZero {
                    imag: t,
                    zeta_prime: zeta_prime_at_zero(t)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(nontrivial)
    }

    pub fn new(nontrivial: Vec<NontrivialZero>) -> Result<Self> {
        if nontrivial.windows(2).any(|w| !(w[0].imag < w[1].imag)) {
            return Err(Error::invalid("zero ordinates must be strictly increasing"));
        }
        if let Some(z) = nontrivial
            .iter()
            .find(|z| !(z.imag > 0.0) || z.zeta_prime.norm() == 0.0 || !z.zeta_prime.is_finite())
        {
            return Err(Error::invalid(format!(
                "zero at t = {} needs a positive ordinate and finite nonzero zeta'",
                z.imag
            )));
        }
        let trivial_prime = (1..=MAX_TRIVIAL_INDEX)
            .map(zeta_prime_trivial)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            nontrivial,
            trivial_prime,
        })
    }

    pub fn nontrivial(&self) -> &[NontrivialZero] {
        &self.nontrivial
    }

    /// Zero `j`, counted from 1.
    pub fn zero(&self, j: usize) -> Result<&NontrivialZero> {
        j.checked_sub(1)
            .and_then(|i| self.nontrivial.get(i))
            .ok_or_else(|| {
                Error::invalid(format!(
                    "zero index {j} outside 1..={}",
                    self.nontrivial.len()
                ))
            })
    }

    /// `zeta'(-2n)` for `1 <= n <= 20`.
    pub fn trivial_prime(&self, n: u32) -> Result<f64> {
        n.checked_sub(1)
            .and_then(|i| self.trivial_prime.get(i as usize).copied())
            .ok_or_else(|| Error::invalid(format!("trivial-zero index {n} outside 1..=20")))
    }

    pub fn len(&self) -> usize {
        self.nontrivial.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nontrivial.is_empty()
    }
}
