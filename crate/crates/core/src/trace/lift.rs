//! Binary to 2^k-ary lifting. Symbol j of the lifted string has binary
//! expansion `(c¹_j, …, cᵏ_j)` with `c¹` as the most significant bit.

use crate::error::{invalid, Result};
use crate::strings::{Alphabet, QaryString};

/// The `k` component codewords of a lifted string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuaternaryLift {
    components: Vec<Vec<u8>>,
}

impl QuaternaryLift {
    pub fn new(components: Vec<Vec<u8>>) -> Result<Self> {
        if components.is_empty() || components.len() > 8 {
            return invalid(format!("need 1..=8 components, got {}", components.len()));
        }
        let len = components[0].len();
        if components.iter().any(|c| c.len() != len) {
            return invalid("component codewords differ in length");
        }
        if components.iter().flatten().any(|&b| b > 1) {
            return invalid("component codewords must be binary");
        }
        Ok(QuaternaryLift { components })
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Vec<u8>] {
        &self.components
    }

    pub fn symbols(&self) -> Vec<u8> {
        let k = self.k();
        (0..self.components[0].len())
            .map(|j| self.components.iter().enumerate().fold(0u8, |acc, (i, c)| acc | c[j] << (k - 1 - i)))
            .collect()
    }
}

/// Lift `k` binary strings into one string over `2^k` symbols.
pub fn lift(components: &[Vec<u8>]) -> Result<Vec<u8>> {
    Ok(QuaternaryLift::new(components.to_vec())?.symbols())
}

/// Two binary components as a DNA string (A=0, C=1, G=2, T=3).
pub fn lift_to_dna(c1: &[u8], c2: &[u8]) -> Result<QaryString> {
    QaryString::new(Alphabet::Dna, lift(&[c1.to_vec(), c2.to_vec()])?)
}

/// Inverse of [`lift`]; also applies to traces of a lifted string.
pub fn split_components(symbols: &[u8], k: usize) -> Vec<Vec<u8>> {
    (0..k).map(|i| symbols.iter().map(|&s| (s >> (k - 1 - i)) & 1).collect()).collect()
}

/// `(AC)^L (TG)^L` with `L = ⌈25·log₂ n⌉`.
pub fn gc_balanced_marker(n: usize) -> Result<QaryString> {
    if n < 2 {
        return invalid("marker length needs n >= 2");
    }
    let l = (25.0 * (n as f64).log2()).ceil() as usize;
    let mut symbols = Vec::with_capacity(4 * l);
    for _ in 0..l {
        symbols.extend([0, 1]);
    }
    for _ in 0..l {
        symbols.extend([3, 2]);
    }
    QaryString::new(Alphabet::Dna, symbols)
}
