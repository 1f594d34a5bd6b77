use crate::error::{invalid, Result};
use crate::profile::is_prime;

/// Prime field 𝔽_p with its smallest primitive root ξ and discrete-log table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    xi: u64,
    /// `index[a] = M(a)`: `M(0) = 0`, `M(ξ^m) = m + 1`.
    index: Vec<usize>,
    /// `element[M(a)] = a`.
    element: Vec<u64>,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        if p > 1 << 16 {
            return invalid(format!("field size {p} too large"));
        }
        let xi = (1..p).find(|&g| multiplicative_order(g, p) == p - 1).expect("every prime field has a primitive root");
        let mut index = vec![0; p as usize];
        let mut element = vec![0; p as usize];
        let mut power = 1;
        for m in 0..p as usize - 1 {
            index[power as usize] = m + 1;
            element[m + 1] = power;
            power = power * xi % p;
        }
        Ok(PrimeField { p, xi, index, element })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The primitive element ξ.
    pub fn xi(&self) -> u64 {
        self.xi
    }

    /// `M(a)`, the position of `a` in the order `0, 1, ξ, ξ², …`.
    pub fn m_index(&self, a: u64) -> usize {
        self.index[(a % self.p) as usize]
    }

    /// Inverse of [`PrimeField::m_index`].
    pub fn element(&self, m: usize) -> u64 {
        self.element[m]
    }

    /// Evaluates `Σ coeffs[i]·x^i` by Horner's rule.
    pub fn eval(&self, coeffs: &[u64], x: u64) -> u64 {
        coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % self.p)
    }
}

fn multiplicative_order(g: u64, p: u64) -> u64 {
    let mut x = g % p;
    let mut order = 1;
    while x != 1 {
        x = x * g % p;
        order += 1;
    }
    order
}
