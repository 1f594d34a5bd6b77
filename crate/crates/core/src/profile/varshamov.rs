//! Varshamov asymmetric-error-correcting codes `{u : Hu ≡ β (mod p)}` with
//! `H[j][i] = α_i^(j+1) mod p`.

use crate::error::{invalid, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarshamovCode {
    p: u64,
    alphas: Vec<u64>,
    beta: Vec<u64>,
    h: Vec<Vec<u64>>,
}

impl VarshamovCode {
    /// Code of length `len` with `α_i = i` and one parity row per entry of `beta`.
    pub fn new(len: usize, p: u64, beta: Vec<u64>) -> Result<Self> {
        Self::with_alphas((1..=len as u64).collect(), p, beta)
    }

    pub fn with_alphas(alphas: Vec<u64>, p: u64, beta: Vec<u64>) -> Result<Self> {
        let (len, rows) = (alphas.len(), beta.len());
        if !is_prime(p) {
            return invalid(format!("modulus {p} is not prime"));
        }
        if p as usize <= len.max(rows) {
            return invalid(format!("modulus {p} must exceed max(d={rows}, N={len})"));
        }
        let mut seen = vec![false; p as usize];
        for &a in &alphas {
            if a == 0 || a >= p || std::mem::replace(&mut seen[a as usize], true) {
                return invalid(format!("α values must be distinct nonzero residues mod {p}"));
            }
        }
        if beta.iter().any(|&b| b >= p) {
            return invalid(format!("syndrome entries must be residues mod {p}"));
        }
        let h = (1..=rows as u32)
            .map(|j| alphas.iter().map(|&a| mod_pow(a, j, p)).collect())
            .collect();
        Ok(VarshamovCode { p, alphas, beta, h })
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    /// Number of congruence rows d.
    pub fn rows(&self) -> usize {
        self.beta.len()
    }

    /// Designed minimum asymmetric distance, d + 1.
    pub fn designed_distance(&self) -> u64 {
        self.rows() as u64 + 1
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn alphas(&self) -> &[u64] {
        &self.alphas
    }

    pub fn beta(&self) -> &[u64] {
        &self.beta
    }

    pub fn parity_matrix(&self) -> &[Vec<u64>] {
        &self.h
    }

    pub fn syndrome(&self, u: &[u32]) -> Vec<u64> {
        self.h
            .iter()
            .map(|row| row.iter().zip(u).map(|(&h, &x)| h * (x as u64 % self.p)).sum::<u64>() % self.p)
            .collect()
    }

    pub fn contains(&self, u: &[u32]) -> bool {
        u.len() == self.len() && self.syndrome(u) == self.beta
    }
}

fn mod_pow(base: u64, exp: u32, p: u64) -> u64 {
    (0..exp).fold(1, |acc, _| acc * base % p)
}

/// All nonnegative vectors of the given total weight in the code, in
/// lexicographic order.
pub fn varshamov_enumerate(code: &VarshamovCode, total_weight: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if code.is_empty() {
        return out;
    }
    let mut current = vec![0u32; code.len()];
    let partial = vec![0u64; code.rows()];
    descend(code, 0, total_weight, &partial, &mut current, &mut out);
    out
}

fn descend(
    code: &VarshamovCode,
    coord: usize,
    remaining: u32,
    partial: &[u64],
    current: &mut [u32],
    out: &mut Vec<Vec<u32>>,
) {
    let p = code.p;
    let column = |value: u32| -> Vec<u64> {
        partial
            .iter()
            .zip(&code.h)
            .map(|(&s, row)| (s + row[coord] * (value as u64 % p)) % p)
            .collect()
    };
    if coord + 1 == current.len() {
        if column(remaining) == code.beta {
            current[coord] = remaining;
            out.push(current.to_vec());
        }
        return;
    }
    for value in 0..=remaining {
        current[coord] = value;
        let next = column(value);
        descend(code, coord + 1, remaining - value, &next, current, out);
    }
    current[coord] = 0;
}
