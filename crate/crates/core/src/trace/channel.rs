use rand::Rng;

use crate::error::{invalid, Result};

/// i.i.d. deletion channel: each symbol is dropped with probability `q_del`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeletionChannel {
    q_del: f64,
}

impl DeletionChannel {
    pub fn new(q_del: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&q_del) {
            return invalid(format!("deletion probability {q_del} must lie in [0, 1)"));
        }
        Ok(DeletionChannel { q_del })
    }

    pub fn q_del(&self) -> f64 {
        self.q_del
    }

    pub fn transmit<R: Rng + ?Sized>(&self, x: &[u8], rng: &mut R) -> Trace {
        let keep = 1.0 - self.q_del;
        let symbols = if self.q_del == 0.0 {
            x.to_vec()
        } else {
            x.iter().copied().filter(|_| rng.gen_bool(keep)).collect()
        };
        Trace { symbols, source_len: x.len() }
    }
}

/// A subsequence of a source string produced by one pass through the channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub symbols: Vec<u8>,
    pub source_len: usize,
}

impl AsRef<[u8]> for Trace {
    fn as_ref(&self) -> &[u8] {
        &self.symbols
    }
}

/// `t` independent traces of `x`.
pub fn generate_traces<R: Rng + ?Sized>(x: &[u8], q_del: f64, t: usize, rng: &mut R) -> Result<Vec<Trace>> {
    if t == 0 {
        return invalid("at least one trace is required");
    }
    let channel = DeletionChannel::new(q_del)?;
    Ok((0..t).map(|_| channel.transmit(x, rng)).collect())
}

/// Greedy subsequence test.
pub fn is_subsequence(candidate: &[u8], source: &[u8]) -> bool {
    let mut it = source.iter();
    candidate.iter().all(|c| it.any(|s| s == c))
}
