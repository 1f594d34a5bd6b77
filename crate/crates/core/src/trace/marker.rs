//! Marker-based coded trace reconstruction.
//!
//! A message is cut into blocks, each block is runlength-limited by bit
//! stuffing and the blocks are separated by markers `0^m 1^m`. Decoding cuts
//! every trace at its surviving markers and runs BMA per block. The two-level
//! variant nests a second, shorter marker layer inside every outer block and
//! protects outer blocks with a CRC-8 and XOR parity blocks.

use crc::{Crc, CRC_8_SMBUS};

use super::bma::bma_reconstruct;
use crate::error::{invalid, Error, Result};

const CRC8: Crc<u8> = Crc::<u8>::new(&CRC_8_SMBUS);
const CHECKSUM_BITS: usize = 8;
/// Smallest marker run. Keeps the stuffing limit at 3 or more.
pub const MIN_MARKER_RUN: usize = 8;
pub const DEFAULT_MARKER_CONSTANT: f64 = 2.0;
pub const DEFAULT_PARITY_GROUP: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct MarkerCodeParams {
    pub n: usize,
    pub c: f64,
    /// Data bits per (outer) block. `None` selects `⌈log₂² n⌉`.
    pub block_len: Option<usize>,
    pub levels: u8,
    /// Data blocks covered by one parity block (level 2).
    pub parity_group: usize,
}

impl MarkerCodeParams {
    pub fn new(n: usize, levels: u8) -> Self {
        MarkerCodeParams {
            n,
            c: DEFAULT_MARKER_CONSTANT,
            block_len: None,
            levels,
            parity_group: DEFAULT_PARITY_GROUP,
        }
    }
}

/// Bit-stuffing runlength limiter with a fixed encoded length.
///
/// Encoded blocks start with a 0 guard bit, end with a 1 and never contain a
/// run of `run_limit` equal bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RllBlock {
    pub run_limit: usize,
    pub data_len: usize,
    pub encoded_len: usize,
}

impl RllBlock {
    pub fn new(run_limit: usize, data_len: usize) -> Self {
        assert!(run_limit >= 3, "run limit below 3 cannot be stuffed");
        let max_stuffed = 1 + data_len + data_len.div_ceil(run_limit - 2);
        RllBlock { run_limit, data_len, encoded_len: max_stuffed + 2 }
    }

    pub fn encode(&self, data: &[u8]) -> Vec<u8> {
        debug_assert_eq!(data.len(), self.data_len);
        let mut out = Vec::with_capacity(self.encoded_len);
        let mut run = (0u8, 0usize);
        let mut push = |out: &mut Vec<u8>, bit: u8| {
            out.push(bit);
            run = if run.0 == bit { (bit, run.1 + 1) } else { (bit, 1) };
            if run.1 == self.run_limit - 1 {
                out.push(1 - bit);
                run = (1 - bit, 1);
            }
        };
        push(&mut out, 0);
        for &bit in data {
            push(&mut out, bit);
        }
        while out.len() + 1 < self.encoded_len {
            let next = 1 - *out.last().unwrap();
            push(&mut out, next);
        }
        out.push(1);
        out
    }

    /// Inverse of [`RllBlock::encode`]; tolerant of corrupted input and always
    /// returns `data_len` bits.
    pub fn decode(&self, bits: &[u8]) -> Vec<u8> {
        let mut data = Vec::with_capacity(self.data_len);
        let mut run = (0u8, 0usize);
        let mut i = 0;
        let mut guard = true;
        while data.len() < self.data_len && i < bits.len() {
            let bit = bits[i];
            i += 1;
            if !guard {
                data.push(bit);
            }
            guard = false;
            run = if run.0 == bit && run.1 > 0 { (bit, run.1 + 1) } else { (bit, 1) };
            if run.1 == self.run_limit - 1 {
                if let Some(&stuffed) = bits.get(i) {
                    run = (stuffed, 1);
                }
                i += 1;
            }
        }
        data.resize(self.data_len, 0);
        data
    }
}

/// Layout of a marker code, derived from [`MarkerCodeParams`].
#[derive(Debug, Clone, PartialEq)]
pub struct MarkerCode {
    params: MarkerCodeParams,
    marker_run: usize,
    block_data: usize,
    inner_marker_run: Option<usize>,
    rll: RllBlock,
    payload_len: usize,
    sub_blocks: usize,
    data_blocks: usize,
    parity_blocks: usize,
}

fn marker_run(c: f64, x: f64) -> usize {
    ((c * x).ceil().max(0.0) as usize).max(MIN_MARKER_RUN)
}

fn stuffing_limit(m: usize) -> usize {
    m.div_ceil(2) - 1
}

impl MarkerCode {
    pub fn new(params: MarkerCodeParams) -> Result<Self> {
        let n = params.n;
        if n == 0 {
            return invalid("message length must be positive");
        }
        if !(params.c > 0.0 && params.c.is_finite()) {
            return invalid(format!("marker constant {} must be positive", params.c));
        }
        let log_n = (n as f64).log2();
        let default_block = ((log_n * log_n).ceil() as usize).max(1);
        match params.levels {
            1 => {
                let m = marker_run(params.c, log_n);
                let r = stuffing_limit(m);
                let b = params.block_len.unwrap_or(default_block.max(2 * r));
                if b < 2 * r {
                    return invalid(format!("block length {b} is below 2r = {}", 2 * r));
                }
                Ok(MarkerCode {
                    marker_run: m,
                    block_data: b,
                    inner_marker_run: None,
                    rll: RllBlock::new(r, b),
                    payload_len: b,
                    sub_blocks: 1,
                    data_blocks: n.div_ceil(b),
                    parity_blocks: 0,
                    params,
                })
            }
            2 => {
                if n < 16 {
                    return invalid("two-level codes need n >= 16");
                }
                if params.parity_group == 0 {
                    return invalid("parity group must be positive");
                }
                let log_log_n = log_n.log2();
                let m2 = marker_run(params.c, log_log_n);
                let r2 = stuffing_limit(m2);
                let b2 = ((log_log_n * log_log_n).ceil() as usize).max(2 * r2);
                let m = marker_run(params.c, log_n).max(3 * m2);
                let b = params.block_len.unwrap_or(default_block);
                if b == 0 {
                    return invalid("block length must be positive");
                }
                let payload_len = b + CHECKSUM_BITS;
                let data_blocks = n.div_ceil(b);
                Ok(MarkerCode {
                    marker_run: m,
                    block_data: b,
                    inner_marker_run: Some(m2),
                    rll: RllBlock::new(r2, b2),
                    payload_len,
                    sub_blocks: payload_len.div_ceil(b2),
                    data_blocks,
                    parity_blocks: data_blocks.div_ceil(params.parity_group),
                    params,
                })
            }
            l => invalid(format!("unsupported number of levels {l}")),
        }
    }

    pub fn params(&self) -> &MarkerCodeParams {
        &self.params
    }

    pub fn message_len(&self) -> usize {
        self.params.n
    }

    /// Outer marker run m.
    pub fn marker_run(&self) -> usize {
        self.marker_run
    }

    pub fn inner_marker_run(&self) -> Option<usize> {
        self.inner_marker_run
    }

    /// The runlength-limited block code used at the innermost level.
    pub fn rll(&self) -> RllBlock {
        self.rll
    }

    /// Message bits per outer block.
    pub fn block_data_len(&self) -> usize {
        self.block_data
    }

    pub fn data_blocks(&self) -> usize {
        self.data_blocks
    }

    pub fn parity_blocks(&self) -> usize {
        self.parity_blocks
    }

    pub fn outer_blocks(&self) -> usize {
        self.data_blocks + self.parity_blocks
    }

    pub fn outer_block_len(&self) -> usize {
        match self.inner_marker_run {
            None => self.rll.encoded_len,
            Some(m2) => self.sub_blocks * self.rll.encoded_len + (self.sub_blocks - 1) * 2 * m2,
        }
    }

    pub fn codeword_len(&self) -> usize {
        let blocks = self.outer_blocks();
        blocks * self.outer_block_len() + (blocks - 1) * 2 * self.marker_run
    }

    /// Detection threshold for a marker of run `m`. Never below the stuffing
    /// limit so that a single stuffed run cannot pass as half a marker.
    pub fn threshold(m: usize, q_del: f64) -> usize {
        let tau = ((1.0 - q_del) * m as f64 / 2.0).ceil() as usize;
        tau.max(stuffing_limit(m)).max(1)
    }

    pub fn encode(&self, message: &[u8]) -> Result<Vec<u8>> {
        if message.len() != self.params.n {
            return invalid(format!("message has {} bits, expected {}", message.len(), self.params.n));
        }
        if message.iter().any(|&b| b > 1) {
            return invalid("message must be binary");
        }
        let mut chunks: Vec<Vec<u8>> = message.chunks(self.block_data).map(<[u8]>::to_vec).collect();
        chunks.last_mut().unwrap().resize(self.block_data, 0);
        let blocks: Vec<Vec<u8>> = match self.inner_marker_run {
            None => chunks.iter().map(|c| self.rll.encode(c)).collect(),
            Some(m2) => {
                let mut payloads: Vec<Vec<u8>> = chunks.iter().map(|c| with_checksum(c)).collect();
                for group in chunks.chunks(self.params.parity_group) {
                    payloads.push(with_checksum(&xor_all(group.iter().map(Vec::as_slice), self.block_data)));
                }
                payloads.iter().map(|p| self.encode_inner(p, m2)).collect()
            }
        };
        Ok(join_with_marker(&blocks, self.marker_run))
    }

    fn encode_inner(&self, payload: &[u8], m2: usize) -> Vec<u8> {
        let mut padded = payload.to_vec();
        padded.resize(self.sub_blocks * self.rll.data_len, 0);
        let subs: Vec<Vec<u8>> = padded.chunks(self.rll.data_len).map(|c| self.rll.encode(c)).collect();
        join_with_marker(&subs, m2)
    }

    /// Full decoding with a report; `Err` only for malformed input.
    pub fn decode_report<T: AsRef<[u8]>>(&self, traces: &[T], q_del: f64) -> Result<DecodeReport> {
        if traces.is_empty() {
            return invalid("at least one trace is required");
        }
        if !(0.0..1.0).contains(&q_del) {
            return invalid(format!("deletion probability {q_del} must lie in [0, 1)"));
        }
        let tau = Self::threshold(self.marker_run, q_del);
        let blocks = self.outer_blocks();
        let segmented: Vec<Vec<&[u8]>> = traces
            .iter()
            .map(|t| split_at_markers(t.as_ref(), tau))
            .filter(|s| s.len() == blocks)
            .collect();
        let mut report = DecodeReport {
            message: None,
            traces_used: segmented.len(),
            traces_discarded: traces.len() - segmented.len(),
            erasures: Vec::new(),
            repaired: Vec::new(),
        };
        if segmented.is_empty() {
            return Ok(report);
        }
        let column = |i: usize| -> Vec<&[u8]> { segmented.iter().map(|s| s[i]).collect() };
        let mut message = Vec::with_capacity(self.data_blocks * self.block_data);
        match self.inner_marker_run {
            None => {
                for i in 0..blocks {
                    let estimate = bma_reconstruct(&column(i), self.rll.encoded_len, 2);
                    message.extend(self.rll.decode(&estimate));
                }
            }
            Some(m2) => {
                let tau2 = Self::threshold(m2, q_del);
                let mut data: Vec<Option<Vec<u8>>> =
                    (0..blocks).map(|i| self.decode_inner(&column(i), tau2)).collect();
                report.erasures = (0..blocks).filter(|&i| data[i].is_none()).collect();
                for (g, group) in (0..self.data_blocks).collect::<Vec<_>>().chunks(self.params.parity_group).enumerate() {
                    let parity = self.data_blocks + g;
                    let missing: Vec<usize> = group.iter().copied().filter(|&i| data[i].is_none()).collect();
                    if missing.len() == 1 && data[parity].is_some() {
                        let others = group
                            .iter()
                            .chain(std::iter::once(&parity))
                            .filter(|&&i| i != missing[0])
                            .map(|&i| data[i].as_deref().unwrap());
                        data[missing[0]] = Some(xor_all(others, self.block_data));
                        report.repaired.push(missing[0]);
                    }
                }
                if data[..self.data_blocks].iter().any(Option::is_none) {
                    return Ok(report);
                }
                for block in data.into_iter().take(self.data_blocks) {
                    message.extend(block.unwrap());
                }
            }
        }
        message.truncate(self.params.n);
        report.message = Some(message);
        Ok(report)
    }

    /// Reconstruct one outer block at level 2. `None` marks an erasure.
    fn decode_inner(&self, segments: &[&[u8]], tau2: usize) -> Option<Vec<u8>> {
        let split: Vec<Vec<&[u8]>> = segments
            .iter()
            .map(|s| split_at_markers(s, tau2))
            .filter(|s| s.len() == self.sub_blocks)
            .collect();
        if split.is_empty() {
            return None;
        }
        let mut payload = Vec::with_capacity(self.sub_blocks * self.rll.data_len);
        for j in 0..self.sub_blocks {
            let column: Vec<&[u8]> = split.iter().map(|s| s[j]).collect();
            payload.extend(self.rll.decode(&bma_reconstruct(&column, self.rll.encoded_len, 2)));
        }
        payload.truncate(self.payload_len);
        let (data, check) = payload.split_at(self.block_data);
        (checksum(data) == check).then(|| data.to_vec())
    }

    pub fn decode<T: AsRef<[u8]>>(&self, traces: &[T], q_del: f64) -> Result<Vec<u8>> {
        let report = self.decode_report(traces, q_del)?;
        match report.message {
            Some(m) => Ok(m),
            None if report.traces_used == 0 => {
                Err(Error::DecodeFailure(format!("all {} traces discarded", report.traces_discarded)))
            }
            None => Err(Error::DecodeFailure(format!(
                "unrepairable erasures at outer blocks {:?} (repaired {:?})",
                report.erasures, report.repaired
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeReport {
    pub message: Option<Vec<u8>>,
    pub traces_used: usize,
    pub traces_discarded: usize,
    /// Outer blocks whose checksum failed or that had no usable segment.
    pub erasures: Vec<usize>,
    /// Erased data blocks rebuilt from parity.
    pub repaired: Vec<usize>,
}

pub fn encode_marker_code(message: &[u8], params: &MarkerCodeParams) -> Result<Vec<u8>> {
    MarkerCode::new(params.clone())?.encode(message)
}

pub fn decode_marker_code<T: AsRef<[u8]>>(traces: &[T], params: &MarkerCodeParams, q_del: f64) -> Result<Vec<u8>> {
    MarkerCode::new(params.clone())?.decode(traces, q_del)
}

fn join_with_marker(blocks: &[Vec<u8>], m: usize) -> Vec<u8> {
    let mut out = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        if i > 0 {
            out.extend(std::iter::repeat_n(0, m));
            out.extend(std::iter::repeat_n(1, m));
        }
        out.extend_from_slice(b);
    }
    out
}

/// Maximal runs as `(bit, start, len)`.
pub fn runs(bits: &[u8]) -> Vec<(u8, usize, usize)> {
    let mut out: Vec<(u8, usize, usize)> = Vec::new();
    for (i, &b) in bits.iter().enumerate() {
        match out.last_mut() {
            Some(r) if r.0 == b => r.2 += 1,
            _ => out.push((b, i, 1)),
        }
    }
    out
}

/// Cut a trace at every zero-run of length ≥ τ directly followed by a one-run
/// of length ≥ τ.
pub fn split_at_markers(trace: &[u8], tau: usize) -> Vec<&[u8]> {
    let runs = runs(trace);
    let mut segments = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i + 1 < runs.len() {
        let (z, o) = (runs[i], runs[i + 1]);
        if z.0 == 0 && z.2 >= tau && o.2 >= tau {
            segments.push(&trace[start..z.1]);
            start = o.1 + o.2;
            i += 2;
        } else {
            i += 1;
        }
    }
    segments.push(&trace[start..]);
    segments
}

fn checksum(bits: &[u8]) -> Vec<u8> {
    let mut bytes = vec![0u8; bits.len().div_ceil(8)];
    for (i, &b) in bits.iter().enumerate() {
        bytes[i / 8] |= b << (7 - i % 8);
    }
    let c = CRC8.checksum(&bytes);
    (0..CHECKSUM_BITS).map(|i| (c >> (7 - i)) & 1).collect()
}

fn with_checksum(data: &[u8]) -> Vec<u8> {
    let mut out = data.to_vec();
    out.extend(checksum(data));
    out
}

fn xor_all<'a>(blocks: impl Iterator<Item = &'a [u8]>, len: usize) -> Vec<u8> {
    let mut acc = vec![0u8; len];
    for b in blocks {
        for (a, &x) in acc.iter_mut().zip(b) {
            *a ^= x;
        }
    }
    acc
}
