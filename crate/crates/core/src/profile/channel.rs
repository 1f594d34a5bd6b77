//! The shotgun-sequencing storage channel and minimum-distance profile decoding.
//!
//! A codestring suffers `s` synthesis substitutions, is fragmented into all of
//! its ℓ-mers, loses `c` of them to coverage gaps, and `o` surviving reads get a
//! single sequencing substitution each. The decoder sees only the read multiset.

use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::codebook::ProfileCodebook;
use crate::error::{invalid, Error, Result};
use crate::rng;
use crate::strings::{asymmetric_distance, format_kmer, kmer_index, Alphabet, ProfileVector, QaryString};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ErrorCounts {
    pub s: usize,
    pub c: usize,
    pub o: usize,
}

impl ErrorCounts {
    pub fn new(s: usize, c: usize, o: usize) -> Self {
        ErrorCounts { s, c, o }
    }

    /// `2s + c + o`.
    pub fn weight(&self) -> usize {
        2 * self.s + self.c + self.o
    }

    /// Every pattern with `2s + c + o <= budget`, in (s, c, o) order.
    pub fn within(budget: usize) -> Vec<ErrorCounts> {
        let mut out = Vec::new();
        for s in 0..=budget / 2 {
            for c in 0..=budget - 2 * s {
                for o in 0..=budget - 2 * s - c {
                    out.push(ErrorCounts { s, c, o });
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelReadout {
    alphabet: Alphabet,
    ell: usize,
    source_len: usize,
    reads: Vec<Vec<u8>>,
    applied: ErrorCounts,
}

pub fn channel_simulate<R: Rng + ?Sized>(
    x: &QaryString,
    ell: usize,
    errors: ErrorCounts,
    rng: &mut R,
) -> Result<ChannelReadout> {
    let n = x.len();
    if ell == 0 || ell > n {
        return invalid(format!("window {ell} must lie in 1..={n}"));
    }
    let n_reads = n - ell + 1;
    if errors.s > n || errors.c > n_reads || errors.o > n_reads - errors.c {
        return invalid(format!("error counts {errors:?} infeasible for n={n}, ell={ell}"));
    }
    let q = x.q();
    let mut written = x.symbols().to_vec();
    for pos in sample(rng, n, errors.s).into_iter() {
        written[pos] = substitute(written[pos], q, rng);
    }
    let mut reads: Vec<Vec<u8>> = written.windows(ell).map(<[u8]>::to_vec).collect();
    let mut dropped = sample(rng, n_reads, errors.c).into_vec();
    dropped.sort_unstable_by(|a, b| b.cmp(a));
    for i in dropped {
        reads.remove(i);
    }
    for i in sample(rng, reads.len(), errors.o).into_iter() {
        let pos = rng.gen_range(0..ell);
        reads[i][pos] = substitute(reads[i][pos], q, rng);
    }
    Ok(ChannelReadout { alphabet: x.alphabet(), ell, source_len: n, reads, applied: errors })
}

fn substitute<R: Rng + ?Sized>(symbol: u8, q: usize, rng: &mut R) -> u8 {
    ((symbol as usize + rng.gen_range(1..q)) % q) as u8
}

impl ChannelReadout {
    pub fn new(alphabet: Alphabet, ell: usize, source_len: usize, reads: Vec<Vec<u8>>) -> Result<Self> {
        if ell == 0 || ell > source_len {
            return invalid(format!("window {ell} must lie in 1..={source_len}"));
        }
        if reads.len() > source_len - ell + 1 {
            return invalid(format!("{} reads exceed the {} ℓ-mers of a length-{source_len} string", reads.len(), source_len - ell + 1));
        }
        for r in &reads {
            if r.len() != ell || r.iter().any(|&s| s as usize >= alphabet.size()) {
                return invalid(format!("read {r:?} is not an ℓ-mer over {alphabet:?}"));
            }
        }
        let applied = ErrorCounts { c: source_len - ell + 1 - reads.len(), ..Default::default() };
        Ok(ChannelReadout { alphabet, ell, source_len, reads, applied })
    }

    pub fn reads(&self) -> &[Vec<u8>] {
        &self.reads
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn source_len(&self) -> usize {
        self.source_len
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// Error counts applied by the simulator (for parsed dumps, only the
    /// coverage loss is known).
    pub fn applied(&self) -> ErrorCounts {
        self.applied
    }

    /// Empirical profile of the reads.
    pub fn profile(&self) -> ProfileVector {
        let q = self.alphabet.size();
        let mut p = ProfileVector::zeros(q, self.ell, self.source_len).expect("dimensions checked");
        for r in &self.reads {
            p.increment(kmer_index(r, q));
        }
        p
    }

    /// Text dump: a `#` header line with the geometry, then one read per line.
    pub fn to_dump(&self) -> String {
        let a = self.applied;
        let mut out = format!("# readout ell={} n={} s={} c={} o={}\n", self.ell, self.source_len, a.s, a.c, a.o);
        for r in &self.reads {
            let _ = writeln!(out, "{}", format_kmer(r, self.alphabet));
        }
        out
    }

    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut ell = None;
        let mut n = None;
        let mut reads = Vec::new();
        let mut alphabet = None;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(header) = line.strip_prefix('#') {
                for field in header.split_whitespace() {
                    if let Some(v) = field.strip_prefix("ell=") {
                        ell = Some(v.parse().map_err(|_| Error::Parse(format!("bad ell {v:?}")))?);
                    } else if let Some(v) = field.strip_prefix("n=") {
                        n = Some(v.parse().map_err(|_| Error::Parse(format!("bad n {v:?}")))?);
                    }
                }
                continue;
            }
            let read: QaryString = line.parse()?;
            match alphabet {
                None => alphabet = Some(read.alphabet()),
                Some(a) if a != read.alphabet() => return Err(Error::Parse("mixed alphabets in readout".into())),
                _ => {}
            }
            reads.push(read.into_symbols());
        }
        let ell = ell.ok_or_else(|| Error::Parse("readout header lacks ell=".into()))?;
        let n = n.ok_or_else(|| Error::Parse("readout header lacks n=".into()))?;
        Self::new(alphabet.unwrap_or(Alphabet::Binary), ell, n, reads)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub index: usize,
    pub string: QaryString,
    pub distance: u64,
}

/// The codeword whose profile is nearest in asymmetric distance to the
/// readout profile; ties go to the lexicographically smallest codestring.
pub fn decode_profile(readout: &ChannelReadout, codebook: &ProfileCodebook) -> Result<Decoded> {
    if codebook.is_empty() {
        return Err(Error::DecodeFailure("codebook is empty".into()));
    }
    let params = codebook.params();
    if readout.ell != params.ell() || readout.alphabet.size() != params.q() {
        return invalid(format!(
            "readout geometry (q={}, ell={}) does not match codebook (q={}, ell={})",
            readout.alphabet.size(),
            readout.ell,
            params.q(),
            params.ell()
        ));
    }
    let observed = readout.profile();
    let mut best: Option<Decoded> = None;
    for (i, entry) in codebook.entries().iter().enumerate() {
        let distance = asymmetric_distance(&observed, codebook.full_profile(i))?;
        let better = match &best {
            None => true,
            Some(b) => distance < b.distance || (distance == b.distance && entry.string < b.string),
        };
        if better {
            best = Some(Decoded { index: i, string: entry.string.clone(), distance });
        }
    }
    Ok(best.expect("nonempty codebook"))
}

/// One failed Monte-Carlo decoding, kept for inspection.
#[derive(Debug, Clone, Serialize)]
pub struct DecodingFailure {
    pub trial: u64,
    pub sent: String,
    pub decoded: String,
    pub errors: ErrorCounts,
    pub reads: Vec<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct DecodingTally {
    pub trials: u64,
    pub successes: u64,
    /// Per-pattern (pattern, trials, successes), sorted by pattern.
    pub by_pattern: Vec<(ErrorCounts, u64, u64)>,
    pub failures: Vec<DecodingFailure>,
}

impl DecodingTally {
    pub fn success_rate(&self) -> f64 {
        if self.trials == 0 {
            return 1.0;
        }
        self.successes as f64 / self.trials as f64
    }

    /// Tally restricted to patterns satisfying `keep`.
    pub fn restricted(&self, keep: impl Fn(&ErrorCounts) -> bool) -> (u64, u64) {
        self.by_pattern
            .iter()
            .filter(|(p, _, _)| keep(p))
            .fold((0, 0), |(t, s), (_, pt, ps)| (t + pt, s + ps))
    }
}

/// Monte-Carlo decoding: trial `i` uses stream `i` of `seed`, picks a codeword
/// uniformly, and a pattern uniformly from `patterns`.
pub fn decoding_trials(codebook: &ProfileCodebook, patterns: &[ErrorCounts], trials: u64, seed: u64) -> Result<DecodingTally> {
    if codebook.is_empty() || patterns.is_empty() {
        return invalid("decoding trials need a nonempty codebook and pattern list");
    }
    let ell = codebook.params().ell();
    let outcomes: Vec<Result<(ErrorCounts, Option<DecodingFailure>)>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = rng::stream(seed, trial);
            let sent = &codebook.entries()[rng.gen_range(0..codebook.len())].string;
            let pattern = patterns[rng.gen_range(0..patterns.len())];
            let readout = channel_simulate(sent, ell, pattern, &mut rng)?;
            let decoded = decode_profile(&readout, codebook)?;
            let failure = (decoded.string != *sent).then(|| DecodingFailure {
                trial,
                sent: sent.to_string(),
                decoded: decoded.string.to_string(),
                errors: pattern,
                reads: readout.reads().iter().map(|r| format_kmer(r, readout.alphabet)).collect(),
            });
            Ok((pattern, failure))
        })
        .collect();
    let mut tally = DecodingTally::default();
    let mut per: std::collections::BTreeMap<ErrorCounts, (u64, u64)> = Default::default();
    for o in outcomes {
        let (pattern, failure) = o?;
        let e = per.entry(pattern).or_default();
        e.0 += 1;
        tally.trials += 1;
        match failure {
            None => {
                e.1 += 1;
                tally.successes += 1;
            }
            Some(f) => tally.failures.push(f),
        }
    }
    tally.by_pattern = per.into_iter().map(|(p, (t, s))| (p, t, s)).collect();
    Ok(tally)
}
