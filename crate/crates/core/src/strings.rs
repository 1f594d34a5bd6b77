//! Strings over small alphabets, substring spectra and ℓ-mer profile vectors.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Channel alphabet. DNA letters are ordered A < C < G < T and map to 0..=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Alphabet {
    Binary,
    Dna,
}

const DNA_LETTERS: [char; 4] = ['A', 'C', 'G', 'T'];

impl Alphabet {
    pub fn from_size(q: usize) -> Result<Self> {
        match q {
            2 => Ok(Alphabet::Binary),
            4 => Ok(Alphabet::Dna),
            _ => invalid(format!("alphabet size must be 2 or 4, got {q}")),
        }
    }

    pub fn size(self) -> usize {
        match self {
            Alphabet::Binary => 2,
            Alphabet::Dna => 4,
        }
    }

    pub fn letter(self, symbol: u8) -> char {
        match self {
            Alphabet::Binary => (b'0' + symbol) as char,
            Alphabet::Dna => DNA_LETTERS[symbol as usize],
        }
    }

    pub fn symbol(self, letter: char) -> Option<u8> {
        match (self, letter) {
            (Alphabet::Binary, '0') => Some(0),
            (Alphabet::Binary, '1') => Some(1),
            (Alphabet::Dna, c) => DNA_LETTERS.iter().position(|&l| l == c).map(|p| p as u8),
            _ => None,
        }
    }

    /// Infers the alphabet of a text line: all `0`/`1` is binary, all `ACGT` is DNA.
    pub fn detect(text: &str) -> Option<Self> {
        if !text.is_empty() && text.chars().all(|c| c == '0' || c == '1') {
            Some(Alphabet::Binary)
        } else if !text.is_empty() && text.chars().all(|c| DNA_LETTERS.contains(&c)) {
            Some(Alphabet::Dna)
        } else {
            None
        }
    }
}

/// A nonempty string over an [`Alphabet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QaryString {
    alphabet: Alphabet,
    symbols: Vec<u8>,
}

impl QaryString {
    pub fn new(alphabet: Alphabet, symbols: Vec<u8>) -> Result<Self> {
        if symbols.is_empty() {
            return invalid("strings must have length at least 1");
        }
        if let Some(&bad) = symbols.iter().find(|&&s| s as usize >= alphabet.size()) {
            return invalid(format!("symbol {bad} outside alphabet of size {}", alphabet.size()));
        }
        Ok(QaryString { alphabet, symbols })
    }

    pub fn binary(bits: &[u8]) -> Result<Self> {
        Self::new(Alphabet::Binary, bits.to_vec())
    }

    pub fn parse_as(alphabet: Alphabet, text: &str) -> Result<Self> {
        let symbols = text
            .chars()
            .map(|c| {
                alphabet
                    .symbol(c)
                    .ok_or_else(|| Error::Parse(format!("character {c:?} is not in the {alphabet:?} alphabet")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, symbols)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn q(&self) -> usize {
        self.alphabet.size()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }
}

impl std::str::FromStr for QaryString {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let alphabet = Alphabet::detect(text)
            .ok_or_else(|| Error::Parse(format!("{text:?} is neither a binary nor a DNA string")))?;
        Self::parse_as(alphabet, text)
    }
}

impl fmt::Display for QaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            write!(f, "{}", self.alphabet.letter(s))?;
        }
        Ok(())
    }
}

/// Parses the one-string-per-line text format. Blank lines and lines starting
/// with `#` are skipped; every string in a file must use the same alphabet.
pub fn parse_strings(text: &str) -> Result<Vec<QaryString>> {
    let mut alphabet = None;
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let detected = Alphabet::detect(line)
            .ok_or_else(|| Error::Parse(format!("line {}: {line:?} is not a binary or DNA string", lineno + 1)))?;
        match alphabet {
            None => alphabet = Some(detected),
            Some(a) if a != detected => {
                return Err(Error::Parse(format!(
                    "line {}: mixed alphabets ({a:?} then {detected:?})",
                    lineno + 1
                )))
            }
            _ => {}
        }
        out.push(QaryString::parse_as(detected, line)?);
    }
    Ok(out)
}

/// Base-q value of an ℓ-mer; this is its lexicographic index.
pub fn kmer_index(kmer: &[u8], q: usize) -> usize {
    kmer.iter().fold(0, |acc, &s| acc * q + s as usize)
}

/// Inverse of [`kmer_index`].
pub fn kmer_symbols(mut index: usize, q: usize, len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    for slot in out.iter_mut().rev() {
        *slot = (index % q) as u8;
        index /= q;
    }
    out
}

pub fn format_kmer(kmer: &[u8], alphabet: Alphabet) -> String {
    kmer.iter().map(|&s| alphabet.letter(s)).collect()
}

/// Counts of every ℓ-mer, indexed lexicographically.
///
/// `source_len` is stored separately from the counts so that profiles that
/// lost reads (sum below `n - ℓ + 1`) still remember the length they came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProfileVector {
    q: usize,
    ell: usize,
    source_len: usize,
    counts: Vec<u32>,
}

impl ProfileVector {
    pub fn from_counts(q: usize, ell: usize, source_len: usize, counts: Vec<u32>) -> Result<Self> {
        if q < 2 || ell == 0 {
            return invalid(format!("profile dimensions q={q}, ell={ell} are invalid"));
        }
        let dim = q.checked_pow(ell as u32).ok_or_else(|| Error::Resource(format!("{q}^{ell} overflows")))?;
        if counts.len() != dim {
            return invalid(format!("profile for q={q}, ell={ell} needs {dim} entries, got {}", counts.len()));
        }
        Ok(ProfileVector { q, ell, source_len, counts })
    }

    pub fn zeros(q: usize, ell: usize, source_len: usize) -> Result<Self> {
        let dim = q.checked_pow(ell as u32).ok_or_else(|| Error::Resource(format!("{q}^{ell} overflows")))?;
        Self::from_counts(q, ell, source_len, vec![0; dim])
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn source_len(&self) -> usize {
        self.source_len
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    pub(crate) fn increment(&mut self, index: usize) {
        self.counts[index] += 1;
    }
}

/// The ℓ-mer profile of `x`.
pub fn profile(x: &QaryString, ell: usize) -> Result<ProfileVector> {
    let n = x.len();
    if ell == 0 || ell > n {
        return invalid(format!("window {ell} must lie in 1..={n}"));
    }
    let q = x.q();
    let mut p = ProfileVector::zeros(q, ell, n)?;
    let modulus = q.pow(ell as u32 - 1);
    let mut idx = kmer_index(&x.symbols()[..ell - 1], q);
    for &s in &x.symbols()[ell - 1..] {
        idx = (idx % modulus) * q + s as usize;
        p.increment(idx);
    }
    Ok(p)
}

/// Length-L substrings of a string, as a set or with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstringSpectrum {
    window: usize,
    with_multiplicity: bool,
    entries: BTreeMap<Vec<u8>, usize>,
}

impl SubstringSpectrum {
    pub fn window(&self) -> usize {
        self.window
    }

    pub fn with_multiplicity(&self) -> bool {
        self.with_multiplicity
    }

    /// Distinct substrings in lexicographic order.
    pub fn distinct(&self) -> impl Iterator<Item = &[u8]> {
        self.entries.keys().map(Vec::as_slice)
    }

    pub fn multiplicity(&self, kmer: &[u8]) -> usize {
        self.entries.get(kmer).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<Vec<u8>, usize> {
        &self.entries
    }

    /// Number of entries, counting multiplicity.
    pub fn len(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, kmer: &[u8]) -> bool {
        self.entries.contains_key(kmer)
    }

    /// The set variant (support) of this spectrum.
    pub fn support(&self) -> SubstringSpectrum {
        SubstringSpectrum {
            window: self.window,
            with_multiplicity: false,
            entries: self.entries.keys().map(|k| (k.clone(), 1)).collect(),
        }
    }

    pub fn from_set<I>(window: usize, kmers: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<u8>>,
    {
        let mut entries = BTreeMap::new();
        for k in kmers {
            if k.len() != window {
                return invalid(format!("spectrum entry of length {} in a window-{window} spectrum", k.len()));
            }
            entries.insert(k, 1);
        }
        Ok(SubstringSpectrum { window, with_multiplicity: false, entries })
    }
}

pub fn substring_spectrum(x: &QaryString, window: usize, with_multiplicity: bool) -> Result<SubstringSpectrum> {
    let n = x.len();
    if window == 0 || window > n {
        return invalid(format!("window {window} must lie in 1..={n}"));
    }
    let mut entries = BTreeMap::new();
    for w in x.symbols().windows(window) {
        let e = entries.entry(w.to_vec()).or_insert(0);
        if with_multiplicity {
            *e += 1;
        } else {
            *e = 1;
        }
    }
    Ok(SubstringSpectrum { window, with_multiplicity, entries })
}

/// `Σ_i max(u_i - v_i, 0)`.
pub fn one_sided_distance(u: &ProfileVector, v: &ProfileVector) -> Result<u64> {
    check_same_shape(u, v)?;
    Ok(u.counts
        .iter()
        .zip(&v.counts)
        .map(|(&a, &b)| a.saturating_sub(b) as u64)
        .sum())
}

/// Asymmetric profile distance: the larger of the two one-sided distances.
pub fn asymmetric_distance(u: &ProfileVector, v: &ProfileVector) -> Result<u64> {
    check_same_shape(u, v)?;
    Ok(asymmetric_distance_counts(&u.counts, &v.counts))
}

pub(crate) fn asymmetric_distance_counts(u: &[u32], v: &[u32]) -> u64 {
    let (mut up, mut down) = (0u64, 0u64);
    for (&a, &b) in u.iter().zip(v) {
        if a > b {
            up += (a - b) as u64;
        } else {
            down += (b - a) as u64;
        }
    }
    up.max(down)
}

fn check_same_shape(u: &ProfileVector, v: &ProfileVector) -> Result<()> {
    if u.q != v.q || u.ell != v.ell {
        return invalid(format!(
            "profile dimensions differ: (q={}, ell={}) vs (q={}, ell={})",
            u.q, u.ell, v.q, v.ell
        ));
    }
    Ok(())
}

/// Smallest ρ ≥ 1 with `x[i] == x[i + ρ]` for every valid i.
pub fn period(x: &QaryString) -> usize {
    period_of(x.symbols())
}

pub(crate) fn period_of(s: &[u8]) -> usize {
    // Prefix-function: the smallest period is n minus the longest proper border.
    let n = s.len();
    let mut pi = vec![0usize; n];
    for i in 1..n {
        let mut k = pi[i - 1];
        while k > 0 && s[i] != s[k] {
            k = pi[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        pi[i] = k;
    }
    n - pi.last().copied().unwrap_or(0)
}
