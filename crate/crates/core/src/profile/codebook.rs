//! Profile codebooks: Varshamov codewords that are also valid string profiles.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::debruijn::{is_valid_profile, profile_to_string, AllowedKmerSet};
use super::varshamov::{varshamov_enumerate, VarshamovCode};
use crate::error::{invalid, Error, Result};
use crate::strings::{
    asymmetric_distance_counts, format_kmer, kmer_symbols, profile, Alphabet, ProfileVector, QaryString,
};

pub const CODEBOOK_SCHEMA_VERSION: u32 = 1;

/// Construction parameters. `beta.len()` is the number of congruence rows d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodebookParams {
    pub n: usize,
    pub p: u64,
    pub beta: Vec<u64>,
    pub allowed: AllowedKmerSet,
}

impl CodebookParams {
    pub fn q(&self) -> usize {
        self.allowed.q()
    }

    pub fn ell(&self) -> usize {
        self.allowed.ell()
    }

    pub fn rows(&self) -> usize {
        self.beta.len()
    }

    /// Number of ℓ-mers in every codestring.
    pub fn total_weight(&self) -> Result<u32> {
        if self.n < self.ell() {
            return invalid(format!("length n={} is shorter than ell={}", self.n, self.ell()));
        }
        Ok((self.n - self.ell() + 1) as u32)
    }

    pub fn code(&self) -> Result<VarshamovCode> {
        VarshamovCode::new(self.allowed.len(), self.p, self.beta.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodebookEntry {
    /// Counts over the members of S, in lexicographic order.
    pub profile: Vec<u32>,
    pub string: QaryString,
}

#[derive(Debug, Clone)]
pub struct ProfileCodebook {
    params: CodebookParams,
    entries: Vec<CodebookEntry>,
    full_profiles: Vec<ProfileVector>,
    d_min: Option<u64>,
}

/// Embeds an S-indexed count vector into the full q^ℓ profile space.
pub fn embed_profile(allowed: &AllowedKmerSet, n: usize, restricted: &[u32]) -> Result<ProfileVector> {
    if restricted.len() != allowed.len() {
        return invalid(format!("{} counts for {} allowed ℓ-mers", restricted.len(), allowed.len()));
    }
    let mut full = ProfileVector::zeros(allowed.q(), allowed.ell(), n)?;
    let mut counts = full.counts().to_vec();
    for (&kmer, &c) in allowed.members().iter().zip(restricted) {
        counts[kmer] = c;
    }
    full = ProfileVector::from_counts(allowed.q(), allowed.ell(), n, counts)?;
    Ok(full)
}

/// Valid profiles among the Varshamov codewords, each with its canonical string.
pub fn build_profile_codebook(params: &CodebookParams) -> Result<ProfileCodebook> {
    let code = params.code()?;
    let weight = params.total_weight()?;
    let words = varshamov_enumerate(&code, weight);
    let candidates: Vec<Result<Option<(Vec<u32>, ProfileVector)>>> = words
        .into_par_iter()
        .map(|u| {
            let full = embed_profile(&params.allowed, params.n, &u)?;
            Ok(is_valid_profile(&full, params.n, false).then_some((u, full)))
        })
        .collect();
    let mut entries = Vec::new();
    let mut full_profiles = Vec::new();
    for c in candidates {
        if let Some((u, full)) = c? {
            let string = profile_to_string(&full, params.n)?;
            entries.push(CodebookEntry { profile: u, string });
            full_profiles.push(full);
        }
    }
    let d_min = min_pairwise_distance(&full_profiles);
    if let Some(d) = d_min {
        if d < code.designed_distance() {
            return Err(Error::Internal(format!(
                "codebook distance {d} below designed distance {}",
                code.designed_distance()
            )));
        }
    }
    Ok(ProfileCodebook { params: params.clone(), entries, full_profiles, d_min })
}

fn min_pairwise_distance(profiles: &[ProfileVector]) -> Option<u64> {
    (0..profiles.len())
        .into_par_iter()
        .filter_map(|i| {
            profiles[i + 1..]
                .iter()
                .map(|b| asymmetric_distance_counts(profiles[i].counts(), b.counts()))
                .min()
        })
        .min()
}

impl ProfileCodebook {
    pub fn params(&self) -> &CodebookParams {
        &self.params
    }

    pub fn entries(&self) -> &[CodebookEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Minimum pairwise asymmetric distance; `None` with fewer than two entries.
    pub fn d_min(&self) -> Option<u64> {
        self.d_min
    }

    pub fn full_profile(&self, index: usize) -> &ProfileVector {
        &self.full_profiles[index]
    }

    pub fn to_file(&self) -> CodebookFile {
        let alphabet = Alphabet::from_size(self.params.q()).expect("validated alphabet");
        CodebookFile {
            schema_version: CODEBOOK_SCHEMA_VERSION,
            parameters: CodebookFileParams {
                q: self.params.q(),
                n: self.params.n,
                ell: self.params.ell(),
                d: self.params.rows(),
                p: self.params.p,
                alphas: (1..=self.params.allowed.len() as u64).collect(),
                beta: self.params.beta.clone(),
                allowed: self
                    .params
                    .allowed
                    .members()
                    .iter()
                    .map(|&m| format_kmer(&kmer_symbols(m, self.params.q(), self.params.ell()), alphabet))
                    .collect(),
            },
            entries: self
                .entries
                .iter()
                .map(|e| CodebookFileEntry { profile: e.profile.clone(), string: e.string.to_string() })
                .collect(),
            d_min: self.d_min,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file())? + "\n")
    }

    /// Loads and re-validates a codebook document: every entry must be a valid
    /// profile in the Varshamov code whose string realises it, and `d_min` must
    /// match the recomputed value.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: CodebookFile = serde_json::from_str(text)?;
        if file.schema_version != CODEBOOK_SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported codebook schema_version {}", file.schema_version)));
        }
        let fp = &file.parameters;
        let alphabet = Alphabet::from_size(fp.q)?;
        let allowed = AllowedKmerSet::from_kmers(alphabet, &fp.allowed)?;
        if allowed.ell() != fp.ell || allowed.len() != fp.allowed.len() {
            return Err(Error::Parse("allowed ℓ-mers disagree with ell or contain duplicates".into()));
        }
        if fp.beta.len() != fp.d {
            return Err(Error::Parse(format!("beta has {} entries but d = {}", fp.beta.len(), fp.d)));
        }
        let params = CodebookParams { n: fp.n, p: fp.p, beta: fp.beta.clone(), allowed };
        let code = params.code()?;
        if fp.alphas != code.alphas() {
            return Err(Error::Parse("alphas must be 1..=N in allowed ℓ-mer order".into()));
        }
        let weight = params.total_weight()? as u64;
        let mut entries = Vec::with_capacity(file.entries.len());
        let mut full_profiles = Vec::with_capacity(file.entries.len());
        for (i, e) in file.entries.iter().enumerate() {
            let full = embed_profile(&params.allowed, params.n, &e.profile)?;
            if full.total() != weight || !code.contains(&e.profile) || !is_valid_profile(&full, params.n, false) {
                return Err(Error::Parse(format!("entry {i} is not a valid codeword")));
            }
            let string = QaryString::parse_as(alphabet, &e.string)?;
            if string.len() != params.n || profile(&string, params.ell())? != full {
                return Err(Error::Parse(format!("entry {i}: string does not match its profile")));
            }
            entries.push(CodebookEntry { profile: e.profile.clone(), string });
            full_profiles.push(full);
        }
        let d_min = min_pairwise_distance(&full_profiles);
        if d_min != file.d_min {
            return Err(Error::Parse(format!("recorded d_min {:?} differs from recomputed {d_min:?}", file.d_min)));
        }
        if d_min == Some(0) {
            return Err(Error::Parse("codebook contains duplicate profiles".into()));
        }
        Ok(ProfileCodebook { params, entries, full_profiles, d_min })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CodebookFile {
    pub schema_version: u32,
    pub parameters: CodebookFileParams,
    pub entries: Vec<CodebookFileEntry>,
    pub d_min: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CodebookFileParams {
    pub q: usize,
    pub n: usize,
    pub ell: usize,
    pub d: usize,
    pub p: u64,
    pub alphas: Vec<u64>,
    pub beta: Vec<u64>,
    pub allowed: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CodebookFileEntry {
    pub profile: Vec<u32>,
    pub string: String,
}

/// Codebook size for every syndrome β, and the largest one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaSweep {
    pub best_beta: Vec<u64>,
    pub best_size: usize,
    /// Sizes of all p^d syndromes, β in lexicographic order.
    pub sizes: BTreeMap<Vec<u64>, usize>,
}

/// Tallies valid profiles by Varshamov syndrome. Ties go to the
/// lexicographically smallest β.
pub fn sweep_beta(n: usize, p: u64, rows: usize, allowed: &AllowedKmerSet) -> Result<BetaSweep> {
    let unconstrained = CodebookParams { n, p, beta: vec![], allowed: allowed.clone() };
    let code = unconstrained.code()?;
    let probe = VarshamovCode::new(allowed.len(), p, vec![0; rows])?;
    let words = varshamov_enumerate(&code, unconstrained.total_weight()?);
    let syndromes: Vec<Result<Option<Vec<u64>>>> = words
        .par_iter()
        .map(|u| {
            let full = embed_profile(allowed, n, u)?;
            Ok(is_valid_profile(&full, n, false).then(|| probe.syndrome(u)))
        })
        .collect();
    let total = (p as usize)
        .checked_pow(rows as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| Error::Resource(format!("{p}^{rows} syndromes is too many to sweep")))?;
    let mut sizes: BTreeMap<Vec<u64>, usize> = (0..total)
        .map(|mut i| {
            let mut beta = vec![0u64; rows];
            for slot in beta.iter_mut().rev() {
                *slot = (i % p as usize) as u64;
                i /= p as usize;
            }
            (beta, 0)
        })
        .collect();
    for s in syndromes {
        if let Some(beta) = s? {
            *sizes.get_mut(&beta).expect("syndrome in range") += 1;
        }
    }
    let (best_beta, best_size) = sizes
        .iter()
        .fold((vec![0; rows], 0usize), |best, (b, &c)| if c > best.1 { (b.clone(), c) } else { best });
    let best_beta = if best_size == 0 { vec![0; rows] } else { best_beta };
    Ok(BetaSweep { best_beta, best_size, sizes })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_params() -> CodebookParams {
        CodebookParams {
            n: 8,
            p: 7,
            beta: vec![0, 0],
            allowed: AllowedKmerSet::from_kmers(Alphabet::Binary, &["001", "010", "011", "100", "101", "110"])
                .unwrap(),
        }
    }

    #[test]
    fn example_codebook() {
        let book = build_profile_codebook(&example_params()).unwrap();
        let got: Vec<(Vec<u32>, String)> =
            book.entries().iter().map(|e| (e.profile.clone(), e.string.to_string())).collect();
        assert_eq!(
            got,
            vec![
                (vec![0, 0, 2, 0, 2, 2], "01101101".to_string()),
                (vec![1, 1, 1, 1, 1, 1], "00101100".to_string()),
                (vec![2, 2, 0, 2, 0, 0], "00100100".to_string()),
            ]
        );
    }

    #[test]
    fn example_codebook_minimum_distance() {
        let book = build_profile_codebook(&example_params()).unwrap();
        // Pairwise: (2,2,0,2,0,0)-(1,1,1,1,1,1) = 3, (1,1,1,1,1,1)-(0,0,2,0,2,2) = 3,
        // (2,2,0,2,0,0)-(0,0,2,0,2,2) = 6.
        assert_eq!(book.d_min(), Some(3));
    }

    #[test]
    fn zero_rows_give_every_valid_profile() {
        let params = CodebookParams { n: 6, p: 5, beta: vec![], allowed: AllowedKmerSet::full(2, 2).unwrap() };
        let book = build_profile_codebook(&params).unwrap();
        let mut distinct = std::collections::HashSet::new();
        for v in 0..1u32 << 6 {
            let x = QaryString::binary(&(0..6).map(|i| ((v >> i) & 1) as u8).collect::<Vec<_>>()).unwrap();
            distinct.insert(profile(&x, 2).unwrap());
        }
        assert_eq!(book.len(), distinct.len());
        assert_eq!(book.d_min(), Some(1));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let book = build_profile_codebook(&example_params()).unwrap();
        let text = book.to_json().unwrap();
        let back = ProfileCodebook::from_json(&text).unwrap();
        assert_eq!(back.entries(), book.entries());
        assert_eq!(back.to_json().unwrap(), text);

        let mut file = book.to_file();
        file.entries[0].string = "01101100".into();
        assert!(ProfileCodebook::from_json(&serde_json::to_string(&file).unwrap()).is_err());
        let mut file = book.to_file();
        file.d_min = Some(4);
        assert!(ProfileCodebook::from_json(&serde_json::to_string(&file).unwrap()).is_err());
        let mut file = book.to_file();
        file.entries[1].profile = vec![2, 1, 1, 1, 1, 0];
        assert!(ProfileCodebook::from_json(&serde_json::to_string(&file).unwrap()).is_err());
    }

    #[test]
    fn beta_sweep_accounts_for_every_valid_profile() {
        let p = example_params();
        let sweep = sweep_beta(p.n, p.p, 2, &p.allowed).unwrap();
        assert_eq!(sweep.sizes.len(), 49);
        assert_eq!(sweep.sizes[&vec![0, 0]], 3);
        let unconstrained =
            build_profile_codebook(&CodebookParams { beta: vec![], ..p.clone() }).unwrap();
        assert_eq!(sweep.sizes.values().sum::<usize>(), unconstrained.len());
        assert_eq!(sweep.sizes[&sweep.best_beta], sweep.best_size);
        assert!(sweep.sizes.values().all(|&s| s <= sweep.best_size));
        // Pigeonhole bound.
        assert!(sweep.best_size * 49 >= unconstrained.len());
        let best = build_profile_codebook(&CodebookParams { beta: sweep.best_beta.clone(), ..p }).unwrap();
        assert_eq!(best.len(), sweep.best_size);
    }
}
