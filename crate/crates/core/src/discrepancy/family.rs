use std::sync::atomic::{AtomicI64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::PrimeField;
use crate::error::{invalid, Error, Result};

pub const FAMILY_SCHEMA_VERSION: u32 = 1;
/// Largest ground set accepted by [`min_discrepancy_bruteforce`].
pub const BRUTE_FORCE_MAX_GROUND: usize = 24;

/// A family of subsets of `[n] = {0, …, n−1}`; sets are sorted and distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    n: usize,
    sets: Vec<Vec<usize>>,
}

impl SetFamily {
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let mut normalized = Vec::with_capacity(sets.len());
        for mut s in sets {
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return invalid(format!("set {s:?} repeats an element"));
            }
            if s.last().is_some_and(|&x| x >= n) {
                return invalid(format!("set {s:?} leaves the ground set [0, {n})"));
            }
            normalized.push(s);
        }
        let mut sorted = normalized.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return invalid(format!("set {:?} occurs twice", w[0]));
        }
        Ok(SetFamily { n, sets: normalized })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// `Some(k)` when every set has size `k`.
    pub fn regularity(&self) -> Option<usize> {
        let k = self.sets.first()?.len();
        self.sets.iter().all(|s| s.len() == k).then_some(k)
    }
}

/// A ±1 labeling of the ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling(Vec<i8>);

impl Labeling {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if values.iter().any(|&v| v != 1 && v != -1) {
            return invalid("labels must be +1 or -1");
        }
        Ok(Labeling(values))
    }

    pub fn values(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn check_params(k: usize, q: u64, t: usize) -> Result<PrimeField> {
    let field = PrimeField::new(q)?;
    if !(1 <= t && t <= k && k as u64 <= q) {
        return invalid(format!("need 1 <= t <= k <= q, got k={k} q={q} t={t}"));
    }
    Ok(field)
}

/// σ(a, b) = q·M(a) + M(b) for `a ∈ 𝒜 = {a : M(a) < k}`.
pub fn point_index(field: &PrimeField, k: usize, a: u64, b: u64) -> Result<usize> {
    let q = field.p();
    if a >= q || field.m_index(a) >= k || b >= q {
        return invalid(format!("({a}, {b}) is not a point of 𝒜×𝔽_{q} for k={k}"));
    }
    Ok(q as usize * field.m_index(a) + field.m_index(b))
}

/// The q^t sets `A_f = {(a, f(a)) : a ∈ 𝒜}` over polynomials of degree ≤ t−1,
/// as σ-indexed subsets of `[kq]`. Polynomial `i` has coefficients equal to
/// the base-q digits of `i`, constant term first.
pub fn babai_frankl_family(k: usize, q: u64, t: usize) -> Result<SetFamily> {
    let field = check_params(k, q, t)?;
    let count = (q as usize).checked_pow(t as u32).filter(|&c| c <= 1 << 24);
    let Some(count) = count else {
        return Err(Error::Resource(format!("q^t = {q}^{t} sets is too many")));
    };
    let domain: Vec<u64> = (0..k).map(|m| field.element(m)).collect();
    let sets = (0..count)
        .map(|i| {
            let coeffs: Vec<u64> = (0..t).map(|j| (i / (q as usize).pow(j as u32)) as u64 % q).collect();
            domain.iter().map(|&a| point_index(&field, k, a, field.eval(&coeffs, a)).unwrap()).collect()
        })
        .collect();
    SetFamily::new(k * q as usize, sets)
}

/// Labels σ < threshold with −1 and the rest +1; threshold `qk/2` for even
/// `k` and `q·⌈k/2⌉` for odd `k`.
pub fn balanced_labeling(k: usize, q: u64) -> Result<Labeling> {
    check_params(k, q, 1)?;
    let threshold = q as usize * k.div_ceil(2);
    Labeling::new((0..k * q as usize).map(|s| if s < threshold { -1 } else { 1 }).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub max: u64,
    pub per_set: Vec<i64>,
}

pub fn discrepancy(family: &SetFamily, labeling: &Labeling) -> Result<Discrepancy> {
    if labeling.len() != family.ground_size() {
        return invalid(format!("labeling covers {} points, ground set has {}", labeling.len(), family.ground_size()));
    }
    let per_set: Vec<i64> =
        family.sets().iter().map(|s| s.iter().map(|&i| labeling.values()[i] as i64).sum()).collect();
    let max = per_set.iter().map(|s| s.unsigned_abs()).max().unwrap_or(0);
    Ok(Discrepancy { max, per_set })
}

/// Exact `min_L max_j |Σ_{i∈F_j} L(i)|` by exhaustion. The first point is
/// fixed to +1 (negating a labeling keeps every |sum|), the search stops once
/// the parity lower bound is met.
pub fn min_discrepancy_bruteforce(family: &SetFamily) -> Result<u64> {
    let n = family.ground_size();
    if n > BRUTE_FORCE_MAX_GROUND {
        return Err(Error::Resource(format!("ground set of {n} exceeds the brute-force limit {BRUTE_FORCE_MAX_GROUND}")));
    }
    if n == 0 || family.is_empty() {
        return Ok(0);
    }
    let masks: Vec<(u32, i64)> =
        family.sets().iter().map(|s| (s.iter().fold(0u32, |m, &i| m | 1 << i), s.len() as i64)).collect();
    let lower = masks.iter().any(|&(_, len)| len % 2 == 1) as i64;
    let evaluate = |positive: u32| -> i64 {
        masks.iter().map(|&(m, len)| (2 * (m & positive).count_ones() as i64 - len).abs()).max().unwrap()
    };
    let best = AtomicI64::new(i64::MAX);
    let free = n - 1;
    let prefix_bits = free.min(8);
    let suffix_bits = free - prefix_bits;
    (0u32..1 << prefix_bits).into_par_iter().for_each(|prefix| {
        for suffix in 0u32..1 << suffix_bits {
            if best.load(Ordering::Relaxed) <= lower {
                return;
            }
            let positive = 1 | (prefix << 1) | (suffix << (1 + prefix_bits));
            best.fetch_min(evaluate(positive), Ordering::Relaxed);
        }
    });
    Ok(best.into_inner() as u64)
}

/// Pairwise intersection check. `Err((i, j))` names the first pair (in
/// lexicographic order) with `|F_i ∩ F_j| ≥ t`.
pub fn verify_t_bounded(sets: &[Vec<usize>], t: usize) -> std::result::Result<(), (usize, usize)> {
    let sorted: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s
        })
        .collect();
    let violation = (0..sorted.len())
        .into_par_iter()
        .filter_map(|i| (i + 1..sorted.len()).find(|&j| intersection_size(&sorted[i], &sorted[j]) >= t).map(|j| (i, j)))
        .min();
    match violation {
        Some(pair) => Err(pair),
        None => Ok(()),
    }
}

pub(crate) fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// On-disk family: σ-indexed sets plus a labeling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub schema_version: u32,
    pub n: usize,
    pub k: usize,
    pub q: u64,
    pub t: usize,
    pub sets: Vec<Vec<usize>>,
    pub labeling: Vec<i8>,
}

impl FamilyFile {
    pub fn new(k: usize, q: u64, t: usize, family: &SetFamily, labeling: &Labeling) -> Self {
        FamilyFile {
            schema_version: FAMILY_SCHEMA_VERSION,
            n: family.ground_size(),
            k,
            q,
            t,
            sets: family.sets().to_vec(),
            labeling: labeling.values().to_vec(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: FamilyFile = serde_json::from_str(text)?;
        if file.schema_version != FAMILY_SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported family schema version {}", file.schema_version)));
        }
        if file.labeling.len() != file.n {
            return Err(Error::Parse(format!("labeling has {} entries for n = {}", file.labeling.len(), file.n)));
        }
        Ok(file)
    }

    pub fn family(&self) -> Result<SetFamily> {
        SetFamily::new(self.n, self.sets.clone())
    }

    pub fn labeling(&self) -> Result<Labeling> {
        Labeling::new(self.labeling.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pairs(n: usize) -> SetFamily {
        let sets = (0..n).flat_map(|i| (i + 1..n).map(move |j| vec![i, j])).collect();
        SetFamily::new(n, sets).unwrap()
    }

    #[test]
    fn k2_q3_t1_rows() {
        // 𝒜 = {0, 1}; σ(0, c) = M(c), σ(1, c) = 3 + M(c); constants c = 0, 1, 2
        // have M(c) = 0, 1, 2 for ξ = 2.
        let fam = babai_frankl_family(2, 3, 1).unwrap();
        assert_eq!(fam.sets(), &[vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert!(verify_t_bounded(fam.sets(), 1).is_ok());
    }

    #[test]
    fn point_index_examples() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(point_index(&f, 2, 0, 0).unwrap(), 0);
        assert_eq!(point_index(&f, 2, 1, 2).unwrap(), 5);
        assert!(point_index(&f, 2, 2, 0).is_err());
        let f = PrimeField::new(7).unwrap();
        let mut all: Vec<usize> = (0..7)
            .filter(|&a| f.m_index(a) < 5)
            .flat_map(|a| (0..7).map(move |b| (a, b)))
            .map(|(a, b)| point_index(&f, 5, a, b).unwrap())
            .collect();
        all.sort();
        assert_eq!(all, (0..35).collect::<Vec<_>>());
    }

    #[test]
    fn k_equals_q_t1_partitions_rows() {
        for q in [2u64, 3, 5, 7] {
            let fam = babai_frankl_family(q as usize, q, 1).unwrap();
            let mut seen: Vec<usize> = fam.sets().concat();
            seen.sort();
            assert_eq!(seen, (0..(q * q) as usize).collect::<Vec<_>>());
        }
    }

    #[test]
    fn k3_q5_t2_intersections() {
        let fam = babai_frankl_family(3, 5, 2).unwrap();
        assert_eq!((fam.len(), fam.regularity()), (25, Some(3)));
        let max = (0..25)
            .flat_map(|i| (i + 1..25).map(move |j| (i, j)))
            .map(|(i, j)| intersection_size(&fam.sets()[i], &fam.sets()[j]))
            .max();
        assert_eq!(max, Some(1));
    }

    #[test]
    fn labeling_examples() {
        let lab = balanced_labeling(2, 3).unwrap();
        assert_eq!(lab.values(), &[-1, -1, -1, 1, 1, 1]);
        let fam = babai_frankl_family(2, 3, 1).unwrap();
        assert_eq!(discrepancy(&fam, &lab).unwrap(), Discrepancy { max: 0, per_set: vec![0; 3] });
        let fam = babai_frankl_family(3, 5, 2).unwrap();
        let d = discrepancy(&fam, &balanced_labeling(3, 5).unwrap()).unwrap();
        assert!(d.per_set.iter().all(|s| s.abs() == 1));
    }

    #[test]
    fn discrepancy_small_cases() {
        let single = SetFamily::new(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(discrepancy(&single, &Labeling::new(vec![1, -1]).unwrap()).unwrap().max, 0);
        let pairs = all_pairs(3);
        for bits in 0..8 {
            let lab = Labeling::new((0..3).map(|i| if bits >> i & 1 == 1 { 1 } else { -1 }).collect()).unwrap();
            assert!(discrepancy(&pairs, &lab).unwrap().max >= 2);
        }
        assert!(discrepancy(&pairs, &Labeling::new(vec![1, 1]).unwrap()).is_err());
        assert!(Labeling::new(vec![0]).is_err());
    }

    #[test]
    fn brute_force_oracle() {
        assert_eq!(min_discrepancy_bruteforce(&SetFamily::new(2, vec![vec![0, 1]]).unwrap()).unwrap(), 0);
        assert_eq!(min_discrepancy_bruteforce(&all_pairs(3)).unwrap(), 2);
        assert_eq!(min_discrepancy_bruteforce(&babai_frankl_family(2, 3, 1).unwrap()).unwrap(), 0);
        assert_eq!(min_discrepancy_bruteforce(&babai_frankl_family(3, 5, 2).unwrap()).unwrap(), 1);
        assert!(matches!(min_discrepancy_bruteforce(&all_pairs(25)), Err(Error::Resource(_))));
    }

    #[test]
    fn t_bounded_witness() {
        assert!(verify_t_bounded(&[vec![0], vec![1]], 1).is_ok());
        assert_eq!(verify_t_bounded(&[vec![0, 1], vec![2, 3], vec![1, 0]], 2), Err((0, 2)));
        let fam = babai_frankl_family(4, 5, 3).unwrap();
        assert!(verify_t_bounded(fam.sets(), 3).is_ok());
        assert!(verify_t_bounded(fam.sets(), 2).is_err());
    }

    #[test]
    fn family_validation() {
        assert!(SetFamily::new(3, vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(SetFamily::new(3, vec![vec![0, 3]]).is_err());
        assert!(SetFamily::new(3, vec![vec![1, 1]]).is_err());
        assert!(babai_frankl_family(4, 3, 2).is_err());
        assert!(babai_frankl_family(2, 4, 1).is_err());
        assert!(babai_frankl_family(2, 3, 0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let fam = babai_frankl_family(2, 5, 2).unwrap();
        let file = FamilyFile::new(2, 5, 2, &fam, &balanced_labeling(2, 5).unwrap());
        let back = FamilyFile::from_json(&file.to_json().unwrap()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.family().unwrap(), fam);
        let bad = file.to_json().unwrap().replace("\"schema_version\": 1", "\"schema_version\": 9");
        assert!(FamilyFile::from_json(&bad).is_err());
    }
}
