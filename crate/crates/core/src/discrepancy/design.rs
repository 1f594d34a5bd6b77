use std::collections::HashMap;

use super::family::{babai_frankl_family, Labeling};
use crate::error::{invalid, Error, Result};

/// Largest number of t-subsets [`verify_transversal_design`] will enumerate.
pub const TD_SUBSET_BUDGET: u64 = 1 << 24;

/// TD(t, k, v): `kv` points split into `k` groups of size `v` plus a list of
/// `k`-point blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalDesign {
    t: usize,
    k: usize,
    v: usize,
    groups: Vec<Vec<usize>>,
    blocks: Vec<Vec<usize>>,
}

impl TransversalDesign {
    pub fn new(t: usize, groups: Vec<Vec<usize>>, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let k = groups.len();
        let v = groups.first().map_or(0, Vec::len);
        if k == 0 || v == 0 || groups.iter().any(|g| g.len() != v) {
            return invalid("groups must be nonempty and of equal size");
        }
        let mut seen = vec![false; k * v];
        for &p in groups.iter().flatten() {
            if p >= k * v || std::mem::replace(&mut seen[p], true) {
                return invalid("groups must partition the points 0..kv");
            }
        }
        if t == 0 || t > k {
            return invalid(format!("strength t={t} must lie in 1..=k"));
        }
        let mut sorted_blocks = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            b.sort_unstable();
            b.dedup();
            if b.len() != k || b.last().is_some_and(|&p| p >= k * v) {
                return invalid(format!("block {b:?} is not a {k}-subset of the points"));
            }
            sorted_blocks.push(b);
        }
        let groups = groups
            .into_iter()
            .map(|mut g| {
                g.sort_unstable();
                g
            })
            .collect();
        Ok(TransversalDesign { t, k, v, groups, blocks: sorted_blocks })
    }

    /// Points `𝒜×𝔽_q` indexed by σ, groups are the columns `{a}×𝔽_q`,
    /// blocks are the sets `A_f`.
    pub fn from_babai_frankl(k: usize, q: u64, t: usize) -> Result<Self> {
        let family = babai_frankl_family(k, q, t)?;
        let q = q as usize;
        let groups = (0..k).map(|m| (m * q..(m + 1) * q).collect()).collect();
        Self::new(t, groups, family.sets().to_vec())
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn without_block(&self, index: usize) -> Self {
        let mut td = self.clone();
        td.blocks.remove(index);
        td
    }
}

/// The first t-subset (lexicographic order) that breaks the design property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TdViolation {
    pub subset: Vec<usize>,
    pub blocks_containing: usize,
    pub within_group: bool,
}

/// Exhaustive check: a t-subset meeting t distinct groups lies in exactly
/// one block, and any other t-subset lies in no block. For t = 1 every point
/// is transversal, so each lies in exactly one block.
pub fn verify_transversal_design(td: &TransversalDesign) -> Result<std::result::Result<(), TdViolation>> {
    let points = td.k * td.v;
    let total = binomial(points as u64, td.t as u64);
    if total > TD_SUBSET_BUDGET {
        return Err(Error::Resource(format!("C({points}, {}) = {total} subsets exceeds the budget", td.t)));
    }
    let mut group_of = vec![0; points];
    for (g, members) in td.groups.iter().enumerate() {
        for &p in members {
            group_of[p] = g;
        }
    }
    let mut coverage: HashMap<Vec<usize>, usize> = HashMap::new();
    for block in &td.blocks {
        for_each_subset(block, td.t, |s| *coverage.entry(s.to_vec()).or_default() += 1);
    }
    let all: Vec<usize> = (0..points).collect();
    let mut violation = None;
    for_each_subset(&all, td.t, |s| {
        if violation.is_some() {
            return;
        }
        let mut spanned: Vec<usize> = s.iter().map(|&p| group_of[p]).collect();
        spanned.sort_unstable();
        spanned.dedup();
        let within_group = spanned.len() == 1;
        let expected = usize::from(spanned.len() == td.t);
        let found = coverage.get(s).copied().unwrap_or(0);
        if found != expected {
            violation = Some(TdViolation { subset: s.to_vec(), blocks_containing: found, within_group });
        }
    });
    Ok(violation.map_or(Ok(()), Err))
}

/// New blocks made of the `k/2` smallest points of an all-positive group and
/// the `k/2` smallest points of an all-negative group, one per such pair.
pub fn augment_td(td: &TransversalDesign, labeling: &Labeling) -> Result<Vec<Vec<usize>>> {
    let (k, t) = (td.k, td.t);
    if k % 2 != 0 {
        return invalid(format!("augmentation needs even k, got {k}"));
    }
    if t <= (k / 2).max(2) {
        return invalid(format!("augmentation needs t > max(k/2, 2), got t={t} k={k}"));
    }
    if labeling.len() != k * td.v {
        return invalid("labeling does not cover the design's points");
    }
    if td.v < k / 2 {
        return invalid("groups are smaller than k/2");
    }
    let signed = |sign: i8| -> Vec<&Vec<usize>> {
        td.groups.iter().filter(|g| g.iter().all(|&p| labeling.values()[p] == sign)).collect()
    };
    let (positive, negative) = (signed(1), signed(-1));
    if positive.is_empty() || negative.is_empty() {
        return invalid("labeling needs one all-positive and one all-negative group");
    }
    let mut blocks = Vec::with_capacity(positive.len() * negative.len());
    for p in &positive {
        for n in &negative {
            let mut block: Vec<usize> = p[..k / 2].iter().chain(&n[..k / 2]).copied().collect();
            block.sort_unstable();
            blocks.push(block);
        }
    }
    Ok(blocks)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Calls `f` on every `t`-subset of `items` in lexicographic order.
fn for_each_subset(items: &[usize], t: usize, mut f: impl FnMut(&[usize])) {
    let n = items.len();
    if t > n {
        return;
    }
    let mut idx: Vec<usize> = (0..t).collect();
    let mut buf = vec![0; t];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = items[i];
        }
        f(&buf);
        let Some(pos) = (0..t).rev().find(|&i| idx[i] != i + n - t) else {
            return;
        };
        idx[pos] += 1;
        for j in pos + 1..t {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
