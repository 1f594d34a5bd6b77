//! Reconstruction of a string of known length from the set of its
//! L-substrings.

use std::collections::HashMap;

use crate::error::{invalid, Error, Result};
use crate::strings::{period, substring_spectrum, Alphabet, QaryString, SubstringSpectrum};

/// Largest `q^n` accepted by [`is_uniquely_reconstructable`].
pub const UNIQUENESS_BUDGET: u64 = 1 << 20;

/// True iff no (L−1)-substring of `x` occurs twice.
pub fn ukkonen_sufficient(x: &QaryString, window: usize) -> Result<bool> {
    if window < 2 || window > x.len() {
        return invalid(format!("L = {window} must lie in 2..={}", x.len()));
    }
    let spectrum = substring_spectrum(x, window - 1, true)?;
    Ok(spectrum.entries().values().all(|&m| m == 1))
}

/// True iff the period of `x` is at most `L`.
pub fn period_obstructed(x: &QaryString, window: usize) -> Result<bool> {
    if window == 0 || window > x.len() {
        return invalid(format!("L = {window} must lie in 1..={}", x.len()));
    }
    Ok(period(x) <= window)
}

/// A set spectrum together with the target length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructionInstance {
    spectrum: SubstringSpectrum,
    n: usize,
    alphabet: Alphabet,
}

impl ReconstructionInstance {
    pub fn new(spectrum: SubstringSpectrum, n: usize, alphabet: Alphabet) -> Result<Self> {
        let spectrum = spectrum.support();
        if spectrum.window() == 0 || spectrum.window() > n {
            return invalid(format!("window {} must lie in 1..={n}", spectrum.window()));
        }
        if spectrum.distinct().flatten().any(|&s| s as usize >= alphabet.size()) {
            return invalid("spectrum uses symbols outside the alphabet");
        }
        Ok(ReconstructionInstance { spectrum, n, alphabet })
    }

    pub fn of(x: &QaryString, window: usize) -> Result<Self> {
        Self::new(substring_spectrum(x, window, false)?, x.len(), x.alphabet())
    }

    pub fn spectrum(&self) -> &SubstringSpectrum {
        &self.spectrum
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }
}

/// Every length-n string whose L-substring set equals the spectrum, in
/// lexicographic order; stops after `limit` strings when given.
///
/// Strings are walks of n−L+1 arcs in the graph whose vertices are
/// (L−1)-mers and whose arcs are the spectrum members. Arcs may repeat; every
/// arc must be used. Walk feasibility per (vertex, remaining length) is
/// tabulated up front, and a branch is cut once the unused arcs outnumber
/// the remaining steps.
pub fn assemble(instance: &ReconstructionInstance, limit: Option<usize>) -> Vec<QaryString> {
    let window = instance.spectrum.window();
    let arcs: Vec<&[u8]> = instance.spectrum.distinct().collect();
    let steps = instance.n - window + 1;
    if arcs.is_empty() || arcs.len() > steps {
        return Vec::new();
    }
    let mut vertex_ids: HashMap<&[u8], usize> = HashMap::new();
    for a in &arcs {
        let next = vertex_ids.len();
        vertex_ids.entry(&a[..window - 1]).or_insert(next);
        let next = vertex_ids.len();
        vertex_ids.entry(&a[1..]).or_insert(next);
    }
    // Outgoing arcs per vertex, in lexicographic order of the arc label.
    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertex_ids.len()];
    for (id, a) in arcs.iter().enumerate() {
        out[vertex_ids[&a[..window - 1]]].push((id, vertex_ids[&a[1..]]));
    }
    // walkable[r][v]: some walk of r further arcs leaves v.
    let mut walkable = vec![vec![true; out.len()]];
    for r in 1..steps {
        let prev = &walkable[r - 1];
        walkable.push(out.iter().map(|o| o.iter().any(|&(_, h)| prev[h])).collect());
    }
    let mut search = Search {
        arcs: &arcs,
        out: &out,
        walkable: &walkable,
        used: vec![0; arcs.len()],
        unused: arcs.len(),
        path: Vec::with_capacity(steps),
        results: Vec::new(),
        limit: limit.unwrap_or(usize::MAX),
        steps,
        alphabet: instance.alphabet,
    };
    for (id, a) in arcs.iter().enumerate() {
        let head = vertex_ids[&a[1..]];
        if walkable[steps - 1][head] {
            search.descend(id, head);
        }
        if search.results.len() >= search.limit {
            break;
        }
    }
    search.results
}

struct Search<'a> {
    arcs: &'a [&'a [u8]],
    out: &'a [Vec<(usize, usize)>],
    walkable: &'a [Vec<bool>],
    used: Vec<u32>,
    unused: usize,
    path: Vec<usize>,
    results: Vec<QaryString>,
    limit: usize,
    steps: usize,
    alphabet: Alphabet,
}

impl Search<'_> {
    fn descend(&mut self, arc: usize, head: usize) {
        self.used[arc] += 1;
        if self.used[arc] == 1 {
            self.unused -= 1;
        }
        self.path.push(arc);
        let remaining = self.steps - self.path.len();
        if remaining == 0 {
            if self.unused == 0 {
                self.emit();
            }
        } else if self.unused <= remaining {
            for &(next, h) in &self.out[head] {
                if self.results.len() >= self.limit {
                    break;
                }
                if self.walkable[remaining - 1][h] {
                    self.descend(next, h);
                }
            }
        }
        self.path.pop();
        self.used[arc] -= 1;
        if self.used[arc] == 0 {
            self.unused += 1;
        }
    }

    fn emit(&mut self) {
        let mut symbols = self.arcs[self.path[0]].to_vec();
        symbols.extend(self.path[1..].iter().map(|&a| *self.arcs[a].last().unwrap()));
        self.results.push(QaryString::new(self.alphabet, symbols).expect("spectrum symbols were validated"));
    }
}

/// True iff `x` is the only length-|x| string with its L-substring set.
pub fn is_uniquely_reconstructable(x: &QaryString, window: usize) -> Result<bool> {
    let space = (x.q() as u64).checked_pow(x.len() as u32).unwrap_or(u64::MAX);
    if space > UNIQUENESS_BUDGET {
        return Err(Error::Resource(format!("{}^{} candidate strings exceed the budget", x.q(), x.len())));
    }
    let candidates = assemble(&ReconstructionInstance::of(x, window)?, Some(2));
    Ok(candidates.len() == 1 && &candidates[0] == x)
}
