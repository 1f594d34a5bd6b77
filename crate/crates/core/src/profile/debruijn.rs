//! Restricted de Bruijn graphs and the profile ↔ string correspondence.

use crate::error::{invalid, Error, Result};
use crate::strings::{kmer_index, kmer_symbols, Alphabet, ProfileVector, QaryString};

/// The set S of ℓ-mers allowed as arcs, stored as sorted lexicographic indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllowedKmerSet {
    q: usize,
    ell: usize,
    members: Vec<usize>,
}

impl AllowedKmerSet {
    pub fn full(q: usize, ell: usize) -> Result<Self> {
        let dim = dimension(q, ell)?;
        Self::new(q, ell, 0..dim)
    }

    pub fn new(q: usize, ell: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let dim = dimension(q, ell)?;
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return invalid("allowed ℓ-mer set is empty");
        }
        if let Some(&bad) = members.iter().find(|&&m| m >= dim) {
            return invalid(format!("ℓ-mer index {bad} out of range for q={q}, ell={ell}"));
        }
        Ok(AllowedKmerSet { q, ell, members })
    }

    /// Builds S from textual ℓ-mers such as `["001", "010"]`.
    pub fn from_kmers<S: AsRef<str>>(alphabet: Alphabet, kmers: &[S]) -> Result<Self> {
        let first = kmers.first().ok_or_else(|| Error::InvalidArgument("allowed ℓ-mer set is empty".into()))?;
        let ell = first.as_ref().chars().count();
        let mut members = Vec::with_capacity(kmers.len());
        for k in kmers {
            let s = QaryString::parse_as(alphabet, k.as_ref())?;
            if s.len() != ell {
                return invalid(format!("ℓ-mer {:?} does not have length {ell}", k.as_ref()));
            }
            members.push(kmer_index(s.symbols(), alphabet.size()));
        }
        Self::new(alphabet.size(), ell, members)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Coordinate of an ℓ-mer inside S-indexed vectors.
    pub fn position(&self, kmer: usize) -> Option<usize> {
        self.members.binary_search(&kmer).ok()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.q.pow(self.ell as u32)
    }
}

pub(crate) fn dimension(q: usize, ell: usize) -> Result<usize> {
    if q < 2 || ell == 0 {
        return invalid(format!("q={q}, ell={ell} do not describe a de Bruijn graph"));
    }
    q.checked_pow(ell as u32)
        .filter(|&d| d <= 1 << 26)
        .ok_or_else(|| Error::Resource(format!("{q}^{ell} ℓ-mers is too many")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    /// Lexicographic index of the ℓ-mer label.
    pub label: usize,
    /// Index of the (ℓ−1)-mer prefix.
    pub tail: usize,
    /// Index of the (ℓ−1)-mer suffix.
    pub head: usize,
}

impl Arc {
    fn new(label: usize, q: usize, ell: usize) -> Self {
        let suffix_mod = q.pow(ell as u32 - 1);
        Arc { label, tail: label / q, head: label % suffix_mod }
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// D(S): vertices are the (ℓ−1)-mers touched by S, one arc per member of S.
#[derive(Debug, Clone)]
pub struct DeBruijnGraph {
    q: usize,
    ell: usize,
    vertices: Vec<usize>,
    arcs: Vec<Arc>,
    weights: Vec<u64>,
}

pub fn build_debruijn(allowed: &AllowedKmerSet) -> DeBruijnGraph {
    let (q, ell) = (allowed.q, allowed.ell);
    let arcs: Vec<Arc> = allowed.members.iter().map(|&m| Arc::new(m, q, ell)).collect();
    let mut vertices: Vec<usize> = arcs.iter().flat_map(|a| [a.tail, a.head]).collect();
    vertices.sort_unstable();
    vertices.dedup();
    let weights = vec![0; arcs.len()];
    DeBruijnGraph { q, ell, vertices, arcs, weights }
}

impl DeBruijnGraph {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Vertex (ℓ−1)-mer indices in lexicographic order.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn with_weights(mut self, weights: Vec<u64>) -> Result<Self> {
        if weights.len() != self.arcs.len() {
            return invalid(format!("{} weights for {} arcs", weights.len(), self.arcs.len()));
        }
        self.weights = weights;
        Ok(self)
    }

    pub fn vertex_label(&self, vertex: usize) -> Vec<u8> {
        kmer_symbols(vertex, self.q, self.ell - 1)
    }

    pub fn arc_label(&self, arc: &Arc) -> Vec<u8> {
        kmer_symbols(arc.label, self.q, self.ell)
    }

    pub fn find_arc(&self, label: usize) -> Option<&Arc> {
        self.arcs.iter().find(|a| a.label == label)
    }

    /// B(D): rows follow `vertices()`, columns follow `arcs()`. Loops give
    /// all-zero columns.
    pub fn incidence_matrix(&self) -> Vec<Vec<i8>> {
        let mut b = vec![vec![0i8; self.arcs.len()]; self.vertices.len()];
        for (j, arc) in self.arcs.iter().enumerate() {
            if arc.is_loop() {
                continue;
            }
            b[self.vertex_row(arc.head)][j] = 1;
            b[self.vertex_row(arc.tail)][j] = -1;
        }
        b
    }

    /// B·u for an S-indexed vector `u`.
    pub fn net_flow(&self, u: &[u64]) -> Vec<i64> {
        let b = self.incidence_matrix();
        b.iter()
            .map(|row| row.iter().zip(u).map(|(&bij, &uj)| bij as i64 * uj as i64).sum())
            .collect()
    }

    fn vertex_row(&self, vertex: usize) -> usize {
        self.vertices.binary_search(&vertex).expect("arc endpoint is a vertex")
    }
}

/// Degree bookkeeping for the support of a full profile vector.
struct Support {
    q: usize,
    ell: usize,
    /// out-degree minus in-degree, per (ℓ−1)-mer.
    balance: Vec<i64>,
    degree: Vec<u64>,
    arcs: Vec<(Arc, u32)>,
}

impl Support {
    fn of(u: &ProfileVector) -> Self {
        let (q, ell) = (u.q(), u.ell());
        let nv = q.pow(ell as u32 - 1);
        let mut balance = vec![0i64; nv];
        let mut degree = vec![0u64; nv];
        let mut arcs = Vec::new();
        for (label, &w) in u.counts().iter().enumerate().filter(|(_, &w)| w > 0) {
            let arc = Arc::new(label, q, ell);
            balance[arc.tail] += w as i64;
            balance[arc.head] -= w as i64;
            degree[arc.tail] += w as u64;
            degree[arc.head] += w as u64;
            arcs.push((arc, w));
        }
        Support { q, ell, balance, degree, arcs }
    }

    /// Start vertex of an Euler walk, if the degree conditions allow one.
    fn start_vertex(&self, closed: bool) -> Option<usize> {
        let mut source = None;
        let mut sinks = 0;
        for (v, &b) in self.balance.iter().enumerate() {
            match b {
                0 => {}
                1 if !closed && source.is_none() => source = Some(v),
                -1 if !closed && sinks == 0 => sinks += 1,
                _ => return None,
            }
        }
        match (source, sinks) {
            (Some(v), 1) => Some(v),
            (None, 0) => self.degree.iter().position(|&d| d > 0),
            _ => None,
        }
    }

    fn is_connected(&self) -> bool {
        let nv = self.balance.len();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (arc, _) in &self.arcs {
            let (a, b) = (find(&mut parent, arc.tail), find(&mut parent, arc.head));
            parent[a] = b;
        }
        let mut roots = (0..nv).filter(|&v| self.degree[v] > 0).map(|v| find(&mut parent, v));
        match roots.next() {
            Some(r) => roots.all(|x| x == r),
            None => true,
        }
    }
}

/// Whether some length-`n` string (a closed one when `closed`) has profile `u`.
pub fn is_valid_profile(u: &ProfileVector, n: usize, closed: bool) -> bool {
    if n < u.ell() || u.total() != (n - u.ell() + 1) as u64 {
        return false;
    }
    let support = Support::of(u);
    support.start_vertex(closed).is_some() && support.is_connected()
}

/// The canonical string of a valid profile: an Euler walk that always takes the
/// lexicographically smallest unused arc, starting at the forced source vertex
/// or, when every vertex is balanced, at the smallest vertex in the support.
pub fn profile_to_string(u: &ProfileVector, n: usize) -> Result<QaryString> {
    if !is_valid_profile(u, n, false) {
        return Err(Error::InvalidProfile(format!("no string of length {n} has this profile")));
    }
    let support = Support::of(u);
    let start = support.start_vertex(false).expect("validated");
    let (q, ell) = (support.q, support.ell);

    // Remaining multiplicity per arc, arcs grouped by tail in label order.
    let nv = q.pow(ell as u32 - 1);
    let mut out_arcs: Vec<Vec<(usize, u32)>> = vec![Vec::new(); nv];
    for &(arc, w) in &support.arcs {
        out_arcs[arc.tail].push((arc.label, w));
    }
    let mut cursor = vec![0usize; nv];

    // Iterative Hierholzer over (vertex, arc taken to reach it).
    let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
    let mut walk: Vec<usize> = Vec::with_capacity(n);
    while let Some(&(v, _)) = stack.last() {
        let arcs = &mut out_arcs[v];
        while cursor[v] < arcs.len() && arcs[cursor[v]].1 == 0 {
            cursor[v] += 1;
        }
        if cursor[v] < arcs.len() {
            let entry = &mut arcs[cursor[v]];
            entry.1 -= 1;
            let arc = Arc::new(entry.0, q, ell);
            stack.push((arc.head, Some(arc.label)));
        } else {
            let (_, arc) = stack.pop().expect("nonempty");
            if let Some(label) = arc {
                walk.push(label);
            }
        }
    }
    walk.reverse();

    let mut symbols = kmer_symbols(walk[0], q, ell);
    symbols.extend(walk[1..].iter().map(|&label| (label % q) as u8));
    debug_assert_eq!(symbols.len(), n);
    QaryString::new(Alphabet::from_size(q)?, symbols)
}

/// Groups strings whose ℓ-profiles coincide, in order of first appearance.
pub fn equivalence_classes(strings: &[QaryString], ell: usize) -> Result<Vec<Vec<QaryString>>> {
    let Some(first) = strings.first() else {
        return Ok(Vec::new());
    };
    let mut classes: Vec<(ProfileVector, Vec<QaryString>)> = Vec::new();
    let mut index: std::collections::HashMap<ProfileVector, usize> = std::collections::HashMap::new();
    for x in strings {
        if x.len() != first.len() || x.alphabet() != first.alphabet() {
            return invalid("equivalence classes need strings of one length and alphabet");
        }
        let p = crate::strings::profile(x, ell)?;
        match index.get(&p) {
            Some(&i) => classes[i].1.push(x.clone()),
            None => {
                index.insert(p.clone(), classes.len());
                classes.push((p, vec![x.clone()]));
            }
        }
    }
    Ok(classes.into_iter().map(|(_, members)| members).collect())
}
