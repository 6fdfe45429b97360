//! k-uniform hypergraphs in canonical form, perfect matchings, edge
//! stratification by matching blocks, and the `.khg` text format.
//!
//! Vertices are `0..n` internally. The `.khg` format and everything the CLI
//! prints use 1-based labels; conversion happens only at those boundaries.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Bit mask of a vertex list. Callers guarantee all vertices are `< 64`.
#[inline]
pub(crate) fn mask_of(vs: &[usize]) -> u64 {
    vs.iter().fold(0u64, |m, &v| m | (1u64 << v))
}

/// Disjointness test on sorted vertex lists, for the `n > 64` fallback path.
pub(crate) fn sorted_disjoint(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

/// An immutable k-uniform hypergraph.
///
/// Edges are stored as sorted vertex lists in a canonical total order
/// (lexicographic), with duplicates merged, so two hypergraphs are equal
/// exactly when their edge sequences are equal. When `n <= 64` every edge is
/// mirrored as a `u64` bit set for O(1) disjointness tests.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
    masks: Option<Vec<u64>>,
}

impl Hypergraph {
    /// Builds a hypergraph from an arbitrary edge list.
    ///
    /// Edge order and vertex order within an edge are irrelevant; duplicate
    /// edges are merged silently (edges are a set of k-sets). Rejects `k < 2`,
    /// `n < k`, out-of-range vertices, and edges without exactly `k` distinct
    /// vertices.
    pub fn new(n: usize, k: usize, edges: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        if k < 2 {
            return Err(Error::UniformityTooSmall(k));
        }
        if n < k {
            return Err(Error::TooFewVertices { n, k });
        }
        let mut canon: Vec<Vec<usize>> = Vec::new();
        for (index, mut e) in edges.into_iter().enumerate() {
            if e.len() != k {
                return Err(Error::WrongEdgeSize {
                    index,
                    got: e.len(),
                    k,
                });
            }
            for &v in &e {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            e.sort_unstable();
            e.dedup();
            if e.len() != k {
                return Err(Error::WrongEdgeSize {
                    index,
                    got: e.len(),
                    k,
                });
            }
            canon.push(e);
        }
        canon.sort_unstable();
        canon.dedup();
        Ok(Self::from_canonical(n, k, canon))
    }

    /// Internal constructor for edge lists already sorted, deduplicated, and
    /// validated. Skips the `n >= k` check so induced subgraphs may live on
    /// fewer than `k` vertices.
    pub(crate) fn from_canonical(n: usize, k: usize, edges: Vec<Vec<usize>>) -> Self {
        let masks = (n <= 64).then(|| edges.iter().map(|e| mask_of(e)).collect());
        Self { n, k, edges, masks }
    }

    /// The complete k-graph on `n` vertices: every k-subset is an edge.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::UniformityTooSmall(k));
        }
        if n < k {
            return Err(Error::TooFewVertices { n, k });
        }
        let edges = (0..n).combinations(k).collect();
        Ok(Self::from_canonical(n, k, edges))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Edges in canonical order, each a sorted vertex list.
    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Per-edge bit sets, present exactly when `n <= 64`, in edge order.
    pub fn edge_masks(&self) -> Option<&[u64]> {
        self.masks.as_deref()
    }

    /// Whether the given vertex set (in any order) is an edge.
    pub fn has_edge(&self, e: &[usize]) -> bool {
        let mut e = e.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).is_ok()
    }

    /// Vertex degrees (number of edges containing each vertex).
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    /// A copy with one more edge (merged silently if already present).
    pub fn with_edge(&self, e: &[usize]) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.push(e.to_vec());
        Self::new(self.n, self.k, edges)
    }

    /// A copy without the given edge (no-op if absent).
    pub fn without_edge(&self, e: &[usize]) -> Self {
        let mut key = e.to_vec();
        key.sort_unstable();
        let edges = self.edges.iter().filter(|x| **x != key).cloned().collect();
        Self::from_canonical(self.n, self.k, edges)
    }

    /// Applies a vertex relabeling. `perm` must be a permutation of `0..n`;
    /// vertex `v` becomes `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::domain(
                "relabeling",
                format!("permutation has length {}, expected {}", perm.len(), self.n),
            ));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(Error::domain(
                    "relabeling",
                    "not a permutation of the vertex set".to_string(),
                ));
            }
            seen[p] = true;
        }
        let mut edges: Vec<Vec<usize>> = self
            .edges
            .iter()
            .map(|e| {
                let mut img: Vec<usize> = e.iter().map(|&v| perm[v]).collect();
                img.sort_unstable();
                img
            })
            .collect();
        edges.sort_unstable();
        Ok(Self::from_canonical(self.n, self.k, edges))
    }

    /// The subhypergraph spanned by `vs`, relabeled onto `0..|vs|` preserving
    /// vertex order, together with the relabeling map (`map[new] = old`).
    ///
    /// The result keeps only the edges entirely contained in `vs`.
    pub fn induced_sub(&self, vs: &[usize]) -> Result<(Self, Vec<usize>)> {
        for &v in vs {
            if v >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
        }
        let mut map: Vec<usize> = vs.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut old_to_new = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            old_to_new[old] = new;
        }
        let mut edges: Vec<Vec<usize>> = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| old_to_new[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| old_to_new[v]).collect())
            .collect();
        edges.sort_unstable();
        Ok((Self::from_canonical(map.len(), self.k, edges), map))
    }

    /// Counts edges by the number of matching blocks they intersect.
    ///
    /// The blocks of `pm` must partition this graph's vertex set; they need
    /// not be edges of the graph.
    pub fn stratify(&self, pm: &PerfectMatching) -> Result<Stratification> {
        if pm.n != self.n || pm.k != self.k {
            return Err(Error::NotAPartition(format!(
                "matching is over n={}, k={} but the hypergraph has n={}, k={}",
                pm.n, pm.k, self.n, self.k
            )));
        }
        let mut counts = vec![0u64; self.k];
        if let (Some(masks), Some(block_masks)) = (self.edge_masks(), pm.block_masks()) {
            for &em in masks {
                let ell = block_masks.iter().filter(|&&bm| bm & em != 0).count();
                counts[ell - 1] += 1;
            }
        } else {
            for e in &self.edges {
                let ell = pm.blocks.iter().filter(|b| !sorted_disjoint(e, b)).count();
                counts[ell - 1] += 1;
            }
        }
        Ok(Stratification { counts })
    }

    /// Serializes to the `.khg` text format (1-based vertex labels).
    pub fn to_khg(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.k);
        for e in &self.edges {
            let line = e.iter().map(|v| (v + 1).to_string()).join(" ");
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    /// Parses the `.khg` text format.
    ///
    /// Line 1 is `n k`; every further non-empty line holds `k` space-separated
    /// 1-based vertex labels. Lines starting with `#` are comments. Duplicate
    /// edges merge silently.
    pub fn from_khg(s: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges: Vec<Vec<usize>> = Vec::new();
        for (idx, raw) in s.lines().enumerate() {
            let line = idx + 1;
            let text = raw.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = text.split_whitespace().collect();
            match header {
                None => {
                    if tokens.len() != 2 {
                        return Err(Error::Parse {
                            line,
                            msg: format!(
                                "malformed header: expected \"n k\", got {} token(s)",
                                tokens.len()
                            ),
                        });
                    }
                    let n = parse_usize(tokens[0], line)?;
                    let k = parse_usize(tokens[1], line)?;
                    if k < 2 {
                        return Err(Error::Parse {
                            line,
                            msg: format!("uniformity must be at least 2, got k={k}"),
                        });
                    }
                    if n < k {
                        return Err(Error::Parse {
                            line,
                            msg: format!("vertex count n={n} is smaller than k={k}"),
                        });
                    }
                    header = Some((n, k));
                }
                Some((n, k)) => {
                    if tokens.len() != k {
                        return Err(Error::Parse {
                            line,
                            msg: format!("edge has {} token(s), expected {}", tokens.len(), k),
                        });
                    }
                    let mut e = Vec::with_capacity(k);
                    for t in &tokens {
                        let v = parse_usize(t, line)?;
                        if v < 1 || v > n {
                            return Err(Error::Parse {
                                line,
                                msg: format!("vertex {v} out of range 1..={n}"),
                            });
                        }
                        e.push(v - 1);
                    }
                    e.sort_unstable();
                    e.dedup();
                    if e.len() != k {
                        return Err(Error::Parse {
                            line,
                            msg: format!("edge repeats a vertex; {k} distinct vertices required"),
                        });
                    }
                    edges.push(e);
                }
            }
        }
        let (n, k) = header.ok_or(Error::Parse {
            line: s.lines().count() + 1,
            msg: "missing header line \"n k\"".to_string(),
        })?;
        Hypergraph::new(n, k, edges)
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_khg())
    }
}

fn parse_usize(token: &str, line: usize) -> Result<usize> {
    token.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected a nonnegative integer, got {token:?}"),
    })
}

/// The complement of `e` in `{0..n}`, defined only when `n = 2|e|`.
pub fn complement_edge(n: usize, e: &[usize]) -> Result<Vec<usize>> {
    if n != 2 * e.len() {
        return Err(Error::ComplementSize { n, len: e.len() });
    }
    let mut member = vec![false; n];
    for &v in e {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        member[v] = true;
    }
    Ok((0..n).filter(|&v| !member[v]).collect())
}

/// An ordered list of pairwise-disjoint edges of a host hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    blocks: Vec<Vec<usize>>,
}

impl Matching {
    /// Validates that every block is an edge of `h` and that the blocks are
    /// pairwise disjoint. Blocks are ordered by their smallest vertex.
    pub fn new(h: &Hypergraph, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut canon: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        let mut used = vec![false; h.n()];
        for (index, b) in blocks.into_iter().enumerate() {
            let mut b = b;
            b.sort_unstable();
            if !h.has_edge(&b) {
                return Err(Error::BlockNotAnEdge { index });
            }
            for &v in &b {
                if used[v] {
                    return Err(Error::NotAPartition(format!(
                        "vertex {v} appears in two blocks"
                    )));
                }
                used[v] = true;
            }
            canon.push(b);
        }
        canon.sort_unstable();
        Ok(Self { blocks: canon })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Whether the matching covers every vertex of `h`.
    pub fn is_perfect(&self, h: &Hypergraph) -> bool {
        self.blocks.len() * h.k() == h.n()
    }

    pub fn into_perfect(self, h: &Hypergraph) -> Result<PerfectMatching> {
        PerfectMatching::new(h.n(), h.k(), self.blocks)
    }
}

/// A partition of `{0..n}` into disjoint k-blocks, ordered by smallest vertex.
///
/// This is the object edges get stratified against. Its blocks are not
/// required to be edges of any particular hypergraph; use
/// [`PerfectMatching::is_matching_of`] to check that.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PerfectMatching {
    n: usize,
    k: usize,
    blocks: Vec<Vec<usize>>,
}

impl PerfectMatching {
    pub fn new(n: usize, k: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if k < 2 {
            return Err(Error::UniformityTooSmall(k));
        }
        if !n.is_multiple_of(k) || blocks.len() != n / k {
            return Err(Error::NotAPartition(format!(
                "{} block(s) of size {k} cannot cover {n} vertices",
                blocks.len()
            )));
        }
        let mut canon: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        let mut used = vec![false; n];
        for b in blocks {
            let mut b = b;
            b.sort_unstable();
            b.dedup();
            if b.len() != k {
                return Err(Error::NotAPartition(format!(
                    "block {b:?} does not have {k} distinct vertices"
                )));
            }
            for &v in &b {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if used[v] {
                    return Err(Error::NotAPartition(format!(
                        "vertex {v} appears in two blocks"
                    )));
                }
                used[v] = true;
            }
            canon.push(b);
        }
        canon.sort_unstable();
        Ok(Self {
            n,
            k,
            blocks: canon,
        })
    }

    /// The matching with consecutive blocks `{ki, .., k(i+1)-1}` for
    /// `i = 0..m` (1-based labels `{k(i-1)+1, .., ki}`).
    pub fn canonical(k: usize, m: usize) -> Self {
        let blocks = (0..m).map(|i| (i * k..(i + 1) * k).collect()).collect();
        Self {
            n: k * m,
            k,
            blocks,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of blocks.
    pub fn m(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Per-block bit sets when `n <= 64`.
    pub(crate) fn block_masks(&self) -> Option<Vec<u64>> {
        (self.n <= 64).then(|| self.blocks.iter().map(|b| mask_of(b)).collect())
    }

    /// Whether every block is an edge of `h`.
    pub fn is_matching_of(&self, h: &Hypergraph) -> bool {
        self.n == h.n() && self.k == h.k() && self.blocks.iter().all(|b| h.has_edge(b))
    }
}

/// Edge counts by stratum: `counts()[l-1]` is the number of edges meeting
/// exactly `l` matching blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification {
    counts: Vec<u64>,
}

impl Stratification {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// The count for stratum `l` (1-based); 0 beyond the uniformity.
    pub fn count(&self, ell: usize) -> u64 {
        if ell == 0 {
            return 0;
        }
        self.counts.get(ell - 1).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}
