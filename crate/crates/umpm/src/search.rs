//! Brute-force verification of tightness: canonical forms for isomorphism
//! testing, exhaustive search over all unique-PM supergraphs of a fixed
//! matching, a seeded generator of unique-PM instances, and the local
//! per-block-subset bound that double counting against coverings yields.
//!
//! The exhaustive search fixes the matching to the canonical consecutive
//! blocks. This loses no generality: any hypergraph with a unique perfect
//! matching can be relabeled so its matching becomes the canonical one, and
//! both matching blocks must be present as edges (a perfect matching is a
//! subset of the edge set). Fixing them shrinks the largest default search,
//! k=3 and m=2, from 2^20 edge subsets to 2^18.

use std::path::Path;
use std::time::Instant;

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::construction::build_extremal;
use crate::error::{Error, Result};
use crate::formulas::{coeff_b, f_u64};
use crate::hypergraph::{Hypergraph, PerfectMatching};
use crate::matching::{count_perfect_matchings, is_unique_pm};

/// Hard ceiling for canonical forms: all `n!` relabelings are tried.
const CANONICAL_LIMIT: usize = 8;

/// Most non-matching k-sets an overridden (`force`) exhaustive search will
/// accept; the subset space doubles with each one.
const FORCE_LIMIT: usize = 28;

/// The lexicographically minimal relabeling of a hypergraph. Two hypergraphs
/// on at most [`CANONICAL_LIMIT`] vertices are isomorphic exactly when their
/// canonical forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The minimal edge sequence itself (sorted vertex lists, 0-based).
    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// One line per edge, 1-based labels, in canonical order — the body of a
    /// `.khg` file without its header.
    pub fn edge_string(&self) -> String {
        self.edges
            .iter()
            .map(|e| e.iter().map(|v| (v + 1).to_string()).join(" "))
            .join("\n")
    }
}

/// Computes the canonical form of `h` by minimizing over all `n!` vertex
/// relabelings. Rejects graphs on more than [`CANONICAL_LIMIT`] vertices.
///
/// Relabeled edge lists are compared through per-edge byte-packed keys: a
/// sorted edge on at most 8 vertices packs into one `u64` whose numeric order
/// equals lexicographic order on vertex lists, so the inner loop never
/// allocates.
pub fn canonical_form(h: &Hypergraph) -> Result<CanonicalForm> {
    if h.n() > CANONICAL_LIMIT {
        return Err(Error::Guard(format!(
            "canonical forms accept at most {CANONICAL_LIMIT} vertices, got n={}",
            h.n()
        )));
    }
    let k = h.k();
    let mut best: Option<Vec<u64>> = None;
    let mut image = Vec::with_capacity(h.edge_count());
    for perm in (0..h.n()).permutations(h.n()) {
        image.clear();
        for e in h.edges() {
            let mut mapped = [0usize; CANONICAL_LIMIT];
            for (slot, &v) in mapped.iter_mut().zip(e) {
                *slot = perm[v];
            }
            mapped[..k].sort_unstable();
            let key = mapped[..k].iter().fold(0u64, |acc, &v| acc << 8 | v as u64);
            image.push(key);
        }
        image.sort_unstable();
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image.clone());
        }
    }
    let best = best.expect("0! = 1 permutation, so at least one image exists");
    let edges = best
        .iter()
        .map(|&key| {
            (0..k)
                .map(|j| (key >> (8 * (k - 1 - j)) & 0xff) as usize)
                .collect()
        })
        .collect();
    Ok(CanonicalForm { n: h.n(), k, edges })
}

/// How a report's numbers were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Randomized,
}

/// The persisted outcome of a search run.
///
/// In exhaustive mode the report certifies tightness: `max_edges` is the
/// true maximum over every hypergraph on `km` labeled vertices whose unique
/// perfect matching is the canonical one, and `extremal_canonical` lists the
/// canonical forms (isomorphism classes) attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub format: u32,
    pub k: usize,
    pub m: usize,
    pub mode: SearchMode,
    pub examined: u64,
    pub max_edges: u64,
    pub extremal_canonical: Vec<String>,
    pub seed: Option<u64>,
    pub duration_ms: u64,
}

impl SearchReport {
    /// Re-checks the structural invariants a stored report must satisfy.
    pub fn validate(&self) -> Result<()> {
        if self.format != 1 {
            return Err(Error::BadReport(format!(
                "unsupported format {}, expected 1",
                self.format
            )));
        }
        if self.extremal_canonical.is_empty() {
            return Err(Error::BadReport("empty extremal list".to_string()));
        }
        match self.mode {
            SearchMode::Exhaustive => {
                if self.seed.is_some() {
                    return Err(Error::BadReport(
                        "exhaustive reports carry no seed".to_string(),
                    ));
                }
                let expected = f_u64(self.k, self.m)?;
                if self.max_edges != expected {
                    return Err(Error::BadReport(format!(
                        "exhaustive max_edges = {} but the closed form gives {expected}",
                        self.max_edges
                    )));
                }
            }
            SearchMode::Randomized => {
                if self.seed.is_none() {
                    return Err(Error::BadReport(
                        "randomized reports must carry their seed".to_string(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Parses and validates.
    pub fn from_json(s: &str) -> Result<Self> {
        let report: SearchReport = serde_json::from_str(s)?;
        report.validate()?;
        Ok(report)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json()?;
        text.push('\n');
        Ok(std::fs::write(path, text)?)
    }

    /// Reads a report back and re-validates its invariants.
    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// The default guard: searches small enough to finish in seconds.
fn exhaustive_default_allowed(k: usize, m: usize) -> bool {
    matches!((k, m), (2, 2) | (2, 3) | (3, 2))
}

/// Finds the maximum edge count over *all* hypergraphs on `km` labeled
/// vertices whose unique perfect matching is the canonical one, by scanning
/// every subset of the non-matching k-sets on top of the `m` matching
/// blocks. Returns the report with all extremal isomorphism classes.
///
/// Only (2,2), (2,3), (3,2) run by default; `force` admits anything with at
/// most [`FORCE_LIMIT`] non-matching k-sets, which can take a very long time
/// (the space doubles per k-set).
pub fn exhaustive_max(k: usize, m: usize, force: bool) -> Result<SearchReport> {
    exhaustive_max_with_threads(k, m, force, None)
}

/// [`exhaustive_max`] with an explicit worker count (`None` = all cores).
/// The report's content never depends on the worker count.
pub fn exhaustive_max_with_threads(
    k: usize,
    m: usize,
    force: bool,
    threads: Option<usize>,
) -> Result<SearchReport> {
    if k < 2 {
        return Err(Error::UniformityTooSmall(k));
    }
    if m < 1 {
        return Err(Error::domain(
            "search",
            "at least one matching block is required (m >= 1)".to_string(),
        ));
    }
    let started = Instant::now();
    let n = k * m;
    if !force && !exhaustive_default_allowed(k, m) {
        return Err(Error::Guard(format!(
            "exhaustive search of k={k}, m={m} runs only with force; \
             defaults are (2,2), (2,3), (3,2)"
        )));
    }
    if n > CANONICAL_LIMIT {
        return Err(Error::Guard(format!(
            "extremal forms need canonical forms, which accept at most \
             {CANONICAL_LIMIT} vertices; got n={n}"
        )));
    }
    // Universe of k-sets in canonical order; the matching blocks are fixed,
    // everything else is a free bit.
    let matching = PerfectMatching::canonical(k, m);
    let universe: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    let block_flags: Vec<bool> = universe
        .iter()
        .map(|e| matching.blocks().contains(e))
        .collect();
    let free: Vec<usize> = (0..universe.len()).filter(|&i| !block_flags[i]).collect();
    if free.len() > FORCE_LIMIT {
        return Err(Error::Guard(format!(
            "2^{} subsets is beyond reach even with force (limit 2^{FORCE_LIMIT})",
            free.len()
        )));
    }
    let total: u64 = 1u64 << free.len();
    let worker_count = threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()))
        .clamp(1, total as usize);

    // Each worker scans a contiguous range of subset indices and reports its
    // local maximum with the subsets attaining it; the merge keeps the global
    // maximum and unions the attaining subsets, so the outcome is the same
    // for any partition of the index space.
    let scan = |lo: u64, hi: u64| -> (u64, Vec<u64>) {
        let mut best: u64 = 0;
        let mut winners: Vec<u64> = Vec::new();
        for bits in lo..hi {
            let size = m as u64 + bits.count_ones() as u64;
            if size < best {
                continue;
            }
            let h = subset_graph(k, n, &universe, &block_flags, &free, bits);
            let count =
                count_perfect_matchings(&h, Some(2)).expect("cap-2 counting cannot overflow");
            if count.value != 1 {
                continue;
            }
            if size > best {
                best = size;
                winners.clear();
            }
            winners.push(bits);
        }
        (best, winners)
    };

    let chunk = total.div_ceil(worker_count as u64);
    let results: Vec<(u64, Vec<u64>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..worker_count as u64)
            .map(|w| {
                let lo = w * chunk;
                let hi = ((w + 1) * chunk).min(total);
                let scan = &scan;
                scope.spawn(move || scan(lo, hi.max(lo)))
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });

    let max_edges = results.iter().map(|(b, _)| *b).max().unwrap_or(0);
    let mut forms = std::collections::BTreeSet::new();
    for (best, winners) in &results {
        if *best != max_edges {
            continue;
        }
        for &bits in winners {
            let h = subset_graph(k, n, &universe, &block_flags, &free, bits);
            forms.insert(canonical_form(&h)?);
        }
    }
    let report = SearchReport {
        format: 1,
        k,
        m,
        mode: SearchMode::Exhaustive,
        examined: total,
        max_edges,
        extremal_canonical: forms.iter().map(CanonicalForm::edge_string).collect(),
        seed: None,
        duration_ms: started.elapsed().as_millis() as u64,
    };
    report.validate()?;
    Ok(report)
}

/// The hypergraph holding the matching blocks plus the free k-sets selected
/// by `bits`. Universe order is canonical order, so no re-sorting is needed.
fn subset_graph(
    k: usize,
    n: usize,
    universe: &[Vec<usize>],
    block_flags: &[bool],
    free: &[usize],
    bits: u64,
) -> Hypergraph {
    let mut edges: Vec<Vec<usize>> =
        Vec::with_capacity(block_flags.len() - free.len() + bits.count_ones() as usize);
    let mut cursor = 0usize;
    for (i, e) in universe.iter().enumerate() {
        if block_flags[i] {
            edges.push(e.clone());
        } else {
            if bits >> cursor & 1 == 1 {
                edges.push(e.clone());
            }
            cursor += 1;
        }
    }
    // The universe is already in canonical order, so this skips revalidation.
    Hypergraph::from_canonical(n, k, edges)
}

/// A reproducible unique-PM instance: the extremal graph minus `deletions`
/// non-matching edges chosen by a seeded generator.
///
/// Deleting edges can only remove perfect matchings, and the canonical
/// matching survives because its blocks are never deletion candidates — so
/// the result provably keeps exactly one perfect matching.
pub fn sample_unique_pm(k: usize, m: usize, seed: u64, deletions: usize) -> Result<Hypergraph> {
    if k.checked_mul(m).is_none_or(|n| n > 64) {
        return Err(Error::Guard(format!(
            "sampling accepts k*m <= 64 vertices, got k={k}, m={m}"
        )));
    }
    let w = build_extremal(k, m)?;
    let non_matching = w
        .hypergraph
        .edges()
        .iter()
        .filter(|e| !w.matching.blocks().contains(e))
        .count();
    if deletions > non_matching {
        return Err(Error::domain(
            "sampling",
            format!("cannot delete {deletions} of {non_matching} non-matching edges"),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let drop: std::collections::BTreeSet<usize> =
        rand::seq::index::sample(&mut rng, non_matching, deletions)
            .into_iter()
            .collect();
    let mut keep = Vec::with_capacity(w.hypergraph.edge_count() - deletions);
    let mut free_index = 0usize;
    for e in w.hypergraph.edges() {
        if w.matching.blocks().contains(e) {
            keep.push(e.clone());
        } else {
            if !drop.contains(&free_index) {
                keep.push(e.clone());
            }
            free_index += 1;
        }
    }
    Hypergraph::new(k * m, k, keep)
}

/// One row of the local-bound table: the edges of stratum `ell` that live
/// inside a chosen set of `ell` matching blocks, against the ceiling that
/// pigeonholing covering multiplicities imposes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalBoundRow {
    /// Stratum / subset size.
    pub ell: usize,
    /// Indices into the matching's block list.
    pub blocks: Vec<usize>,
    /// Edges contained in the chosen blocks' union that meet all of them.
    pub count: u64,
    /// The coefficient b(k, ell) this count may not exceed.
    pub bound: u64,
}

/// Checks the local stratum bound on a unique-PM hypergraph: for every
/// `ell`-subset of matching blocks, the sub-hypergraph spanned by those
/// blocks holds at most `b(k, ell)` edges meeting all `ell` of them. Returns
/// the full table; errors if `pm` is not the unique perfect matching of `h`,
/// or — which uniqueness rules out — if some subset exceeds its bound.
pub fn verify_local_bound(h: &Hypergraph, pm: &PerfectMatching) -> Result<Vec<LocalBoundRow>> {
    if is_unique_pm(h).as_ref() != Some(pm) {
        return Err(Error::NotUniquePm);
    }
    let k = h.k();
    let m = pm.m();
    let mut rows = Vec::new();
    for ell in 2..=k.min(m) {
        let bound = u64::try_from(&coeff_b(k, ell)?).map_err(|_| Error::CountOverflow)?;
        for blocks in (0..m).combinations(ell) {
            let mut inside: Vec<usize> = blocks
                .iter()
                .flat_map(|&b| pm.blocks()[b].iter().copied())
                .collect();
            inside.sort_unstable();
            let (sub, _) = h.induced_sub(&inside)?;
            // Edges inside the union that meet every chosen block: they meet
            // exactly `ell` blocks, i.e. the local slice of stratum `ell`.
            let strata = sub.stratify(&local_matching(&blocks, pm, &inside))?;
            let count = strata.count(ell);
            if count > bound {
                return Err(Error::domain(
                    "local bound",
                    format!(
                        "blocks {blocks:?} carry {count} stratum-{ell} edges, \
                         exceeding b = {bound}"
                    ),
                ));
            }
            rows.push(LocalBoundRow {
                ell,
                blocks,
                count,
                bound,
            });
        }
    }
    Ok(rows)
}

/// The chosen blocks as a perfect matching of the induced, relabeled
/// subgraph. `inside` is the sorted union of the chosen blocks.
fn local_matching(blocks: &[usize], pm: &PerfectMatching, inside: &[usize]) -> PerfectMatching {
    let relabel = |v: usize| inside.binary_search(&v).expect("vertex of a chosen block");
    let local_blocks: Vec<Vec<usize>> = blocks
        .iter()
        .map(|&b| pm.blocks()[b].iter().map(|&v| relabel(v)).collect())
        .collect();
    PerfectMatching::new(inside.len(), pm.k(), local_blocks)
        .expect("chosen blocks partition their own union")
}
