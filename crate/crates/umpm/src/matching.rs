//! Perfect-matching enumeration, counting, and uniqueness testing.
//!
//! The main engine is a depth-first search that always branches on the
//! lowest-index uncovered vertex, trying that vertex's edges in canonical
//! edge order. This makes the enumeration order deterministic and means two
//! runs on equal hypergraphs produce identical results. A forward check on
//! the *highest* uncovered vertex prunes branches that have already isolated
//! it; the check never removes a completable branch, because any perfect
//! matching extending the branch must cover that vertex too.
//!
//! [`oracle_count_pm`] is a deliberately independent second opinion: it scans
//! all `C(|E|, m)` edge subsets of size `m` instead of searching, shares no
//! code with the DFS, and is only usable on small inputs.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::formulas::binom;
use crate::hypergraph::{Hypergraph, PerfectMatching};

/// Result of a (possibly capped) matching count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchingCount {
    /// Number of perfect matchings found before stopping.
    pub value: u64,
    /// True when the count stopped early at the caller's cap, in which case
    /// `value` equals the cap and is only a lower bound.
    pub capped: bool,
}

/// Edge indices per vertex, in canonical edge order.
fn vertex_buckets(h: &Hypergraph) -> Vec<Vec<usize>> {
    let mut buckets = vec![Vec::new(); h.n()];
    for (i, e) in h.edges().iter().enumerate() {
        for &v in e {
            buckets[v].push(i);
        }
    }
    buckets
}

/// Visits every perfect matching of `h` exactly once, in a deterministic
/// order, as a sorted list of edge indices. The visitor returns `false` to
/// stop the search early.
fn for_each_perfect_matching(h: &Hypergraph, visit: &mut dyn FnMut(&[usize]) -> bool) {
    if h.n() == 0 {
        visit(&[]);
        return;
    }
    if !h.n().is_multiple_of(h.k()) {
        return;
    }
    let buckets = vertex_buckets(h);
    let mut chosen = Vec::with_capacity(h.n() / h.k());
    if let Some(masks) = h.edge_masks() {
        let full = if h.n() == 64 {
            u64::MAX
        } else {
            (1u64 << h.n()) - 1
        };
        dfs_masks(&buckets, masks, full, 0, &mut chosen, visit);
    } else {
        let mut covered = vec![false; h.n()];
        dfs_general(h, &buckets, &mut covered, 0, &mut chosen, visit);
    }
}

/// Bit-set search path (`n <= 64`). Returns `false` once the visitor stops.
fn dfs_masks(
    buckets: &[Vec<usize>],
    masks: &[u64],
    full: u64,
    covered: u64,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if covered == full {
        return visit(chosen);
    }
    let low = (!covered).trailing_zeros() as usize;
    for &i in &buckets[low] {
        if masks[i] & covered != 0 {
            continue;
        }
        let next = covered | masks[i];
        if next != full {
            let high = 63 - (!next & full).leading_zeros() as usize;
            if !buckets[high].iter().any(|&j| masks[j] & next == 0) {
                continue;
            }
        }
        chosen.push(i);
        let keep_going = dfs_masks(buckets, masks, full, next, chosen, visit);
        chosen.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

/// Sorted-list search path for graphs on more than 64 vertices.
fn dfs_general(
    h: &Hypergraph,
    buckets: &[Vec<usize>],
    covered: &mut Vec<bool>,
    uncovered_from: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let low = match (uncovered_from..h.n()).find(|&v| !covered[v]) {
        Some(v) => v,
        None => return visit(chosen),
    };
    let edges = h.edges();
    for &i in &buckets[low] {
        if edges[i].iter().any(|&v| covered[v]) {
            continue;
        }
        for &v in &edges[i] {
            covered[v] = true;
        }
        let viable = match (low..h.n()).rev().find(|&v| !covered[v]) {
            Some(high) => buckets[high]
                .iter()
                .any(|&j| !edges[j].iter().any(|&v| covered[v])),
            None => true,
        };
        let mut keep_going = true;
        if viable {
            chosen.push(i);
            keep_going = dfs_general(h, buckets, covered, low + 1, chosen, visit);
            chosen.pop();
        }
        for &v in &edges[i] {
            covered[v] = false;
        }
        if !keep_going {
            return false;
        }
    }
    true
}

fn matching_from_indices(h: &Hypergraph, indices: &[usize]) -> PerfectMatching {
    let blocks = indices.iter().map(|&i| h.edges()[i].clone()).collect();
    PerfectMatching::new(h.n(), h.k(), blocks)
        .expect("search emits disjoint covering blocks by construction")
}

/// All perfect matchings of `h`, in deterministic search order, stopping
/// after `limit` matchings when a limit is given.
pub fn enumerate_perfect_matchings(h: &Hypergraph, limit: Option<usize>) -> Vec<PerfectMatching> {
    let mut out = Vec::new();
    if limit == Some(0) {
        return out;
    }
    for_each_perfect_matching(h, &mut |indices| {
        out.push(matching_from_indices(h, indices));
        limit.is_none_or(|l| out.len() < l)
    });
    out
}

/// Counts perfect matchings, stopping at `cap` when one is given.
pub fn count_perfect_matchings(h: &Hypergraph, cap: Option<u64>) -> Result<MatchingCount> {
    if cap == Some(0) {
        return Ok(MatchingCount {
            value: 0,
            capped: true,
        });
    }
    let mut value: u64 = 0;
    let mut overflow = false;
    for_each_perfect_matching(h, &mut |_| {
        match value.checked_add(1) {
            Some(v) => value = v,
            None => {
                overflow = true;
                return false;
            }
        }
        cap.is_none_or(|c| value < c)
    });
    if overflow {
        return Err(Error::CountOverflow);
    }
    Ok(MatchingCount {
        value,
        capped: cap == Some(value) && value > 0,
    })
}

/// Returns the unique perfect matching of `h`, or `None` when `h` has zero
/// or at least two perfect matchings.
pub fn is_unique_pm(h: &Hypergraph) -> Option<PerfectMatching> {
    let mut found = enumerate_perfect_matchings(h, Some(2));
    if found.len() == 1 {
        Some(found.remove(0))
    } else {
        None
    }
}

/// Counts perfect matchings by brute force over all `C(|E|, m)` edge subsets
/// of size `m = n/k`, with no search, no pruning, and no shared code with the
/// DFS engine. Exists purely to validate the engine on small inputs.
///
/// Guarded to `n <= 20` and `C(|E|, m) <= 5_000_000` subsets; larger inputs
/// return [`Error::Guard`].
pub fn oracle_count_pm(h: &Hypergraph) -> Result<u64> {
    if h.n() > 20 {
        return Err(Error::Guard(format!(
            "oracle accepts at most 20 vertices, got n={}",
            h.n()
        )));
    }
    if h.n() == 0 {
        return Ok(1);
    }
    if !h.n().is_multiple_of(h.k()) {
        return Ok(0);
    }
    let m = h.n() / h.k();
    let work = binom(h.edge_count(), m);
    if work > 5_000_000u64.into() {
        return Err(Error::Guard(format!(
            "oracle would scan C({}, {m}) = {work} subsets; the limit is 5000000",
            h.edge_count()
        )));
    }
    let masks = h
        .edge_masks()
        .expect("n <= 20 implies bit masks are present");
    let full = (1u64 << h.n()) - 1;
    let mut count: u64 = 0;
    for combo in (0..h.edge_count()).combinations(m) {
        let mut acc = 0u64;
        let mut disjoint = true;
        for &i in &combo {
            if masks[i] & acc != 0 {
                disjoint = false;
                break;
            }
            acc |= masks[i];
        }
        if disjoint && acc == full {
            count += 1;
        }
    }
    Ok(count)
}
