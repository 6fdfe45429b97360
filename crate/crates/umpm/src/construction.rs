//! The extremal construction: graphs attaining the maximum edge count while
//! keeping a unique perfect matching.
//!
//! The graph on `km` vertices is grown block by block. Step `i` adds the
//! block `M_i = {k(i-1), .., ki-1}` together with every k-set that meets
//! `M_i` but avoids the block's last vertex `ki - 1`. That reserved vertex is
//! what keeps the matching unique: it lies in `M_i` only, so every perfect
//! matching is forced to use `M_i`, and induction kills all alternatives.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::formulas::{binom, coeff_b, f_theorem};
use crate::hypergraph::{complement_edge, Hypergraph, PerfectMatching, Stratification};
use crate::matching::is_unique_pm;

/// An extremal graph together with its unique perfect matching.
#[derive(Clone, Debug)]
pub struct ExtremalWitness {
    pub k: usize,
    pub m: usize,
    pub hypergraph: Hypergraph,
    pub matching: PerfectMatching,
}

/// One maximal-size graph produced by swapping a non-matching edge of the
/// two-block extremal graph for its complement.
#[derive(Clone, Debug)]
pub struct SwapVariant {
    /// The edge that was removed (sorted, 0-based).
    pub removed: Vec<usize>,
    /// Its complement, which took its place.
    pub added: Vec<usize>,
    pub hypergraph: Hypergraph,
}

/// Builds the extremal k-graph on `km` vertices, materialized iteratively
/// from one block up to `m`.
///
/// The edge count is checked against the closed-form maximum before
/// returning, so a successful return is itself a small certificate. Beyond
/// 64 vertices the bit-set mirror is unavailable and downstream matching
/// queries fall back to slower list arithmetic; construction itself has no
/// hard size limit.
pub fn build_extremal(k: usize, m: usize) -> Result<ExtremalWitness> {
    if k < 2 {
        return Err(Error::UniformityTooSmall(k));
    }
    if m < 1 {
        return Err(Error::domain(
            "construction",
            "at least one matching block is required (m >= 1)".to_string(),
        ));
    }
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for i in 1..=m {
        // All k-sets meeting the new block but avoiding its last vertex:
        // choose from {0, .., ki-2} and require a vertex >= k(i-1).
        let top = k * i - 1;
        let lowest_new = k * (i - 1);
        let mut stack: Vec<usize> = Vec::with_capacity(k);
        push_ksets_meeting(&mut edges, &mut stack, 0, top, lowest_new, k);
        edges.push((lowest_new..=top).collect());
    }
    let expected = f_theorem(k, m)?;
    assert_eq!(
        BigUint::from(edges.len()),
        expected,
        "construction must attain the closed-form maximum for k={k}, m={m}"
    );
    let hypergraph = Hypergraph::new(k * m, k, edges)?;
    let matching = PerfectMatching::canonical(k, m);
    debug_assert_eq!(hypergraph.degrees()[k * m - 1], 1);
    Ok(ExtremalWitness {
        k,
        m,
        hypergraph,
        matching,
    })
}

/// Appends to `out` every k-set drawn from `{next, .., top-1}` (plus whatever
/// `stack` already holds) that contains at least one vertex `>= lowest_new`.
fn push_ksets_meeting(
    out: &mut Vec<Vec<usize>>,
    stack: &mut Vec<usize>,
    next: usize,
    top: usize,
    lowest_new: usize,
    k: usize,
) {
    if stack.len() == k {
        if stack.iter().any(|&v| v >= lowest_new) {
            out.push(stack.clone());
        }
        return;
    }
    let needed = k - stack.len();
    for v in next..top {
        if top - v < needed {
            break;
        }
        stack.push(v);
        push_ksets_meeting(out, stack, v + 1, top, lowest_new, k);
        stack.pop();
    }
}

/// For each non-matching edge `E` of the two-block extremal graph, the graph
/// with `E` replaced by its complement. Every result has the maximal edge
/// count and a unique perfect matching (both re-checked here), yet is a
/// different edge set — and for `k >= 3`, generally not even isomorphic to
/// the original.
///
/// For `k = 2` the list is empty: the four-vertex extremal graph is unique
/// up to isomorphism, and each swap merely relabels it.
pub fn complement_swap_variants(k: usize) -> Result<Vec<SwapVariant>> {
    if k < 2 {
        return Err(Error::UniformityTooSmall(k));
    }
    if k == 2 {
        return Ok(Vec::new());
    }
    let base = build_extremal(k, 2)?;
    let n = 2 * k;
    let mut variants = Vec::new();
    for e in base.hypergraph.edges() {
        if base.matching.blocks().contains(e) {
            continue;
        }
        let comp = complement_edge(n, e)?;
        let swapped = base.hypergraph.without_edge(e).with_edge(&comp)?;
        assert_eq!(
            swapped.edge_count(),
            base.hypergraph.edge_count(),
            "complement of a non-matching edge is never already present"
        );
        let pm = is_unique_pm(&swapped).expect("swap preserves matching uniqueness");
        assert_eq!(pm, base.matching);
        variants.push(SwapVariant {
            removed: e.clone(),
            added: comp,
            hypergraph: swapped,
        });
    }
    Ok(variants)
}

/// Stratifies the extremal graph and checks every stratum against its
/// closed-form size: `m` edges in the first stratum and
/// `b(k,l) * C(m,l)` in stratum `l`.
pub fn stratification_of_extremal(k: usize, m: usize) -> Result<Stratification> {
    let w = build_extremal(k, m)?;
    let s = w.hypergraph.stratify(&w.matching)?;
    assert_eq!(s.count(1), m as u64, "first stratum holds the m blocks");
    for ell in 2..=k {
        let expected = coeff_b(k, ell)? * binom(m, ell);
        assert_eq!(
            BigUint::from(s.count(ell)),
            expected,
            "stratum {ell} of the k={k}, m={m} extremal graph"
        );
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{f_telescoped, f_u64};
    use itertools::Itertools;

    #[test]
    fn smallest_nontrivial_triple_system() {
        let w = build_extremal(3, 2).unwrap();
        assert_eq!(w.hypergraph.n(), 6);
        assert_eq!(w.hypergraph.edge_count(), 11);
        // Blocks plus the nine triples inside {0..4} that meet {3,4}.
        let mut expected: Vec<Vec<usize>> = vec![vec![0, 1, 2], vec![3, 4, 5]];
        for t in (0..5).combinations(3) {
            if t.iter().any(|&v| v >= 3) {
                expected.push(t);
            }
        }
        expected.sort();
        assert_eq!(w.hypergraph.edges(), expected.as_slice());
    }

    #[test]
    fn classical_graph_case() {
        let w = build_extremal(2, 3).unwrap();
        assert_eq!(w.hypergraph.edge_count(), 9);
    }

    #[test]
    fn single_block_is_one_edge() {
        let w = build_extremal(4, 1).unwrap();
        assert_eq!(w.hypergraph.edges(), &[vec![0, 1, 2, 3]]);
        assert_eq!(w.matching.blocks(), &[vec![0, 1, 2, 3]]);
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(build_extremal(1, 2).is_err());
        assert!(build_extremal(3, 0).is_err());
    }

    #[test]
    fn edge_count_matches_both_formulas_at_desk_scale() {
        for k in 2..=5 {
            for m in 1..=(20 / k) {
                let w = build_extremal(k, m).unwrap();
                let count = BigUint::from(w.hypergraph.edge_count());
                assert_eq!(count, f_theorem(k, m).unwrap(), "k={k}, m={m}");
                assert_eq!(count, f_telescoped(k, m).unwrap(), "k={k}, m={m}");
            }
        }
    }

    #[test]
    fn construction_is_nested_in_m() {
        for k in [2, 3] {
            let mut previous: Option<Hypergraph> = None;
            for m in 1..=4 {
                let current = build_extremal(k, m).unwrap().hypergraph;
                if let Some(prev) = previous {
                    for e in prev.edges() {
                        assert!(current.has_edge(e), "k={k}: H*_{} loses {e:?}", m - 1);
                    }
                }
                previous = Some(current);
            }
        }
    }

    #[test]
    fn last_vertex_has_degree_one() {
        for (k, m) in [(2, 4), (3, 3), (4, 2), (5, 2)] {
            let w = build_extremal(k, m).unwrap();
            let deg = w.hypergraph.degrees();
            assert_eq!(deg[k * m - 1], 1, "k={k}, m={m}");
        }
    }

    #[test]
    fn stratification_table() {
        assert_eq!(
            stratification_of_extremal(3, 3).unwrap().counts(),
            &[3, 27, 18]
        );
        assert_eq!(stratification_of_extremal(2, 4).unwrap().counts(), &[4, 12]);
        assert_eq!(
            stratification_of_extremal(3, 1).unwrap().counts(),
            &[1, 0, 0]
        );
    }

    #[test]
    fn saturation_of_the_triple_system() {
        // Adding any absent triple creates a second perfect matching.
        let w = build_extremal(3, 2).unwrap();
        let absent: Vec<Vec<usize>> = (0..6)
            .combinations(3)
            .filter(|t| !w.hypergraph.has_edge(t))
            .collect();
        assert_eq!(absent.len(), 9);
        for t in absent {
            let bigger = w.hypergraph.with_edge(&t).unwrap();
            assert!(
                is_unique_pm(&bigger).is_none(),
                "adding {t:?} must break uniqueness"
            );
        }
    }

    #[test]
    fn swap_variants_for_pairs_are_empty() {
        assert!(complement_swap_variants(2).unwrap().is_empty());
        assert!(complement_swap_variants(1).is_err());
    }

    #[test]
    fn swap_variants_for_triples() {
        let variants = complement_swap_variants(3).unwrap();
        assert_eq!(variants.len(), 9);
        for v in &variants {
            assert_eq!(v.hypergraph.edge_count(), 11);
            assert!(v.hypergraph.has_edge(&v.added));
            assert!(!v.hypergraph.has_edge(&v.removed));
        }
        // The variant from removing {0,1,3} gains {2,4,5}; its minimum degree
        // is 2, while the base graph has a degree-1 vertex, so the two cannot
        // be isomorphic.
        let v = variants
            .iter()
            .find(|v| v.removed == vec![0, 1, 3])
            .expect("edge {0,1,3} is a non-matching edge");
        assert_eq!(v.added, vec![2, 4, 5]);
        assert_eq!(v.hypergraph.degrees().iter().min(), Some(&2));
        let base = build_extremal(3, 2).unwrap();
        assert_eq!(base.hypergraph.degrees().iter().min(), Some(&1));
    }

    #[test]
    fn swap_variant_count_matches_cross_edge_count() {
        // One variant per non-matching edge: f(k,2) - 2 of them.
        for k in [3, 4] {
            let variants = complement_swap_variants(k).unwrap();
            assert_eq!(variants.len(), f_u64(k, 2).unwrap() as usize - 2);
        }
    }
}
