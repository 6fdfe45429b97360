//! Type vectors, transversal k-sets, coverings of a block family, and the
//! double-counting incidence numbers behind the stratum bound.
//!
//! Throughout, a *block family* is a set of `l` disjoint k-blocks (a slice of
//! a perfect matching), `G` is the class of k-sets on its ground set that
//! meet every block, and a *covering* is a set of `l` members of `G` that
//! partition the ground set. Everything here is enumerated exactly, so the
//! counting identities can be checked rather than trusted.

use std::fmt;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::formulas::binom;
use crate::hypergraph::sorted_disjoint;

/// Product of `1..=n` as an exact integer.
fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Hard ceiling on the ground-set size for the enumerations in this module;
/// the covering search is super-exponential beyond it.
const ENUMERATION_LIMIT: usize = 12;

fn check_enumeration_guard(k: usize, ell: usize) -> Result<()> {
    if ell * k > ENUMERATION_LIMIT {
        return Err(Error::Guard(format!(
            "enumeration accepts l*k <= {ENUMERATION_LIMIT}, got l*k = {}",
            ell * k
        )));
    }
    Ok(())
}

/// Intersection pattern of a k-set with `l` blocks: positive parts, sorted
/// non-increasing, summing to k.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeVector {
    parts: Vec<usize>,
}

impl TypeVector {
    /// Sorts the parts non-increasing; rejects empty or non-positive parts.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::domain(
                "type vector",
                format!("parts must be positive and nonempty, got {parts:?}"),
            ));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts (the `l` it belongs with).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of parts (the `k` it belongs with).
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Validates membership in the type class for (`k`, `ell`).
    fn check_in(&self, k: usize, ell: usize) -> Result<()> {
        if self.len() != ell || self.total() != k {
            return Err(Error::domain(
                "type vector",
                format!("{self} is not a partition of {k} into {ell} positive parts"),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().join(","))
    }
}

/// All partitions of `k` into exactly `ell` positive non-increasing parts,
/// in lexicographically decreasing order.
pub fn enumerate_types(k: usize, ell: usize) -> Result<Vec<TypeVector>> {
    if ell < 2 || ell > k {
        return Err(Error::domain(
            "type enumeration",
            format!("need 2 <= l <= k, got k={k}, l={ell}"),
        ));
    }
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(ell);
    descend(k, ell, k, &mut parts, &mut out);
    Ok(out)
}

fn descend(
    remaining: usize,
    slots: usize,
    max_part: usize,
    parts: &mut Vec<usize>,
    out: &mut Vec<TypeVector>,
) {
    if slots == 1 {
        if remaining >= 1 && remaining <= max_part {
            let mut v = parts.clone();
            v.push(remaining);
            out.push(TypeVector { parts: v });
        }
        return;
    }
    // Largest first yields lexicographically decreasing output; each later
    // slot still needs at least 1.
    let hi = max_part.min(remaining - (slots - 1));
    let lo = remaining.div_ceil(slots);
    for p in (lo..=hi).rev() {
        parts.push(p);
        descend(remaining - p, slots - 1, p, parts, out);
        parts.pop();
    }
}

/// A family of `l` pairwise-disjoint k-blocks (2 <= l <= k), the stage on
/// which coverings live. The ground set is the union of the blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockFamily {
    blocks: Vec<Vec<usize>>,
    ground: Vec<usize>,
    k: usize,
}

impl BlockFamily {
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let ell = blocks.len();
        let mut canon: Vec<Vec<usize>> = Vec::with_capacity(ell);
        let mut k = 0;
        for b in blocks {
            let mut b = b;
            b.sort_unstable();
            b.dedup();
            if k == 0 {
                k = b.len();
            }
            if b.len() != k || k == 0 {
                return Err(Error::domain(
                    "block family",
                    "blocks must all have the same positive size".to_string(),
                ));
            }
            canon.push(b);
        }
        if ell < 2 || ell > k {
            return Err(Error::domain(
                "block family",
                format!("need 2 <= l <= k blocks, got l={ell}, k={k}"),
            ));
        }
        canon.sort_unstable();
        let mut ground: Vec<usize> = canon.iter().flatten().copied().collect();
        ground.sort_unstable();
        if ground.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotAPartition(
                "blocks of a family must be pairwise disjoint".to_string(),
            ));
        }
        Ok(Self {
            blocks: canon,
            ground,
            k,
        })
    }

    /// The family `{0..k-1}, {k..2k-1}, ..` of `ell` consecutive blocks.
    pub fn canonical(k: usize, ell: usize) -> Result<Self> {
        Self::new((0..ell).map(|i| (i * k..(i + 1) * k).collect()).collect())
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of blocks.
    pub fn ell(&self) -> usize {
        self.blocks.len()
    }

    /// Sorted union of the blocks.
    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    /// Which block a ground vertex belongs to, or `None` off the ground set.
    fn block_of(&self, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&v).is_ok())
    }
}

/// The intersection pattern of `e` with the family's blocks.
///
/// Errors when `e` is not a k-set on the ground set or misses some block
/// (such a set has no type).
pub fn type_of(e: &[usize], fam: &BlockFamily) -> Result<TypeVector> {
    let mut e = e.to_vec();
    e.sort_unstable();
    e.dedup();
    if e.len() != fam.k() {
        return Err(Error::domain(
            "type",
            format!("expected {} distinct vertices, got {e:?}", fam.k()),
        ));
    }
    let mut sizes = vec![0usize; fam.ell()];
    for &v in &e {
        match fam.block_of(v) {
            Some(j) => sizes[j] += 1,
            None => {
                return Err(Error::domain(
                    "type",
                    format!("vertex {v} is outside the family ground set"),
                ))
            }
        }
    }
    if let Some(block) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::TypeMissesBlock { block });
    }
    TypeVector::new(sizes)
}

/// Size of the class `G` — k-sets on the ground set of `ell` k-blocks that
/// meet every block — by inclusion–exclusion over missed blocks:
///
/// ```text
/// |G| = sum_{i=0}^{l-1} (-1)^i C(l, i) C(k(l-i), k)
/// ```
pub fn count_g(k: usize, ell: usize) -> Result<BigUint> {
    if ell < 2 || ell > k {
        return Err(Error::domain(
            "transversal count",
            format!("need 2 <= l <= k, got k={k}, l={ell}"),
        ));
    }
    let mut sum = BigInt::zero();
    for i in 0..ell {
        let term = BigInt::from(binom(ell, i)) * BigInt::from(binom(k * (ell - i), k));
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.sign() != Sign::Plus {
        return Err(Error::domain(
            "transversal count",
            format!("inclusion-exclusion for k={k}, l={ell} is not positive"),
        ));
    }
    Ok(sum.to_biguint().expect("sign checked above"))
}

/// All members of `G` for the given family, in lexicographic order.
/// Guarded to ground sets of at most 12 vertices.
pub fn enumerate_g(fam: &BlockFamily) -> Result<Vec<Vec<usize>>> {
    check_enumeration_guard(fam.k(), fam.ell())?;
    Ok(fam
        .ground()
        .iter()
        .copied()
        .combinations(fam.k())
        .filter(|e| type_of(e, fam).is_ok())
        .collect())
}

/// The members of `G` whose type is exactly `a`. Same guard as
/// [`enumerate_g`].
pub fn enumerate_g_a(fam: &BlockFamily, a: &TypeVector) -> Result<Vec<Vec<usize>>> {
    a.check_in(fam.k(), fam.ell())?;
    check_enumeration_guard(fam.k(), fam.ell())?;
    Ok(fam
        .ground()
        .iter()
        .copied()
        .combinations(fam.k())
        .filter(|e| type_of(e, fam).is_ok_and(|t| t == *a))
        .collect())
}

/// Closed-form size of `G_a`: the number of distinct arrangements of the
/// multiset `a` over the `l` blocks, times `prod_i C(k, a_i)` choices inside
/// the blocks. No enumeration, no guard.
pub fn count_g_a_closed(k: usize, ell: usize, a: &TypeVector) -> Result<BigUint> {
    a.check_in(k, ell)?;
    let mut arrangements = factorial(ell);
    for (_, group) in &a.parts().iter().chunk_by(|p| **p) {
        arrangements /= factorial(group.count());
    }
    let mut inside = BigUint::from(1u32);
    for &part in a.parts() {
        inside *= binom(k, part);
    }
    Ok(arrangements * inside)
}

/// A set of `l` k-sets that each meet every block of a family and jointly
/// partition its ground set. Stored in canonical (sorted) order; coverings
/// are unordered collections.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Covering {
    edges: Vec<Vec<usize>>,
}

impl Covering {
    /// Validates both defining conditions against the family: every member
    /// meets every block, and the members partition the ground set.
    pub fn new(fam: &BlockFamily, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut canon: Vec<Vec<usize>> = Vec::with_capacity(edges.len());
        for e in edges {
            let mut e = e;
            e.sort_unstable();
            type_of(&e, fam)?;
            canon.push(e);
        }
        canon.sort_unstable();
        let mut union: Vec<usize> = canon.iter().flatten().copied().collect();
        union.sort_unstable();
        if union != fam.ground() {
            return Err(Error::domain(
                "covering",
                "members must partition the ground set".to_string(),
            ));
        }
        Ok(Self { edges: canon })
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Whether the given k-set (in any order) is a member.
    pub fn contains(&self, e: &[usize]) -> bool {
        let mut key = e.to_vec();
        key.sort_unstable();
        self.edges.binary_search(&key).is_ok()
    }
}

/// The deterministic covering of type `a` obtained by cyclic shifts: member
/// `i` takes `a[(j + i) mod l]` vertices from block `j`, always consuming the
/// lowest-index unused vertices. Because each block hands out
/// `sum_i a[(j+i) mod l] = k` vertices in total, the members exhaust every
/// block exactly, so the construction cannot fail.
pub fn cyclic_covering(fam: &BlockFamily, a: &TypeVector) -> Result<Covering> {
    a.check_in(fam.k(), fam.ell())?;
    let ell = fam.ell();
    let mut next_unused = vec![0usize; ell];
    let mut members = Vec::with_capacity(ell);
    for i in 0..ell {
        let mut member = Vec::with_capacity(fam.k());
        for (j, block) in fam.blocks().iter().enumerate() {
            let take = a.parts()[(j + i) % ell];
            for _ in 0..take {
                member.push(block[next_unused[j]]);
                next_unused[j] += 1;
            }
        }
        members.push(member);
    }
    Covering::new(fam, members)
}

/// Every covering whose members all have type `a`, in canonical order.
/// Guarded to ground sets of at most 12 vertices.
///
/// This is an exact-cover search over [`enumerate_g_a`] candidates, always
/// branching on the lowest uncovered ground vertex, so each unordered
/// covering is produced exactly once.
pub fn enumerate_coverings(fam: &BlockFamily, a: &TypeVector) -> Result<Vec<Covering>> {
    let candidates = enumerate_g_a(fam, a)?;
    let ground = fam.ground().to_vec();
    let mut chosen: Vec<usize> = Vec::with_capacity(fam.ell());
    let mut used: Vec<Vec<usize>> = Vec::with_capacity(fam.ell());
    let mut found = Vec::new();
    cover_search(&candidates, &ground, &mut chosen, &mut used, &mut found);
    let mut coverings = Vec::with_capacity(found.len());
    for indices in found {
        let members = indices.iter().map(|&i| candidates[i].clone()).collect();
        coverings.push(Covering::new(fam, members)?);
    }
    coverings.sort();
    Ok(coverings)
}

fn cover_search(
    candidates: &[Vec<usize>],
    ground: &[usize],
    chosen: &mut Vec<usize>,
    used: &mut Vec<Vec<usize>>,
    found: &mut Vec<Vec<usize>>,
) {
    let low = match ground
        .iter()
        .find(|v| !used.iter().any(|e| e.binary_search(v).is_ok()))
    {
        Some(&v) => v,
        None => {
            found.push(chosen.clone());
            return;
        }
    };
    let start = chosen.last().map_or(0, |&i| i + 1);
    for i in start..candidates.len() {
        let c = &candidates[i];
        if c.binary_search(&low).is_err() {
            continue;
        }
        if !used.iter().all(|e| sorted_disjoint(e, c)) {
            continue;
        }
        chosen.push(i);
        used.push(c.clone());
        cover_search(candidates, ground, chosen, used, found);
        used.pop();
        chosen.pop();
    }
}

/// The double-counting numbers for one family and type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IncidenceStats {
    /// Size of `G_a`.
    pub g_a: u64,
    /// Number of type-`a` coverings.
    pub c_a: u64,
    /// Coverings through any fixed member of `G_a`: `c_a * l / g_a`.
    pub per_edge: u64,
    /// Members of the full class `G` through any fixed vertex: `|G| / l`.
    pub eta: u64,
}

/// Computes the incidence numbers by formula *and* by direct counting, and
/// errors unless the two agree everywhere: every member of `G_a` must lie in
/// exactly `c_a * l / g_a` coverings, and every ground vertex in exactly
/// `|G| / l` members of `G`.
pub fn incidence_stats(fam: &BlockFamily, a: &TypeVector) -> Result<IncidenceStats> {
    let members = enumerate_g_a(fam, a)?;
    let coverings = enumerate_coverings(fam, a)?;
    let g_a = members.len() as u64;
    let c_a = coverings.len() as u64;
    let ell = fam.ell() as u64;
    if g_a == 0 || !(c_a * ell).is_multiple_of(g_a) {
        return Err(Error::domain(
            "incidence",
            format!(
                "c_a*l = {} is not a positive multiple of g_a = {g_a}",
                c_a * ell
            ),
        ));
    }
    let per_edge = c_a * ell / g_a;
    for e in &members {
        let direct = coverings.iter().filter(|c| c.contains(e)).count() as u64;
        if direct != per_edge {
            return Err(Error::domain(
                "incidence",
                format!("member {e:?} lies in {direct} coverings, expected {per_edge}"),
            ));
        }
    }
    let g_all = enumerate_g(fam)?;
    let total = g_all.len() as u64;
    if !total.is_multiple_of(ell) {
        return Err(Error::domain(
            "incidence",
            format!("|G| = {total} is not divisible by l = {ell}"),
        ));
    }
    let eta = total / ell;
    for &v in fam.ground() {
        let direct = g_all.iter().filter(|e| e.binary_search(&v).is_ok()).count() as u64;
        if direct != eta {
            return Err(Error::domain(
                "incidence",
                format!("vertex {v} lies in {direct} members of G, expected {eta}"),
            ));
        }
    }
    Ok(IncidenceStats {
        g_a,
        c_a,
        per_edge,
        eta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::coeff_b;

    fn tv(parts: &[usize]) -> TypeVector {
        TypeVector::new(parts.to_vec()).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn type_vectors_sort_non_increasing() {
        assert_eq!(tv(&[1, 3, 2]).parts(), &[3, 2, 1]);
        assert!(TypeVector::new(vec![2, 0, 1]).is_err());
        assert!(TypeVector::new(vec![]).is_err());
    }

    #[test]
    fn type_enumeration_small_cases() {
        assert_eq!(enumerate_types(3, 2).unwrap(), vec![tv(&[2, 1])]);
        assert_eq!(
            enumerate_types(4, 2).unwrap(),
            vec![tv(&[3, 1]), tv(&[2, 2])]
        );
        assert_eq!(enumerate_types(3, 3).unwrap(), vec![tv(&[1, 1, 1])]);
        assert_eq!(
            enumerate_types(6, 3).unwrap(),
            vec![tv(&[4, 1, 1]), tv(&[3, 2, 1]), tv(&[2, 2, 2])]
        );
        assert!(enumerate_types(3, 1).is_err());
        assert!(enumerate_types(3, 4).is_err());
    }

    #[test]
    fn type_enumeration_matches_composition_filter() {
        // Oracle: filter all compositions with parts in 1..=k.
        for k in 2..=7 {
            for ell in 2..=k {
                let types = enumerate_types(k, ell).unwrap();
                let mut oracle: Vec<TypeVector> = (0..ell)
                    .map(|_| 1..=k)
                    .multi_cartesian_product()
                    .filter(|c| c.iter().sum::<usize>() == k)
                    .map(|c| TypeVector::new(c).unwrap())
                    .collect();
                oracle.sort();
                oracle.dedup();
                oracle.reverse();
                assert_eq!(types, oracle, "k={k}, l={ell}");
            }
        }
    }

    #[test]
    fn types_of_explicit_sets() {
        let fam = BlockFamily::canonical(3, 2).unwrap();
        assert_eq!(type_of(&[0, 1, 3], &fam).unwrap(), tv(&[2, 1]));
        assert_eq!(type_of(&[0, 3, 4], &fam).unwrap(), tv(&[2, 1]));
        assert!(matches!(
            type_of(&[0, 1, 2], &fam),
            Err(Error::TypeMissesBlock { block: 1 })
        ));
        assert!(type_of(&[0, 1, 7], &fam).is_err());
    }

    #[test]
    fn transversal_counts() {
        assert_eq!(count_g(3, 2).unwrap(), big(18));
        assert_eq!(count_g(3, 3).unwrap(), big(27));
        assert_eq!(count_g(2, 2).unwrap(), big(4));
        assert_eq!(count_g(6, 2).unwrap(), big(922));
        assert!(count_g(3, 4).is_err());
    }

    #[test]
    fn transversal_enumeration_matches_count() {
        for (k, ell) in [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (5, 2), (6, 2)] {
            let fam = BlockFamily::canonical(k, ell).unwrap();
            let listed = enumerate_g(&fam).unwrap();
            assert_eq!(big(listed.len() as u64), count_g(k, ell).unwrap());
        }
    }

    #[test]
    fn cross_pairs_for_two_blocks_of_two() {
        let fam = BlockFamily::canonical(2, 2).unwrap();
        assert_eq!(
            enumerate_g(&fam).unwrap(),
            vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]
        );
    }

    #[test]
    fn typed_class_sizes() {
        let fam = BlockFamily::canonical(4, 2).unwrap();
        assert_eq!(enumerate_g_a(&fam, &tv(&[3, 1])).unwrap().len(), 32);
        assert_eq!(enumerate_g_a(&fam, &tv(&[2, 2])).unwrap().len(), 36);
        assert_eq!(count_g(4, 2).unwrap(), big(68));
    }

    #[test]
    fn closed_form_class_sizes() {
        assert_eq!(count_g_a_closed(3, 2, &tv(&[2, 1])).unwrap(), big(18));
        assert_eq!(count_g_a_closed(4, 2, &tv(&[2, 2])).unwrap(), big(36));
        assert_eq!(count_g_a_closed(3, 3, &tv(&[1, 1, 1])).unwrap(), big(27));
        assert!(count_g_a_closed(3, 2, &tv(&[1, 1, 1])).is_err());
    }

    #[test]
    fn closed_form_matches_enumeration_in_guard_range() {
        for (k, ell) in [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (5, 2), (6, 2)] {
            let fam = BlockFamily::canonical(k, ell).unwrap();
            for a in enumerate_types(k, ell).unwrap() {
                let listed = enumerate_g_a(&fam, &a).unwrap().len();
                assert_eq!(
                    count_g_a_closed(k, ell, &a).unwrap(),
                    big(listed as u64),
                    "k={k}, l={ell}, a={a}"
                );
            }
        }
    }

    #[test]
    fn typed_classes_partition_the_transversals() {
        for k in 2..=6usize {
            for ell in 2..=k {
                let total: BigUint = enumerate_types(k, ell)
                    .unwrap()
                    .iter()
                    .map(|a| count_g_a_closed(k, ell, a).unwrap())
                    .sum();
                assert_eq!(total, count_g(k, ell).unwrap(), "k={k}, l={ell}");
            }
        }
    }

    #[test]
    fn stratum_coefficient_is_scaled_transversal_count() {
        for k in 2..=6usize {
            for ell in 2..=k {
                let lhs = coeff_b(k, ell).unwrap() * BigUint::from(ell);
                let rhs = count_g(k, ell).unwrap() * BigUint::from(ell - 1);
                assert_eq!(lhs, rhs, "k={k}, l={ell}");
            }
        }
    }

    #[test]
    fn cyclic_coverings_match_worked_examples() {
        let fam = BlockFamily::canonical(3, 2).unwrap();
        let c = cyclic_covering(&fam, &tv(&[2, 1])).unwrap();
        assert_eq!(c.edges(), &[vec![0, 1, 3], vec![2, 4, 5]]);

        let fam = BlockFamily::canonical(2, 2).unwrap();
        let c = cyclic_covering(&fam, &tv(&[1, 1])).unwrap();
        assert_eq!(c.edges(), &[vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn covering_constructor_rejects_bad_input() {
        let fam = BlockFamily::canonical(3, 2).unwrap();
        // Members overlap (both contain 0, union misses vertices).
        assert!(Covering::new(&fam, vec![vec![0, 1, 3], vec![0, 4, 5]]).is_err());
        // A member misses the second block.
        assert!(Covering::new(&fam, vec![vec![0, 1, 2], vec![3, 4, 5]]).is_err());
    }

    #[test]
    fn covering_enumeration_small_cases() {
        let fam = BlockFamily::canonical(3, 2).unwrap();
        let cs = enumerate_coverings(&fam, &tv(&[2, 1])).unwrap();
        assert_eq!(cs.len(), 9);

        let fam = BlockFamily::canonical(2, 2).unwrap();
        let cs = enumerate_coverings(&fam, &tv(&[1, 1])).unwrap();
        assert_eq!(cs.len(), 2);
    }

    #[test]
    fn cyclic_covering_is_always_enumerated() {
        for (k, ell) in [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (5, 2), (6, 2)] {
            let fam = BlockFamily::canonical(k, ell).unwrap();
            for a in enumerate_types(k, ell).unwrap() {
                let cyc = cyclic_covering(&fam, &a).unwrap();
                let all = enumerate_coverings(&fam, &a).unwrap();
                assert!(!all.is_empty(), "k={k}, l={ell}, a={a}");
                assert!(all.contains(&cyc), "k={k}, l={ell}, a={a}");
            }
        }
    }

    #[test]
    fn enumeration_guard_turns_away_large_families() {
        let fam = BlockFamily::canonical(7, 2).unwrap();
        assert!(matches!(enumerate_g(&fam), Err(Error::Guard(_))));
        assert!(matches!(
            enumerate_coverings(&fam, &tv(&[6, 1])),
            Err(Error::Guard(_))
        ));
    }

    #[test]
    fn incidence_worked_examples() {
        let fam = BlockFamily::canonical(3, 2).unwrap();
        let s = incidence_stats(&fam, &tv(&[2, 1])).unwrap();
        assert_eq!(
            s,
            IncidenceStats {
                g_a: 18,
                c_a: 9,
                per_edge: 1,
                eta: 9
            }
        );

        let fam = BlockFamily::canonical(2, 2).unwrap();
        let s = incidence_stats(&fam, &tv(&[1, 1])).unwrap();
        assert_eq!(s.per_edge, 1);
        assert_eq!(s.eta, 2);

        let fam = BlockFamily::canonical(3, 3).unwrap();
        let s = incidence_stats(&fam, &tv(&[1, 1, 1])).unwrap();
        assert_eq!(s.g_a, 27);
        assert_eq!(s.c_a, 36);
        assert_eq!(s.per_edge, 4);
    }

    #[test]
    fn incidence_is_uniform_across_the_guard_range() {
        for (k, ell) in [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (5, 2), (6, 2)] {
            let fam = BlockFamily::canonical(k, ell).unwrap();
            for a in enumerate_types(k, ell).unwrap() {
                // incidence_stats errors internally if any direct count
                // disagrees with the formula.
                let s = incidence_stats(&fam, &a).unwrap();
                assert!(s.per_edge >= 1, "k={k}, l={ell}, a={a}");
            }
        }
    }

    #[test]
    fn families_validate_their_blocks() {
        assert!(BlockFamily::new(vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(BlockFamily::new(vec![vec![0, 1]]).is_err());
        assert!(BlockFamily::new(vec![vec![0, 1, 2], vec![3, 4]]).is_err());
        // l > k: three blocks of size 2.
        assert!(BlockFamily::new(vec![vec![0, 1], vec![2, 3], vec![4, 5]]).is_err());
        // Non-contiguous ground sets are fine.
        let fam = BlockFamily::new(vec![vec![9, 4, 7], vec![0, 2, 11]]).unwrap();
        assert_eq!(fam.ground(), &[0, 2, 4, 7, 9, 11]);
        assert_eq!(fam.blocks()[0], vec![0, 2, 11]);
    }
}
