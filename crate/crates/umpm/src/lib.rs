//! Maximum-size k-uniform hypergraphs with a unique perfect matching.
//!
//! A k-graph on `km` vertices that has exactly one perfect matching can have
//! at most
//!
//! ```text
//! f(k, m) = m + sum_{l=2}^{k} b(k,l) * C(m, l)
//! ```
//!
//! edges, and this bound is attained. This crate makes every ingredient of
//! that statement executable at desk scale:
//!
//! - [`formulas`] evaluates `f` and the stratum coefficients `b(k,l)` in
//!   exact big-integer arithmetic, by two independent routes;
//! - [`construction`] builds the extremal graphs attaining the bound,
//!   together with their complement-swap variants for two blocks;
//! - [`matching`] enumerates and counts perfect matchings exactly, with a
//!   deliberately naive oracle for cross-checking;
//! - [`coverings`] enumerates the type vectors, transversal classes, and
//!   coverings whose double counting forces the bound;
//! - [`search`] verifies tightness by exhausting all unique-PM hypergraphs
//!   on small vertex sets, up to isomorphism via canonical forms;
//! - [`hypergraph`] is the shared value type, with a plain-text `.khg`
//!   serialization.
//!
//! Vertices are `0..n` inside the library; the text format and the CLI
//! number them from 1.

pub mod construction;
pub mod coverings;
pub mod error;
pub mod formulas;
pub mod hypergraph;
pub mod matching;
pub mod search;

pub use construction::{
    build_extremal, complement_swap_variants, stratification_of_extremal, ExtremalWitness,
    SwapVariant,
};
pub use coverings::{
    count_g, count_g_a_closed, cyclic_covering, enumerate_coverings, enumerate_g, enumerate_g_a,
    enumerate_types, incidence_stats, type_of, BlockFamily, Covering, IncidenceStats, TypeVector,
};
pub use error::{Error, Result};
pub use formulas::{binom, coeff_b, f_telescoped, f_theorem, f_u64};
pub use hypergraph::{complement_edge, Hypergraph, Matching, PerfectMatching, Stratification};
pub use matching::{
    count_perfect_matchings, enumerate_perfect_matchings, is_unique_pm, oracle_count_pm,
    MatchingCount,
};
pub use search::{
    canonical_form, exhaustive_max, exhaustive_max_with_threads, sample_unique_pm,
    verify_local_bound, CanonicalForm, LocalBoundRow, SearchMode, SearchReport,
};
