//! Exact small-`n` extremal search for odd-prism-free graphs.
//!
//! Labeled graphs on `n ≤ 8` vertices are walked by edge-mask backtracking
//! in lexicographic edge order. A branch only includes an edge while the
//! graph stays prism-free; since freeness is closed under edge deletion the
//! free graphs form a down-set and every free graph is reached exactly once.
//! Both objectives (edge count, spectral radius) are nondecreasing under
//! edge addition, so only edge-maximal free graphs are scored. An excluded
//! edge is dropped early when adding it together with every still
//! undecided edge stays free, because such an edge could never become
//! blocked.
//!
//! Isomorphism-free generation is deliberately not used: past `n = 8` feed
//! complete graph6 lists from an external generator to [`ingest_graph6_stream`].

mod certificate;
mod engine;
mod stream;
mod theorems;

pub use certificate::{ExtremalCertificate, FormulaComparison, Mode, Optimum, Provenance, SearchStats};
pub use engine::{brute_force_ex, brute_force_spex, brute_force, enumerate_maximal_free, unpruned_scan};
pub use stream::ingest_graph6_stream;
pub use theorems::{verify_theorems, TheoremRow, TheoremTable, THEOREM_CSV_HEADER};

/// Largest `n` for the built-in enumeration.
pub const ENUMERATION_CAP: usize = 8;
/// Largest `n` for the unpruned `2^(n(n-1)/2)` scan.
pub const UNPRUNED_CAP: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchOptions {
    /// Power-iteration tolerance for spectral scoring.
    pub tolerance: f64,
    /// Radii within this margin of the optimum count as ties.
    pub margin: f64,
    /// Node-expansion cap; `None` runs to completion.
    pub node_cap: Option<u64>,
    /// Edge decisions fixed before work is split into parallel tasks.
    pub split_depth: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { tolerance: 1e-10, margin: 1e-7, node_cap: None, split_depth: 8 }
    }
}
