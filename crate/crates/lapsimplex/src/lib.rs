//! Laplacian simplices of digraphs.
//!
//! A digraph `D` on n vertices determines the lattice simplex spanned by
//! the rows of its Laplacian matrix. This crate computes the invariants of
//! that simplex exactly: converging-tree counts, normalized volume,
//! reflexivity, h*-vectors, the integer decomposition property, and the
//! terminal-Fano condition, together with the survey and search commands
//! built on them.

pub mod analyze;
pub mod digraph;
pub mod ehrhart;
pub mod error;
pub mod idp;
pub mod io;
pub mod linalg;
pub mod simplex;
pub mod smith;
pub mod survey;
pub mod trees;
pub mod verify;

pub use digraph::{complete_digraph, CycleSpec, Digraph, NonUnimodalSpec, SimpleGraph, StarSpec};
pub use error::{Error, Result};
pub use linalg::{IntMatrix, Rational, RationalVector};
pub use simplex::{cycle_reflexivity, is_reflexive_divisibility, LatticeSimplex};
pub use trees::{laplacian_matrix, tree_counts, tree_counts_bruteforce, TreeCounts};

/// Work limits for exhaustive enumerations. Refusals are loud errors, never
/// silently truncated results.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Maximum candidate points a bounding-box scan (or materialized point
    /// set) may touch.
    pub scan_candidates: u128,
    /// Maximum out-arc choice tuples per root in the exhaustive tree-count
    /// oracle.
    pub bruteforce_per_root: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            scan_candidates: 100_000_000,
            bruteforce_per_root: 10_000_000,
        }
    }
}

impl Budget {
    /// Default budget with the point-scan limit optionally overridden by the
    /// `LAPSIMPLEX_BUDGET` environment variable.
    pub fn from_env() -> Budget {
        let mut budget = Budget::default();
        if let Some(v) = std::env::var("LAPSIMPLEX_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse::<u128>().ok())
        {
            budget.scan_candidates = v;
        }
        budget
    }
}

/// Size the worker pool used by surveys and searches. Call once, before any
/// parallel work runs.
pub fn configure_workers(threads: usize) -> std::result::Result<(), String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}
