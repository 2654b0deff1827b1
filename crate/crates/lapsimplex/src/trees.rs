//! Spanning converging trees: the determinant route, an exhaustive oracle,
//! and the closed form for cycle digraphs.
//!
//! A converging tree is a weakly connected digraph with one root of
//! outdegree zero and every other vertex of outdegree one; `c_i` counts the
//! spanning trees of `D` converging to vertex `i`, and the complexity
//! `c(D)` is their total.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::digraph::{CycleSpec, Digraph};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::Budget;

/// Per-root converging tree counts and their total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCounts {
    pub counts: Vec<BigInt>,
    pub total: BigInt,
}

impl TreeCounts {
    fn new(counts: Vec<BigInt>) -> Self {
        let total = counts.iter().sum();
        TreeCounts { counts, total }
    }

    pub fn all_positive(&self) -> bool {
        self.counts.iter().all(|c| c > &BigInt::zero())
    }
}

/// Laplacian matrix L(D) = outdegree matrix - adjacency matrix. Every row
/// sums to zero.
pub fn laplacian_matrix(d: &Digraph) -> IntMatrix {
    let n = d.n();
    let mut l = IntMatrix::zeros(n, n);
    for i in 0..n {
        l.set(i, i, BigInt::from(d.out_degree(i)));
        for j in 0..n {
            if i != j {
                l.set(i, j, -BigInt::from(d.mult(i, j)));
            }
        }
    }
    l
}

/// Tree counts via the Matrix-Tree route: c_i is the (i, i) cofactor of the
/// Laplacian.
pub fn tree_counts(d: &Digraph) -> TreeCounts {
    let l = laplacian_matrix(d);
    let counts = (0..d.n())
        .map(|i| l.minor_determinant(i, i).expect("square with valid index"))
        .collect();
    TreeCounts::new(counts)
}

/// Options for the exhaustive oracle.
#[derive(Debug, Clone, Default)]
pub struct BruteforceOptions {
    pub budget: Budget,
    /// Ignore multiplicities (count each present arc once) for debugging.
    pub simple_support: bool,
}

/// Exhaustive oracle: for each root, iterate every way of giving each
/// non-root vertex one out-arc (weighted by multiplicity) and count the
/// choices whose functional graph reaches the root from everywhere.
///
/// Refuses outright when the per-root choice space exceeds the budget;
/// never returns a partial count.
pub fn tree_counts_bruteforce(d: &Digraph, opts: &BruteforceOptions) -> Result<TreeCounts> {
    let n = d.n();
    let mut out_arcs: Vec<Vec<(usize, u64)>> = Vec::with_capacity(n);
    for i in 0..n {
        out_arcs.push(
            (0..n)
                .filter(|&j| d.mult(i, j) > 0)
                .map(|j| {
                    let w = if opts.simple_support { 1 } else { d.mult(i, j) };
                    (j, w)
                })
                .collect(),
        );
    }

    let mut counts = Vec::with_capacity(n);
    for root in 0..n {
        let mut space: u128 = 1;
        for (i, arcs) in out_arcs.iter().enumerate() {
            if i != root {
                let outdeg: u64 = arcs.iter().map(|&(_, w)| w).sum();
                space = space.saturating_mul(outdeg.max(1) as u128);
            }
        }
        if space > opts.budget.bruteforce_per_root {
            return Err(Error::BudgetExceeded {
                what: format!("enumerating out-arc choices for root {}", root + 1),
                needed: space,
                budget: opts.budget.bruteforce_per_root,
            });
        }
        counts.push(count_for_root(n, root, &out_arcs));
    }
    Ok(TreeCounts::new(counts))
}

fn count_for_root(n: usize, root: usize, out_arcs: &[Vec<(usize, u64)>]) -> BigInt {
    let non_roots: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    if non_roots.iter().any(|&v| out_arcs[v].is_empty()) {
        return BigInt::zero();
    }
    let mut total = BigInt::zero();
    let mut choice = vec![0usize; non_roots.len()];
    loop {
        // successor map for this choice tuple
        let mut succ = vec![usize::MAX; n];
        let mut weight = BigInt::one();
        for (slot, &v) in non_roots.iter().enumerate() {
            let (target, w) = out_arcs[v][choice[slot]];
            succ[v] = target;
            weight *= BigInt::from(w);
        }
        if converges_to_root(n, root, &succ) {
            total += weight;
        }
        // odometer
        let mut slot = 0;
        loop {
            if slot == non_roots.len() {
                return total;
            }
            choice[slot] += 1;
            if choice[slot] < out_arcs[non_roots[slot]].len() {
                break;
            }
            choice[slot] = 0;
            slot += 1;
        }
    }
}

fn converges_to_root(n: usize, root: usize, succ: &[usize]) -> bool {
    // Follow the functional graph from each vertex; every walk must hit the
    // root (cycles never do, since the root has no successor).
    let mut state = vec![0u8; n]; // 0 unknown, 1 on current walk, 2 reaches root
    state[root] = 2;
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut v = start;
        loop {
            match state[v] {
                2 => break,
                1 => return false, // walked into a cycle
                _ => {
                    state[v] = 1;
                    path.push(v);
                    v = succ[v];
                }
            }
        }
        for p in path {
            state[p] = 2;
        }
    }
    true
}

/// Closed-form counts for a cycle digraph: c_i = K_i + 1, where K_i is the
/// longest run i+1, ..., i+j of backward tails (indices mod n, capped at
/// n-1 so a full backward cycle cannot wrap forever).
pub fn cycle_tree_counts(spec: &CycleSpec) -> TreeCounts {
    let n = spec.n();
    let in_s = |label: usize| spec.tails().contains(&((label - 1) % n + 1));
    let counts = (1..=n)
        .map(|i| {
            let mut k = 0usize;
            while k < n - 1 && in_s(i + k + 1) {
                k += 1;
            }
            BigInt::from(k as u64 + 1)
        })
        .collect();
    TreeCounts::new(counts)
}
