//! Finite loop-free multidigraphs and the generators used by the surveys.
//!
//! Vertices are `0..n` internally; the 1-based labels of the input format are
//! converted at the parse/print boundary only. Generator specs (`CycleSpec`,
//! `StarSpec`, ...) keep the 1-based labels of their defining formulas.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Loop-free multidigraph on `n` vertices, stored as a multiplicity matrix:
/// `mult[i][j]` = number of directed edges from `i` to `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    mult: Vec<u64>,
}

impl Digraph {
    /// Edgeless digraph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDigraph("vertex count must be >= 1".into()));
        }
        Ok(Digraph {
            n,
            mult: vec![0; n * n],
        })
    }

    pub fn from_mult_matrix(n: usize, mult: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDigraph("vertex count must be >= 1".into()));
        }
        if mult.len() != n * n {
            return Err(Error::InvalidDigraph(format!(
                "multiplicity matrix has {} entries, expected {}",
                mult.len(),
                n * n
            )));
        }
        for i in 0..n {
            if mult[i * n + i] != 0 {
                return Err(Error::InvalidDigraph(format!(
                    "loop at vertex {} (diagonal must be zero)",
                    i + 1
                )));
            }
        }
        Ok(Digraph { n, mult })
    }

    /// Add `count` parallel edges from `tail` to `head` (0-based).
    pub fn add_edges(&mut self, tail: usize, head: usize, count: u64) -> Result<()> {
        if tail >= self.n || head >= self.n {
            return Err(Error::InvalidDigraph(format!(
                "edge ({}, {}) out of range 1..={}",
                tail + 1,
                head + 1,
                self.n
            )));
        }
        if tail == head {
            return Err(Error::InvalidDigraph(format!(
                "loop at vertex {} rejected",
                tail + 1
            )));
        }
        self.mult[tail * self.n + head] += count;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mult(&self, tail: usize, head: usize) -> u64 {
        self.mult[tail * self.n + head]
    }

    /// Total number of directed edges, counted with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.mult.iter().sum()
    }

    pub fn out_degree(&self, i: usize) -> u64 {
        (0..self.n).map(|j| self.mult(i, j)).sum()
    }

    pub fn in_degree(&self, i: usize) -> u64 {
        (0..self.n).map(|j| self.mult(j, i)).sum()
    }

    /// Distinct directed edges as (tail, head, multiplicity), row-major order.
    pub fn edges(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let m = self.mult(i, j);
                if m > 0 {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    /// At most one edge per ordered pair.
    pub fn is_simple(&self) -> bool {
        self.mult.iter().all(|&m| m <= 1)
    }

    /// Vertices with indegree and outdegree both zero. The constructors do
    /// not reject these: some survey inputs are intentionally anomalous and
    /// must stay representable for diagnosis.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| self.out_degree(i) == 0 && self.in_degree(i) == 0)
            .collect()
    }

    /// Directed reachability between every ordered pair (true for n = 1).
    pub fn is_strongly_connected(&self) -> bool {
        if self.n == 1 {
            return true;
        }
        let forward = |i: usize| (0..self.n).filter(move |&j| self.mult(i, j) > 0);
        let backward = |i: usize| (0..self.n).filter(move |&j| self.mult(j, i) > 0);
        reaches_all(self.n, 0, forward) && reaches_all(self.n, 0, backward)
    }

    /// The simple undirected graph with {i, j} whenever some directed edge
    /// joins i and j in either direction.
    pub fn underlying_graph(&self) -> SimpleGraph {
        let mut edges = BTreeSet::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.mult(i, j) + self.mult(j, i) > 0 {
                    edges.insert((i, j));
                }
            }
        }
        SimpleGraph { n: self.n, edges }
    }
}

fn reaches_all<I>(n: usize, start: usize, neighbors: impl Fn(usize) -> I) -> bool
where
    I: Iterator<Item = usize>,
{
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for w in neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Simple undirected graph; edges stored as ordered pairs (i < j), 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    pub n: usize,
    pub edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDigraph("vertex count must be >= 1".into()));
        }
        let mut edges = BTreeSet::new();
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidDigraph(format!(
                    "edge ({}, {}) out of range 1..={}",
                    a + 1,
                    b + 1,
                    n
                )));
            }
            if a == b {
                return Err(Error::InvalidDigraph(format!(
                    "loop at vertex {} rejected",
                    a + 1
                )));
            }
            edges.insert((a.min(b), a.max(b)));
        }
        Ok(SimpleGraph { n, edges })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All 2^e ways of directing each edge (oriented graphs: never both
    /// directions), in lexicographic order of the per-edge choice word.
    pub fn orientations(&self) -> impl Iterator<Item = Digraph> + '_ {
        let edges: Vec<(usize, usize)> = self.edges.iter().copied().collect();
        ChoiceStream {
            graph: self,
            edges,
            base: 2,
            index: 0,
        }
    }

    /// All 3^e simple digraphs with this underlying graph: per edge {i, j}
    /// choose i->j, j->i, or both. Lexicographic in the choice word.
    pub fn simple_digraphs_over(&self) -> impl Iterator<Item = Digraph> + '_ {
        let edges: Vec<(usize, usize)> = self.edges.iter().copied().collect();
        ChoiceStream {
            graph: self,
            edges,
            base: 3,
            index: 0,
        }
    }

    /// Build the digraph for one choice word; digit k (most significant
    /// first) picks the direction of edge k. Used by parallel searches to
    /// address stream members by index.
    pub fn digraph_at(&self, base: u64, mut index: u128) -> Digraph {
        let edges: Vec<(usize, usize)> = self.edges.iter().copied().collect();
        let mut digits = vec![0u64; edges.len()];
        for d in digits.iter_mut().rev() {
            *d = (index % base as u128) as u64;
            index /= base as u128;
        }
        let mut g = Digraph::new(self.n).expect("n >= 1");
        for (&(a, b), &digit) in edges.iter().zip(&digits) {
            match digit {
                0 => g.add_edges(a, b, 1).expect("valid edge"),
                1 => g.add_edges(b, a, 1).expect("valid edge"),
                _ => {
                    g.add_edges(a, b, 1).expect("valid edge");
                    g.add_edges(b, a, 1).expect("valid edge");
                }
            }
        }
        g
    }
}

struct ChoiceStream<'a> {
    graph: &'a SimpleGraph,
    edges: Vec<(usize, usize)>,
    base: u64,
    index: u128,
}

impl Iterator for ChoiceStream<'_> {
    type Item = Digraph;

    fn next(&mut self) -> Option<Digraph> {
        let total = (self.base as u128).pow(self.edges.len() as u32);
        if self.index >= total {
            return None;
        }
        let g = self.graph.digraph_at(self.base, self.index);
        self.index += 1;
        Some(g)
    }
}

/// Cycle digraph C_n^S: the forward cycle 1 -> 2 -> ... -> n -> 1 plus one
/// backward edge (s, s-1) for each s in S, where s = 1 contributes (1, n).
/// Members of `s` are the 1-based tail labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSpec {
    n: usize,
    s: BTreeSet<usize>,
}

impl CycleSpec {
    pub fn new(n: usize, s: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidSpec {
                what: "cycle",
                reason: format!("need n >= 3, got {n}"),
            });
        }
        let s: BTreeSet<usize> = s.into_iter().collect();
        if let Some(&bad) = s.iter().find(|&&x| x < 1 || x > n) {
            return Err(Error::InvalidSpec {
                what: "cycle",
                reason: format!("backward tail {bad} outside 1..={n}"),
            });
        }
        Ok(CycleSpec { n, s })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tails(&self) -> &BTreeSet<usize> {
        &self.s
    }

    pub fn is_full(&self) -> bool {
        self.s.len() == self.n
    }

    pub fn digraph(&self) -> Digraph {
        let n = self.n;
        let mut g = Digraph::new(n).expect("n >= 3");
        for i in 0..n {
            g.add_edges(i, (i + 1) % n, 1).expect("valid edge");
        }
        for &s in &self.s {
            // tail s, head s-1; s = 1 wraps to head n
            let tail = s - 1;
            let head = (s + n - 2) % n;
            g.add_edges(tail, head, 1).expect("valid edge");
        }
        g
    }

    /// Relabel i -> i - shift (mod n), which maps C_n^S to C_n^{S - shift}.
    pub fn rotated(&self, shift: usize) -> CycleSpec {
        let s = self
            .s
            .iter()
            .map(|&x| (x + self.n - 1 - (shift % self.n)) % self.n + 1)
            .collect();
        CycleSpec { n: self.n, s }
    }

    /// Canonical representative of the rotation class, as the smallest
    /// bitmask over {0, .., n-1} attained by any rotation.
    pub fn canonical_mask(&self) -> u64 {
        let mask: u64 = self.s.iter().map(|&x| 1u64 << (x - 1)).sum();
        (0..self.n)
            .map(|r| ((mask >> r) | (mask << (self.n - r))) & ((1u64 << self.n) - 1))
            .min()
            .unwrap_or(mask)
    }
}

/// Star digraph on m+1 vertices: q_i parallel edges from the center
/// (vertex 1) to vertex i+1 and a single edge back. `q` must be
/// nondecreasing and positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarSpec {
    q: Vec<u64>,
}

impl StarSpec {
    pub fn new(q: Vec<u64>) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::InvalidSpec {
                what: "star",
                reason: "weight list is empty".into(),
            });
        }
        if q.contains(&0) {
            return Err(Error::InvalidSpec {
                what: "star",
                reason: "weights must be positive".into(),
            });
        }
        if q.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidSpec {
                what: "star",
                reason: format!("weights must be nondecreasing, got {q:?}"),
            });
        }
        Ok(StarSpec { q })
    }

    pub fn weights(&self) -> &[u64] {
        &self.q
    }

    pub fn weight_sum(&self) -> u64 {
        self.q.iter().sum()
    }

    pub fn digraph(&self) -> Digraph {
        let m = self.q.len();
        let mut g = Digraph::new(m + 1).expect("m + 1 >= 2");
        for (i, &qi) in self.q.iter().enumerate() {
            g.add_edges(0, i + 1, qi).expect("valid edge");
            g.add_edges(i + 1, 0, 1).expect("valid edge");
        }
        g
    }
}

/// Parameters of the non-unimodal cycle family: alpha <= beta <= k-1 and
/// alpha + beta <= k+1, all positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonUnimodalSpec {
    pub alpha: u64,
    pub beta: u64,
    pub k: u64,
}

impl NonUnimodalSpec {
    pub fn new(alpha: u64, beta: u64, k: u64) -> Result<Self> {
        if alpha == 0 || beta == 0 || k == 0 {
            return Err(Error::InvalidSpec {
                what: "non-unimodal family",
                reason: "parameters must be positive".into(),
            });
        }
        if !(alpha <= beta && beta < k) {
            return Err(Error::InvalidSpec {
                what: "non-unimodal family",
                reason: format!("need alpha <= beta <= k-1, got ({alpha}, {beta}, {k})"),
            });
        }
        if alpha + beta > k + 1 {
            return Err(Error::InvalidSpec {
                what: "non-unimodal family",
                reason: format!("need alpha + beta <= k+1, got ({alpha}, {beta}, {k})"),
            });
        }
        Ok(NonUnimodalSpec { alpha, beta, k })
    }

    /// Number of vertices: 6(k+1) - 2 alpha - beta.
    pub fn n(&self) -> usize {
        (6 * (self.k + 1) - 2 * self.alpha - self.beta) as usize
    }

    /// Backward tails S1 u S2 u S3 of the defining cycle digraph.
    pub fn cycle_spec(&self) -> CycleSpec {
        let (a, b) = (self.alpha, self.beta);
        let mut s = BTreeSet::new();
        for h in 0..a {
            s.insert((1 + 3 * h) as usize);
            s.insert((2 + 3 * h) as usize);
        }
        for h in 0..b - a {
            s.insert((3 * a + 1 + 2 * h) as usize);
        }
        CycleSpec::new(self.n(), s).expect("spec bounds keep S inside [n]")
    }

    pub fn digraph(&self) -> Digraph {
        self.cycle_spec().digraph()
    }
}

/// Complete simple digraph: one edge in each direction for every pair.
pub fn complete_digraph(n: usize) -> Result<Digraph> {
    if n < 2 {
        return Err(Error::InvalidSpec {
            what: "complete digraph",
            reason: format!("need n >= 2, got {n}"),
        });
    }
    let mut g = Digraph::new(n)?;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                g.add_edges(i, j, 1)?;
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_set(g: &Digraph) -> BTreeSet<(usize, usize, u64)> {
        g.edges().into_iter().collect()
    }

    #[test]
    fn cycle_c5_13_matches_figure() {
        // forward 5-cycle plus 1 -> 5 and 3 -> 2 (1-based)
        let g = CycleSpec::new(5, [1, 3]).unwrap().digraph();
        let expect: BTreeSet<(usize, usize, u64)> =
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 4), (2, 1)]
                .into_iter()
                .map(|(a, b)| (a, b, 1))
                .collect();
        assert_eq!(edge_set(&g), expect);
    }

    #[test]
    fn cycle_empty_s_is_directed_triangle() {
        let g = CycleSpec::new(3, []).unwrap().digraph();
        assert_eq!(g.edge_count(), 3);
        assert!(g.is_strongly_connected());
    }

    #[test]
    fn cycle_full_s_doubles_every_edge() {
        let g = CycleSpec::new(3, [1, 2, 3]).unwrap().digraph();
        assert_eq!(g.edge_count(), 6);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g.mult(i, j), g.mult(j, i));
            }
        }
    }

    #[test]
    fn cycle_underlying_graph_is_cycle_for_every_s() {
        for n in 3..=6usize {
            for mask in 0u64..(1 << n) {
                let s = (0..n).filter(|&b| mask >> b & 1 == 1).map(|b| b + 1);
                let spec = CycleSpec::new(n, s).unwrap();
                let cycle_edges: BTreeSet<(usize, usize)> = (0..n)
                    .map(|i| {
                        let j = (i + 1) % n;
                        (i.min(j), i.max(j))
                    })
                    .collect();
                assert_eq!(spec.digraph().underlying_graph().edges, cycle_edges);
            }
        }
    }

    #[test]
    fn star_digraph_multiplicities() {
        let g = StarSpec::new(vec![1, 2, 2]).unwrap().digraph();
        assert_eq!(g.n(), 4);
        assert_eq!(g.mult(0, 1), 1);
        assert_eq!(g.mult(0, 2), 2);
        assert_eq!(g.mult(0, 3), 2);
        for i in 1..4 {
            assert_eq!(g.mult(i, 0), 1);
        }
        assert_eq!(g.out_degree(0), 5);
    }

    #[test]
    fn star_single_weight_is_bidirected_edge() {
        let g = StarSpec::new(vec![1]).unwrap().digraph();
        assert_eq!(g.n(), 2);
        assert_eq!(g.mult(0, 1), 1);
        assert_eq!(g.mult(1, 0), 1);
    }

    #[test]
    fn star_rejects_bad_weights() {
        assert!(StarSpec::new(vec![]).is_err());
        assert!(StarSpec::new(vec![2, 1]).is_err());
        assert!(StarSpec::new(vec![0, 1]).is_err());
    }

    #[test]
    fn complete_digraph_degrees() {
        let g = complete_digraph(4).unwrap();
        assert_eq!(g.edge_count(), 12);
        for i in 0..4 {
            assert_eq!(g.out_degree(i), 3);
        }
        assert_eq!(complete_digraph(2).unwrap().edge_count(), 2);
        assert_eq!(complete_digraph(3).unwrap().edge_count(), 6);
    }

    #[test]
    fn non_unimodal_spec_small_cases() {
        let spec = NonUnimodalSpec::new(1, 1, 2).unwrap();
        assert_eq!(spec.n(), 15);
        assert_eq!(
            spec.cycle_spec().tails().iter().copied().collect::<Vec<_>>(),
            vec![1, 2]
        );

        // alpha=2, beta=2, k=3: S1 = {1, 4}, S2 = {2, 5}, S3 empty
        let spec = NonUnimodalSpec::new(2, 2, 3).unwrap();
        assert_eq!(spec.n(), 18);
        assert_eq!(
            spec.cycle_spec().tails().iter().copied().collect::<Vec<_>>(),
            vec![1, 2, 4, 5]
        );

        // beta > alpha populates S3 (alpha=1, beta=2 needs k >= 3)
        let spec = NonUnimodalSpec::new(1, 2, 3).unwrap();
        assert_eq!(spec.n(), 20);
        assert_eq!(
            spec.cycle_spec().tails().iter().copied().collect::<Vec<_>>(),
            vec![1, 2, 4]
        );
    }

    #[test]
    fn non_unimodal_spec_rejects_out_of_range() {
        // beta must stay <= k-1
        assert!(NonUnimodalSpec::new(1, 2, 2).is_err());
        // alpha + beta must stay <= k+1
        assert!(NonUnimodalSpec::new(3, 3, 4).is_err());
        assert!(NonUnimodalSpec::new(0, 1, 2).is_err());
    }

    #[test]
    fn underlying_graph_of_triangle_variants() {
        let mut g = Digraph::new(3).unwrap();
        for (a, b) in [(0, 1), (1, 2), (2, 0)] {
            g.add_edges(a, b, 1).unwrap();
        }
        let triangle: BTreeSet<(usize, usize)> = [(0, 1), (0, 2), (1, 2)].into_iter().collect();
        assert_eq!(g.underlying_graph().edges, triangle);

        // the printed 3-vertex example with an extra 3 -> 2 edge
        g.add_edges(2, 1, 1).unwrap();
        assert_eq!(g.underlying_graph().edges, triangle);

        let star = StarSpec::new(vec![1, 2]).unwrap().digraph();
        let expect: BTreeSet<(usize, usize)> = [(0, 1), (0, 2)].into_iter().collect();
        assert_eq!(star.underlying_graph().edges, expect);
    }

    #[test]
    fn strong_connectivity_cases() {
        assert!(CycleSpec::new(3, []).unwrap().digraph().is_strongly_connected());

        // two disjoint bidirected edges on 4 vertices
        let mut g = Digraph::new(4).unwrap();
        for (a, b) in [(0, 1), (1, 0), (2, 3), (3, 2)] {
            g.add_edges(a, b, 1).unwrap();
        }
        assert!(!g.is_strongly_connected());

        assert!(Digraph::new(1).unwrap().is_strongly_connected());
    }

    #[test]
    fn constructors_reject_loops() {
        let mut g = Digraph::new(2).unwrap();
        assert!(g.add_edges(0, 0, 1).is_err());
        assert!(Digraph::from_mult_matrix(2, vec![1, 0, 0, 0]).is_err());
    }

    #[test]
    fn orientation_stream_counts() {
        let edge = SimpleGraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(edge.orientations().count(), 2);
        assert_eq!(edge.simple_digraphs_over().count(), 3);

        let path = SimpleGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.simple_digraphs_over().count(), 9);

        let triangle = SimpleGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let orientations: Vec<Digraph> = triangle.orientations().collect();
        assert_eq!(orientations.len(), 8);
        let strong = orientations
            .iter()
            .filter(|g| g.is_strongly_connected())
            .count();
        assert_eq!(strong, 2);
    }

    #[test]
    fn orientation_yields_are_oriented_and_cover_graph() {
        let g = SimpleGraph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3), (1, 3)]).unwrap();
        for d in g.orientations() {
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(d.mult(i, j) * d.mult(j, i), 0);
                }
            }
            assert_eq!(d.underlying_graph(), g);
        }
        for d in g.simple_digraphs_over() {
            assert!(d.is_simple());
            assert_eq!(d.underlying_graph(), g);
        }
    }

    #[test]
    fn canonical_mask_groups_rotations() {
        let a = CycleSpec::new(4, [1, 3]).unwrap();
        let b = CycleSpec::new(4, [2, 4]).unwrap();
        assert_eq!(a.canonical_mask(), b.canonical_mask());
        let c = CycleSpec::new(4, [1, 2]).unwrap();
        assert_ne!(a.canonical_mask(), c.canonical_mask());
    }

    #[test]
    fn rotation_shifts_tails() {
        let spec = CycleSpec::new(5, [1, 3]).unwrap();
        let rot = spec.rotated(2);
        let tails: Vec<usize> = rot.tails().iter().copied().collect();
        assert_eq!(tails, vec![1, 4]);
    }
}
