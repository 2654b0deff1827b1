//! The lattice simplex spanned by the rows of a digraph Laplacian, with all
//! membership and facet computations in exact arithmetic.
//!
//! A simplex built from a digraph keeps two synchronized vertex lists: the
//! ambient one (rows of L(D), which live in the hyperplane of zero
//! coordinate sum) and a full-dimensional copy obtained by deleting one
//! coordinate. All point sets are reported in ambient coordinates. A simplex
//! may also be built directly from d+1 full-dimensional vertices.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::digraph::{CycleSpec, Digraph};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Rational, RationalVector};
use crate::smith::smith_normal_form;
use crate::trees::{cycle_tree_counts, laplacian_matrix, tree_counts, TreeCounts};
use crate::Budget;

#[derive(Debug)]
pub struct LatticeSimplex {
    /// Vertices in the ambient lattice (n vectors).
    ambient: Vec<Vec<BigInt>>,
    /// Full-dimensional copy (n vectors in dimension n-1).
    full: Vec<Vec<BigInt>>,
    /// Deleted coordinate, when the ambient copy is the hyperplane form.
    drop_col: Option<usize>,
    /// Scaled inverse of the lifted vertex matrix: barycentric coordinates of
    /// (x, t) are `adj * (x, t) / denom` with `denom > 0`.
    adj: IntMatrix,
    denom: BigInt,
    /// Tree counts of the source digraph, when built from one.
    counts: Option<TreeCounts>,
    volume_checked: OnceLock<BigInt>,
    parallelepiped: OnceLock<Vec<ParallelepipedPoint>>,
}

/// A lattice point of the half-open fundamental parallelepiped over the
/// lifted simplex: spatial part (full coordinates) plus its height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelepipedPoint {
    pub point: Vec<BigInt>,
    pub height: u32,
}

impl LatticeSimplex {
    /// The Laplacian simplex of a digraph, deleting the last column for the
    /// full-dimensional copy.
    pub fn from_digraph(d: &Digraph) -> Result<Self> {
        Self::from_digraph_with_drop(d, d.n() - 1)
    }

    /// Same, deleting the chosen column (0-based). All invariants computed
    /// downstream are independent of this choice.
    pub fn from_digraph_with_drop(d: &Digraph, drop_col: usize) -> Result<Self> {
        let n = d.n();
        if drop_col >= n {
            return Err(Error::IndexOutOfRange {
                row: 0,
                col: drop_col,
                rows: n,
                cols: n,
            });
        }
        let counts = tree_counts(d);
        let l = laplacian_matrix(d);
        if counts.total.is_zero() {
            return Err(Error::Degenerate {
                rank: l.rank(),
                needed: n - 1,
            });
        }
        let ambient = l.row_vecs();
        let full: Vec<Vec<BigInt>> = ambient
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != drop_col)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        Self::build(ambient, full, Some(drop_col), Some(counts))
    }

    /// A full-dimensional simplex given directly by its d+1 vertices in Z^d.
    pub fn from_full_vertices(vertices: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = vertices.len();
        if n == 0 {
            return Err(Error::InvalidSpec {
                what: "simplex",
                reason: "no vertices".into(),
            });
        }
        let d = n - 1;
        if vertices.iter().any(|v| v.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: vertices.iter().map(|v| v.len()).find(|&l| l != d).unwrap_or(d),
            });
        }
        Self::build(vertices.clone(), vertices, None, None)
    }

    fn build(
        ambient: Vec<Vec<BigInt>>,
        full: Vec<Vec<BigInt>>,
        drop_col: Option<usize>,
        counts: Option<TreeCounts>,
    ) -> Result<Self> {
        let n = full.len();
        // Lifted matrix: columns (v_j, 1).
        let mut lifted = IntMatrix::zeros(n, n);
        for (j, v) in full.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                lifted.set(i, j, x.clone());
            }
            lifted.set(n - 1, j, BigInt::one());
        }
        let det = lifted.determinant().expect("square");
        if det.is_zero() {
            let mut diff = IntMatrix::zeros(n.saturating_sub(1), n.saturating_sub(1));
            for i in 1..n {
                for j in 0..n - 1 {
                    diff.set(i - 1, j, &full[i][j] - &full[0][j]);
                }
            }
            return Err(Error::Degenerate {
                rank: diff.rank(),
                needed: n - 1,
            });
        }
        let inv = lifted.inverse_rational().expect("nonsingular");
        let mut adj = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let scaled = &inv[i][j] * Rational::from_integer(det.clone());
                debug_assert!(scaled.is_integer());
                adj.set(i, j, scaled.to_integer());
            }
        }
        let denom = det.abs();
        if det.is_negative() {
            for i in 0..n {
                for j in 0..n {
                    let v = -adj.get(i, j);
                    adj.set(i, j, v);
                }
            }
        }
        Ok(LatticeSimplex {
            ambient,
            full,
            drop_col,
            adj,
            denom,
            counts,
            volume_checked: OnceLock::new(),
            parallelepiped: OnceLock::new(),
        })
    }

    /// Number of vertices (= dim + 1).
    pub fn vertex_count(&self) -> usize {
        self.full.len()
    }

    pub fn dim(&self) -> usize {
        self.full.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.first().map_or(0, |v| v.len())
    }

    pub fn vertices(&self) -> &[Vec<BigInt>] {
        &self.ambient
    }

    pub fn full_vertices(&self) -> &[Vec<BigInt>] {
        &self.full
    }

    pub fn drop_col(&self) -> Option<usize> {
        self.drop_col
    }

    pub fn tree_counts(&self) -> Option<&TreeCounts> {
        self.counts.as_ref()
    }

    fn full_of_ambient(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        match self.drop_col {
            None => Some(x.to_vec()),
            Some(c) => {
                // Points of any dilation lie in the zero-sum hyperplane.
                if !x.iter().sum::<BigInt>().is_zero() {
                    return None;
                }
                Some(
                    x.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(_, v)| v.clone())
                        .collect(),
                )
            }
        }
    }

    fn ambient_of_full(&self, x: &[BigInt]) -> Vec<BigInt> {
        match self.drop_col {
            None => x.to_vec(),
            Some(c) => {
                let missing = -x.iter().sum::<BigInt>();
                let mut out = Vec::with_capacity(x.len() + 1);
                out.extend_from_slice(&x[..c]);
                out.push(missing);
                out.extend_from_slice(&x[c..]);
                out
            }
        }
    }

    /// Numerators of the barycentric coordinates of the full-coordinate
    /// point x at level t (the actual coordinates are these over `denom`).
    fn barycentric_numerators(&self, x_full: &[BigInt], t: &BigInt) -> Vec<BigInt> {
        let n = self.vertex_count();
        (0..n)
            .map(|i| {
                let row = self.adj.row(i);
                let mut acc = row
                    .iter()
                    .zip(x_full)
                    .map(|(a, b)| a * b)
                    .sum::<BigInt>();
                acc += &row[n - 1] * t;
                acc
            })
            .collect()
    }

    /// The unique rationals lambda with sum(lambda_i v_i) = x and
    /// sum(lambda_i) = t; `None` when some coordinate is negative (x is
    /// outside the t-th dilation).
    pub fn barycentric(&self, x: &[BigInt], t: u32) -> Result<Option<RationalVector>> {
        if x.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: x.len(),
            });
        }
        let Some(full) = self.full_of_ambient(x) else {
            return Ok(None);
        };
        let nums = self.barycentric_numerators(&full, &BigInt::from(t));
        if nums.iter().any(|v| v.is_negative()) {
            return Ok(None);
        }
        Ok(Some(
            nums.into_iter()
                .map(|v| Rational::new(v, self.denom.clone()))
                .collect(),
        ))
    }

    fn origin_ambient(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.ambient_dim()]
    }

    pub fn contains_origin(&self) -> bool {
        matches!(self.barycentric(&self.origin_ambient(), 1), Ok(Some(_)))
    }

    pub fn origin_strictly_interior(&self) -> bool {
        match self.barycentric(&self.origin_ambient(), 1) {
            Ok(Some(l)) => l.iter().all(|x| x.is_positive()),
            _ => false,
        }
    }

    /// Normalized volume: |det| of the vertex-difference matrix. When the
    /// origin lies in the simplex, the triangulation through the origin is
    /// evaluated as an independent route and must agree.
    pub fn normalized_volume(&self) -> BigInt {
        self.volume_checked
            .get_or_init(|| {
                let n = self.vertex_count();
                let mut diff = IntMatrix::zeros(n - 1, n - 1);
                for i in 1..n {
                    for j in 0..n - 1 {
                        diff.set(i - 1, j, &self.full[i][j] - &self.full[0][j]);
                    }
                }
                let vol = diff.determinant().expect("square").abs();
                assert_eq!(
                    vol, self.denom,
                    "difference-route volume disagrees with the lifted determinant"
                );
                if self.contains_origin() {
                    let mut cone_sum = BigInt::zero();
                    for omit in 0..n {
                        let rows: Vec<Vec<BigInt>> = (0..n)
                            .filter(|&i| i != omit)
                            .map(|i| self.full[i].clone())
                            .collect();
                        cone_sum += IntMatrix::from_rows(rows)
                            .determinant()
                            .expect("square")
                            .abs();
                    }
                    assert_eq!(
                        vol, cone_sum,
                        "cone triangulation volume disagrees with the vertex-difference route"
                    );
                }
                vol
            })
            .clone()
    }

    /// Lattice points of the half-open parallelepiped spanned by the lifted
    /// vertices, enumerated as Smith-form quotient representatives. There
    /// are exactly `normalized_volume` of them.
    pub fn fundamental_parallelepiped(&self) -> &[ParallelepipedPoint] {
        self.parallelepiped.get_or_init(|| {
            let n = self.vertex_count();
            let mut lifted = IntMatrix::zeros(n, n);
            for (j, v) in self.full.iter().enumerate() {
                for (i, x) in v.iter().enumerate() {
                    lifted.set(i, j, x.clone());
                }
                lifted.set(n - 1, j, BigInt::one());
            }
            let snf = smith_normal_form(&lifted);
            debug_assert_eq!(snf.diag.len(), n);
            let common = snf.diag.last().expect("nonsingular").clone();
            // lambda(rep) = v * diag(1/d_j) * rep, over common denominator d_n
            let scale: Vec<BigInt> = snf.diag.iter().map(|d| &common / d).collect();
            let mut points = Vec::new();
            let mut rep = vec![BigInt::zero(); n];
            // numerators of lambda over `common`
            let mut nums = vec![BigInt::zero(); n];
            loop {
                let reduced: Vec<BigInt> = nums.iter().map(|x| x.mod_floor(&common)).collect();
                // p = lifted * reduced / common, exact
                let mut point = Vec::with_capacity(n);
                for i in 0..n {
                    let acc: BigInt = lifted
                        .row(i)
                        .iter()
                        .zip(&reduced)
                        .map(|(a, b)| a * b)
                        .sum();
                    let (q, r) = acc.div_rem(&common);
                    debug_assert!(r.is_zero(), "parallelepiped point not integral");
                    point.push(q);
                }
                debug_assert!(!point[n - 1].is_negative());
                let height = u32::try_from(&point[n - 1]).expect("height fits in u32");
                points.push(ParallelepipedPoint {
                    point: point[..n - 1].to_vec(),
                    height,
                });
                // odometer over the representative box [0, d_j)
                let mut j = 0;
                loop {
                    if j == n {
                        points.sort_by(|a, b| (a.height, &a.point).cmp(&(b.height, &b.point)));
                        return points;
                    }
                    rep[j] += 1;
                    if rep[j] < snf.diag[j] {
                        for (i, num) in nums.iter_mut().enumerate() {
                            *num += snf.v.get(i, j) * &scale[j];
                        }
                        break;
                    }
                    // reset digit j to zero
                    let steps = &rep[j] - BigInt::one();
                    for (i, num) in nums.iter_mut().enumerate() {
                        *num -= snf.v.get(i, j) * &scale[j] * &steps;
                    }
                    rep[j] = BigInt::zero();
                    j += 1;
                }
            }
        })
    }

    /// All lattice points of the t-th dilation, by scanning the integer
    /// bounding box of the full-dimensional copy and testing barycentric
    /// membership. Points come back in ambient coordinates, sorted.
    pub fn lattice_points(&self, t: u32, budget: &Budget) -> Result<Vec<Vec<BigInt>>> {
        let n = self.vertex_count();
        let d = n - 1;
        let t_big = BigInt::from(t);
        let mut lo = Vec::with_capacity(d);
        let mut hi = Vec::with_capacity(d);
        for j in 0..d {
            let min = self.full.iter().map(|v| &v[j]).min().expect("n >= 1");
            let max = self.full.iter().map(|v| &v[j]).max().expect("n >= 1");
            lo.push(min * &t_big);
            hi.push(max * &t_big);
        }
        let mut candidates: u128 = 1;
        for j in 0..d {
            let width = (&hi[j] - &lo[j] + 1u32).max(BigInt::zero());
            let w = u128::try_from(width).unwrap_or(u128::MAX);
            candidates = candidates.saturating_mul(w);
        }
        if candidates > budget.scan_candidates {
            return Err(Error::BudgetExceeded {
                what: format!("scanning the dilation-{t} bounding box"),
                needed: candidates,
                budget: budget.scan_candidates,
            });
        }

        let mut out = Vec::new();
        let mut x = lo.clone();
        let mut nums = self.barycentric_numerators(&x, &t_big);
        loop {
            if nums.iter().all(|v| !v.is_negative()) {
                out.push(self.ambient_of_full(&x));
            }
            let mut j = 0;
            loop {
                if j == d {
                    out.sort();
                    return Ok(out);
                }
                if x[j] < hi[j] {
                    x[j] += 1;
                    for (i, num) in nums.iter_mut().enumerate() {
                        *num += self.adj.get(i, j);
                    }
                    break;
                }
                let steps = &x[j] - &lo[j];
                for (i, num) in nums.iter_mut().enumerate() {
                    *num -= self.adj.get(i, j) * &steps;
                }
                x[j] = lo[j].clone();
                j += 1;
            }
        }
    }

    /// Same point set as `lattice_points`, derived from the fundamental
    /// parallelepiped instead of a box scan: every lattice point of tP
    /// splits uniquely as a parallelepiped point plus a nonnegative integer
    /// combination of the lifted vertices.
    pub fn lattice_points_cone(&self, t: u32, budget: &Budget) -> Result<Vec<Vec<BigInt>>> {
        let pts = self.fundamental_parallelepiped();
        let n = self.vertex_count();
        let d = n - 1;
        let mut expected: u128 = 0;
        for p in pts {
            if p.height <= t {
                expected = expected.saturating_add(binomial_u128((t - p.height) as u64 + d as u64, d as u64));
            }
        }
        if expected > budget.scan_candidates {
            return Err(Error::BudgetExceeded {
                what: format!("materializing the dilation-{t} point set"),
                needed: expected,
                budget: budget.scan_candidates,
            });
        }
        let mut out = Vec::with_capacity(expected as usize);
        for p in pts {
            if p.height > t {
                continue;
            }
            let rest = t - p.height;
            let mut combo = vec![0u32; n];
            compositions(rest, n, &mut combo, 0, &mut |combo| {
                let mut x = p.point.clone();
                for (i, &m) in combo.iter().enumerate() {
                    if m == 0 {
                        continue;
                    }
                    for (xj, vj) in x.iter_mut().zip(&self.full[i]) {
                        *xj += vj * m;
                    }
                }
                out.push(self.ambient_of_full(&x));
            });
        }
        out.sort();
        debug_assert!(out.windows(2).all(|w| w[0] != w[1]));
        Ok(out)
    }

    /// Lattice points of the first dilation with strictly positive
    /// barycentric coordinates.
    pub fn interior_lattice_points(&self, budget: &Budget) -> Result<Vec<Vec<BigInt>>> {
        let pts = self.lattice_points(1, budget)?;
        Ok(pts
            .into_iter()
            .filter(|x| {
                let full = self.full_of_ambient(x).expect("point of P lies in H");
                self.barycentric_numerators(&full, &BigInt::one())
                    .iter()
                    .all(|v| v.is_positive())
            })
            .collect())
    }

    /// True when the only lattice points are the vertices and the origin.
    /// Errors when the origin is not in the simplex (the notion is tied to
    /// the spanning fan at the origin).
    pub fn is_terminal_fano(&self, budget: &Budget) -> Result<bool> {
        if !self.contains_origin() {
            return Err(Error::OriginOutside);
        }
        let points: BTreeSet<Vec<BigInt>> = self.lattice_points(1, budget)?.into_iter().collect();
        let mut allowed: BTreeSet<Vec<BigInt>> = self.ambient.iter().cloned().collect();
        allowed.insert(self.origin_ambient());
        Ok(points == allowed)
    }

    /// Vertices of the dual polytope: for each facet (omit one vertex of the
    /// full copy) the unique rational a with a . v = 1 on the facet.
    /// Requires the origin strictly interior.
    pub fn dual_vertices(&self) -> Result<Vec<RationalVector>> {
        let lambda = self
            .barycentric(&self.origin_ambient(), 1)?
            .ok_or(Error::OriginOutside)?;
        if let Some((i, bad)) = lambda.iter().enumerate().find(|(_, x)| !x.is_positive()) {
            return Err(Error::OriginNotInterior {
                index: i,
                value: bad.to_string(),
            });
        }
        let n = self.vertex_count();
        let d = n - 1;
        let mut duals = Vec::with_capacity(n);
        for omit in 0..n {
            let rows: Vec<Vec<BigInt>> = (0..n)
                .filter(|&i| i != omit)
                .map(|i| self.full[i].clone())
                .collect();
            let m = IntMatrix::from_rows(rows);
            let ones: RationalVector = vec![Rational::one(); d];
            let a = m.solve_rational(&ones)?;
            duals.push(a);
        }
        Ok(duals)
    }

    /// Reflexive: origin strictly interior and every dual vertex integral.
    pub fn is_reflexive(&self) -> bool {
        match self.dual_vertices() {
            Ok(duals) => duals
                .iter()
                .all(|a| a.iter().all(BigRational::is_integer)),
            Err(_) => false,
        }
    }
}

fn binomial_u128(n: u64, k: u64) -> u128 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn compositions(total: u32, parts: usize, buf: &mut Vec<u32>, idx: usize, f: &mut impl FnMut(&[u32])) {
    if idx + 1 == parts {
        buf[idx] = total;
        f(buf);
        return;
    }
    for v in 0..=total {
        buf[idx] = v;
        compositions(total - v, parts, buf, idx + 1, f);
    }
}

/// Reflexivity via the weight divisibility criterion: applicable only to
/// strongly connected digraphs whose tree counts are coprime (then the
/// simplex is a weighted projective space with weights c_i); in that case
/// the simplex is reflexive iff every c_i divides c(D).
pub fn is_reflexive_divisibility(d: &Digraph) -> Option<bool> {
    let tc = tree_counts(d);
    if !d.is_strongly_connected() {
        return None;
    }
    let gcd = tc
        .counts
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !gcd.is_one() {
        return None;
    }
    Some(tc.counts.iter().all(|c| (&tc.total % c).is_zero()))
}

/// Which closed-form condition settled a cycle digraph's reflexivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReflexivity {
    pub reflexive: bool,
    /// Matched condition (1 = no backward edges, 3 = all backward and odd,
    /// 4 = proper backward set with chain divisibility); None when not
    /// reflexive. Condition 2 (n = 2) cannot arise from a cycle spec.
    pub condition: Option<u8>,
    /// Label rotation applied so vertex 1 carries no backward tail (for
    /// condition 4); recorded for reproducibility.
    pub rotation: usize,
    /// Longest backward chain K.
    pub chain: usize,
    pub complexity: BigInt,
}

/// Decide reflexivity of a cycle digraph from its combinatorics alone.
pub fn cycle_reflexivity(spec: &CycleSpec) -> CycleReflexivity {
    let n = spec.n();
    let counts = cycle_tree_counts(spec);
    let complexity = counts.total.clone();
    let chain = counts
        .counts
        .iter()
        .map(|c| usize::try_from(c - 1u32).expect("chain length fits in usize"))
        .max()
        .unwrap_or(0);
    if spec.tails().is_empty() {
        return CycleReflexivity {
            reflexive: true,
            condition: Some(1),
            rotation: 0,
            chain,
            complexity,
        };
    }
    if spec.is_full() {
        return CycleReflexivity {
            reflexive: n % 2 == 1,
            condition: if n % 2 == 1 { Some(3) } else { None },
            rotation: 0,
            chain,
            complexity,
        };
    }
    // Proper subset: rotate labels by the smallest shift freeing vertex 1
    // of its backward tail. Counts and chains are rotation-invariant; the
    // normalized copy is what the chain-divisibility condition is stated on.
    let rotation = (0..n)
        .find(|r| !spec.tails().contains(&(r + 1)))
        .expect("proper subset leaves some tail free");
    let normalized = spec.rotated(rotation);
    debug_assert!(!normalized.tails().contains(&1));
    debug_assert_eq!(cycle_tree_counts(&normalized).total, complexity);
    let ok = (1..=chain as u64 + 1).all(|k| (&complexity % k).is_zero());
    CycleReflexivity {
        reflexive: ok,
        condition: if ok { Some(4) } else { None },
        rotation,
        chain,
        complexity,
    }
}
