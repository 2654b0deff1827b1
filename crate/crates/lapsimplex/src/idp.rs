//! Integer decomposition property checks.
//!
//! A lattice polytope is IDP when every lattice point of kP is a sum of k
//! lattice points of P. For a d-simplex it is enough to check the peeling
//! step kP = P + (k-1)P for k = 2..=d-1 (higher dilations always peel), so
//! the default level bound is max(2, d-1) with an override for paranoia.

use num_bigint::BigInt;

use crate::digraph::{CycleSpec, StarSpec};
use crate::error::Result;
use crate::simplex::{cycle_reflexivity, LatticeSimplex};
use crate::Budget;

/// Outcome of an IDP check, with a fully verifiable witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdpReport {
    pub verdict: bool,
    /// A dilation level and lattice point admitting no decomposition, when
    /// the verdict is negative.
    pub witness: Option<IdpWitness>,
    pub checked_levels: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdpWitness {
    pub level: u32,
    /// Ambient coordinates of the non-decomposable point of level*P.
    pub point: Vec<BigInt>,
}

#[derive(Debug, Clone, Default)]
pub struct IdpOptions {
    pub budget: Budget,
    /// Check levels 2..=max_level instead of the default 2..=max(2, d-1).
    pub max_level: Option<u32>,
}

/// Check the integer decomposition property level by level. For each level
/// k, every lattice point of kP must split as p + q with p a lattice point
/// of P and q one of (k-1)P; the search iterates the points of P and tests
/// membership of the difference by barycentric sign.
pub fn is_idp(p: &LatticeSimplex, opts: &IdpOptions) -> Result<IdpReport> {
    let d = p.dim() as u32;
    let top = opts.max_level.unwrap_or_else(|| 2.max(d.saturating_sub(1)));
    let base = p.lattice_points_cone(1, &opts.budget)?;
    let mut checked = Vec::new();
    for k in 2..=top {
        checked.push(k);
        for x in p.lattice_points_cone(k, &opts.budget)? {
            if !decomposes(p, &x, k, &base)? {
                return Ok(IdpReport {
                    verdict: false,
                    witness: Some(IdpWitness { level: k, point: x }),
                    checked_levels: checked,
                });
            }
        }
    }
    Ok(IdpReport {
        verdict: true,
        witness: None,
        checked_levels: checked,
    })
}

fn decomposes(
    p: &LatticeSimplex,
    x: &[BigInt],
    k: u32,
    base_points: &[Vec<BigInt>],
) -> Result<bool> {
    for b in base_points {
        let diff: Vec<BigInt> = x.iter().zip(b).map(|(a, c)| a - c).collect();
        if p.barycentric(&diff, k - 1)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Exhaustively confirm that a witness point really has no decomposition as
/// a sum over P and (level-1)P, materializing both point sets.
pub fn verify_witness(p: &LatticeSimplex, w: &IdpWitness, budget: &Budget) -> Result<bool> {
    let base = p.lattice_points_cone(1, budget)?;
    let rest = p.lattice_points_cone(w.level - 1, budget)?;
    for a in &base {
        for b in &rest {
            let sum: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if sum == w.point {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Necessary condition for the star simplex with weights (1, q) to be IDP:
/// `1/q_j + sum_{i != j} frac(q_i / q_j) = 1` for every j, evaluated
/// exactly as `1 + sum_{i != j} (q_i mod q_j) = q_j`.
///
/// `false` certifies "not IDP"; `true` only means the filter passed.
pub fn bds_filter(q: &StarSpec) -> bool {
    let weights = q.weights();
    weights.iter().enumerate().all(|(j, &qj)| {
        let rem_sum: u64 = weights
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, &qi)| qi % qj)
            .sum();
        1 + rem_sum == qj
    })
}

/// Largest n the cycle IDP classification will take on.
pub const MAX_CLASSIFY_N: usize = 8;

/// Run the IDP check on every reflexive cycle digraph with at most `n_max`
/// vertices. Deterministic order: by n, then by the tail bitmask.
pub fn classify_idp_cycles(
    n_max: usize,
    opts: &IdpOptions,
) -> Result<Vec<(CycleSpec, IdpReport)>> {
    if n_max > MAX_CLASSIFY_N {
        return Err(crate::error::Error::BudgetExceeded {
            what: format!("classifying IDP for all cycle digraphs up to n = {n_max}"),
            needed: n_max as u128,
            budget: MAX_CLASSIFY_N as u128,
        });
    }
    let mut out = Vec::new();
    for n in 3..=n_max {
        for mask in 0u64..(1 << n) {
            let s = (0..n).filter(|&b| mask >> b & 1 == 1).map(|b| b + 1);
            let spec = CycleSpec::new(n, s).expect("valid cycle spec");
            if !cycle_reflexivity(&spec).reflexive {
                continue;
            }
            let p = LatticeSimplex::from_digraph(&spec.digraph())?;
            let report = is_idp(&p, opts)?;
            if let Some(w) = &report.witness {
                debug_assert!(verify_witness(&p, w, &opts.budget)?);
            }
            out.push((spec, report));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_simplex(n: usize, s: &[usize]) -> LatticeSimplex {
        LatticeSimplex::from_digraph(&CycleSpec::new(n, s.iter().copied()).unwrap().digraph())
            .unwrap()
    }

    #[test]
    fn bidirected_triangle_is_idp() {
        let r = is_idp(&cycle_simplex(3, &[1, 2, 3]), &IdpOptions::default()).unwrap();
        assert!(r.verdict);
        assert_eq!(r.checked_levels, vec![2]);
    }

    #[test]
    fn bidirected_pentagon_is_not_idp() {
        let p = cycle_simplex(5, &[1, 2, 3, 4, 5]);
        let r = is_idp(&p, &IdpOptions::default()).unwrap();
        assert!(!r.verdict);
        let w = r.witness.expect("failure carries a witness");
        assert!(verify_witness(&p, &w, &Budget::default()).unwrap());
    }

    #[test]
    fn exceptional_four_cycle_is_idp() {
        let r = is_idp(&cycle_simplex(4, &[1, 3]), &IdpOptions::default()).unwrap();
        assert!(r.verdict);
    }

    #[test]
    fn directed_cycles_are_idp() {
        for n in 3..=6 {
            let r = is_idp(&cycle_simplex(n, &[]), &IdpOptions::default()).unwrap();
            assert!(r.verdict, "n={n}");
        }
    }

    #[test]
    fn extra_levels_do_not_change_verdicts() {
        for n in 3..=5usize {
            for mask in 0u64..(1 << n) {
                let s: Vec<usize> =
                    (0..n).filter(|&b| mask >> b & 1 == 1).map(|b| b + 1).collect();
                let spec = CycleSpec::new(n, s.iter().copied()).unwrap();
                if !cycle_reflexivity(&spec).reflexive {
                    continue;
                }
                let p = LatticeSimplex::from_digraph(&spec.digraph()).unwrap();
                let default = is_idp(&p, &IdpOptions::default()).unwrap();
                let deep = is_idp(
                    &p,
                    &IdpOptions {
                        max_level: Some(p.dim() as u32 + 2),
                        ..Default::default()
                    },
                )
                .unwrap();
                assert_eq!(default.verdict, deep.verdict, "n={n} S={s:?}");
            }
        }
    }

    #[test]
    fn bds_filter_cases() {
        assert!(bds_filter(&StarSpec::new(vec![1, 1, 1]).unwrap()));
        assert!(bds_filter(&StarSpec::new(vec![1, 2, 2]).unwrap()));
        // 1, 2, ..., K, K+1 with K >= 3 fails at q_j = K + 1
        assert!(!bds_filter(&StarSpec::new(vec![1, 2, 3, 4]).unwrap()));
    }

    #[test]
    fn bds_failure_implies_not_idp() {
        for q in [vec![1, 2, 3, 4], vec![1, 1, 2, 3], vec![2, 2, 3]] {
            let spec = StarSpec::new(q.clone()).unwrap();
            if bds_filter(&spec) {
                continue;
            }
            let p = LatticeSimplex::from_digraph(&spec.digraph()).unwrap();
            let r = is_idp(&p, &IdpOptions::default()).unwrap();
            assert!(!r.verdict, "q={q:?}");
        }
    }

    #[test]
    fn classify_rejects_large_n() {
        assert!(classify_idp_cycles(9, &IdpOptions::default()).is_err());
    }

    #[test]
    fn classify_small_cycles() {
        let results = classify_idp_cycles(4, &IdpOptions::default()).unwrap();
        // n = 3: every tail set is reflexive and IDP
        let n3: Vec<_> = results.iter().filter(|(s, _)| s.n() == 3).collect();
        assert_eq!(n3.len(), 8);
        assert!(n3.iter().all(|(_, r)| r.verdict));
        // n = 4: only the empty set and the two rotations of {1, 3}
        let n4: Vec<_> = results.iter().filter(|(s, _)| s.n() == 4).collect();
        assert_eq!(n4.len(), 3);
        assert!(n4.iter().all(|(_, r)| r.verdict));
        let masks: Vec<u64> = n4.iter().map(|(s, _)| s.canonical_mask()).collect();
        assert_eq!(masks, vec![0, 5, 5]);
    }
}
