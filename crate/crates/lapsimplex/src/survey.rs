//! Exhaustive surveys: all cycle digraphs in a vertex range, and all
//! orientations / simple digraphs over a fixed underlying graph.
//!
//! Work fans out over rayon and is merged back in index order, so two runs
//! produce identical output.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::digraph::{CycleSpec, SimpleGraph};
use crate::error::{Error, Result};
use crate::idp::{is_idp, IdpOptions};
use crate::simplex::{cycle_reflexivity, LatticeSimplex};
use crate::Budget;

/// Largest n the cycle survey will take on; beyond this the 2^n per-subset
/// work stops being a desk-scale run.
pub const MAX_SURVEY_N: usize = 8;

/// Largest edge count for underlying-graph searches (3^16 members).
pub const MAX_SEARCH_EDGES: usize = 16;

#[derive(Debug, Clone, Serialize)]
pub struct CycleSurveyRow {
    pub n: usize,
    /// Backward tails, 1-based.
    pub tails: Vec<usize>,
    pub complexity: String,
    pub terminal_fano: bool,
    /// Closed-form route.
    pub reflexive_closed_form: bool,
    /// Facet route (dual vertex integrality).
    pub reflexive_facet: bool,
    /// Matched closed-form condition when reflexive.
    pub condition: Option<u8>,
    /// Present exactly for the reflexive rows.
    pub idp: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleSurvey {
    pub rows: Vec<CycleSurveyRow>,
    /// Rows where the two reflexivity routes disagree (must be none).
    pub route_mismatches: usize,
    /// Rotation classes (n, canonical tail mask) that are not terminal Fano.
    pub non_terminal_classes: Vec<(usize, u64)>,
    /// Rotation classes with nonempty tails that are reflexive and IDP.
    pub reflexive_idp_nonempty_classes: Vec<(usize, u64)>,
}

/// Survey every C_n^S for n in [n_min, n_max].
pub fn survey_cycles(n_min: usize, n_max: usize, budget: &Budget) -> Result<CycleSurvey> {
    if n_min < 3 || n_min > n_max {
        return Err(Error::InvalidSpec {
            what: "cycle survey",
            reason: format!("need 3 <= n_min <= n_max, got {n_min}..{n_max}"),
        });
    }
    if n_max > MAX_SURVEY_N {
        return Err(Error::BudgetExceeded {
            what: format!("surveying all cycle digraphs up to n = {n_max}"),
            needed: n_max as u128,
            budget: MAX_SURVEY_N as u128,
        });
    }

    let jobs: Vec<(usize, u64)> = (n_min..=n_max)
        .flat_map(|n| (0u64..(1 << n)).map(move |mask| (n, mask)))
        .collect();
    let rows: Vec<CycleSurveyRow> = jobs
        .par_iter()
        .map(|&(n, mask)| survey_one(n, mask, budget))
        .collect::<Result<Vec<_>>>()?;

    let route_mismatches = rows
        .iter()
        .filter(|r| r.reflexive_closed_form != r.reflexive_facet)
        .count();
    let mut non_terminal = Vec::new();
    let mut reflexive_idp = Vec::new();
    for row in &rows {
        let spec = CycleSpec::new(row.n, row.tails.iter().copied()).expect("row came from a spec");
        let class = (row.n, spec.canonical_mask());
        if !row.terminal_fano && !non_terminal.contains(&class) {
            non_terminal.push(class);
        }
        if !row.tails.is_empty() && row.idp == Some(true) && !reflexive_idp.contains(&class) {
            reflexive_idp.push(class);
        }
    }
    Ok(CycleSurvey {
        rows,
        route_mismatches,
        non_terminal_classes: non_terminal,
        reflexive_idp_nonempty_classes: reflexive_idp,
    })
}

fn survey_one(n: usize, mask: u64, budget: &Budget) -> Result<CycleSurveyRow> {
    let tails: Vec<usize> = (0..n).filter(|&b| mask >> b & 1 == 1).map(|b| b + 1).collect();
    let spec = CycleSpec::new(n, tails.iter().copied()).expect("mask stays in range");
    let verdict = cycle_reflexivity(&spec);
    let p = LatticeSimplex::from_digraph(&spec.digraph())
        .expect("cycle digraphs always have positive complexity");
    let reflexive_facet = p.is_reflexive();
    let terminal_fano = p.is_terminal_fano(budget)?;
    let idp = if reflexive_facet {
        let report = is_idp(
            &p,
            &IdpOptions {
                budget: budget.clone(),
                max_level: None,
            },
        )?;
        Some(report.verdict)
    } else {
        None
    };
    Ok(CycleSurveyRow {
        n,
        tails,
        complexity: verdict.complexity.to_string(),
        terminal_fano,
        reflexive_closed_form: verdict.reflexive,
        reflexive_facet,
        condition: verdict.condition,
        idp,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// One direction per edge: 2^e candidates.
    Orientations,
    /// Either direction or both: 3^e candidates.
    SimpleDigraphs,
}

impl SearchMode {
    fn base(self) -> u64 {
        match self {
            SearchMode::Orientations => 2,
            SearchMode::SimpleDigraphs => 3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchHit {
    /// Index of the member in the enumeration order.
    pub index: u64,
    /// Its directed edges (1-based tail, head).
    pub edges: Vec<(usize, usize)>,
    pub complexity: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub mode: SearchMode,
    pub total: u64,
    /// Members with no spanning converging tree (vertices span no simplex).
    pub degenerate: u64,
    pub strongly_connected: u64,
    /// Members whose Laplacian simplex is reflexive.
    pub reflexive: Vec<SearchHit>,
}

/// Enumerate every digraph over the underlying graph in the chosen mode and
/// report the reflexive ones.
pub fn search_underlying(g: &SimpleGraph, mode: SearchMode, _budget: &Budget) -> Result<SearchReport> {
    let e = g.edge_count();
    if e > MAX_SEARCH_EDGES {
        return Err(Error::BudgetExceeded {
            what: format!("searching over an underlying graph with {e} edges"),
            needed: e as u128,
            budget: MAX_SEARCH_EDGES as u128,
        });
    }
    let total = (mode.base() as u128).pow(e as u32) as u64;
    // (degenerate, strongly connected, reflexive hit as (edges, volume))
    type Outcome = (bool, bool, Option<(Vec<(usize, usize)>, BigInt)>);
    let results: Vec<Outcome> = (0..total)
        .into_par_iter()
        .map(|index| {
            let d = g.digraph_at(mode.base(), index as u128);
            let strong = d.is_strongly_connected();
            match LatticeSimplex::from_digraph(&d) {
                Err(_) => (true, strong, None),
                Ok(p) => {
                    let hit = if strong && p.is_reflexive() {
                        let edges = d
                            .edges()
                            .into_iter()
                            .map(|(t, h, _)| (t + 1, h + 1))
                            .collect();
                        Some((edges, p.normalized_volume()))
                    } else {
                        None
                    };
                    (false, strong, hit)
                }
            }
        })
        .collect();

    let degenerate = results.iter().filter(|r| r.0).count() as u64;
    let strongly_connected = results.iter().filter(|r| r.1).count() as u64;
    let reflexive = results
        .into_iter()
        .enumerate()
        .filter_map(|(index, (_, _, hit))| {
            hit.map(|(edges, vol)| SearchHit {
                index: index as u64,
                edges,
                complexity: vol.to_string(),
            })
        })
        .collect();
    Ok(SearchReport {
        mode,
        total,
        degenerate,
        strongly_connected,
        reflexive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn survey_rejects_bad_ranges() {
        assert!(matches!(
            survey_cycles(2, 5, &Budget::default()),
            Err(Error::InvalidSpec { .. })
        ));
        assert!(matches!(
            survey_cycles(3, 9, &Budget::default()),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn survey_three_to_four() {
        let s = survey_cycles(3, 4, &Budget::default()).unwrap();
        assert_eq!(s.rows.len(), 8 + 16);
        assert_eq!(s.route_mismatches, 0);
        // six non-terminal rotation classes, three at each of n = 3, 4
        assert_eq!(s.non_terminal_classes.len(), 6);
        assert_eq!(
            s.non_terminal_classes.iter().filter(|c| c.0 == 3).count(),
            3
        );
        // the nonempty reflexive IDP classes: all three at n = 3, one at n = 4
        assert_eq!(s.reflexive_idp_nonempty_classes.len(), 4);
    }

    #[test]
    fn survey_is_deterministic() {
        let a = survey_cycles(3, 5, &Budget::default()).unwrap();
        let b = survey_cycles(3, 5, &Budget::default()).unwrap();
        assert_eq!(serde_json::to_string(&a.rows).unwrap(), serde_json::to_string(&b.rows).unwrap());
    }

    #[test]
    fn search_triangle_orientations() {
        let triangle = SimpleGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let report =
            search_underlying(&triangle, SearchMode::Orientations, &Budget::default()).unwrap();
        assert_eq!(report.total, 8);
        assert_eq!(report.strongly_connected, 2);
        // exactly the two directed 3-cycles are reflexive
        assert_eq!(report.reflexive.len(), 2);
    }

    #[test]
    fn search_rejects_large_graphs() {
        let big = SimpleGraph::new(
            18,
            (0..17).map(|i| (i, i + 1)),
        )
        .unwrap();
        assert!(matches!(
            search_underlying(&big, SearchMode::SimpleDigraphs, &Budget::default()),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
