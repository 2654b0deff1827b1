//! Single-digraph analysis: one pass that gathers every invariant into a
//! serializable report.

use num_bigint::BigInt;
use serde::Serialize;

use crate::digraph::Digraph;
use crate::ehrhart::hstar_parallelepiped;
use crate::error::{Error, Result};
use crate::idp::{is_idp, IdpOptions};
use crate::simplex::{is_reflexive_divisibility, LatticeSimplex};
use crate::trees::tree_counts;
use crate::Budget;

#[derive(Debug, Clone, Default)]
pub struct AnalysisOptions {
    pub compute_idp: bool,
    pub budget: Budget,
    /// Override for the IDP level bound.
    pub idp_max_level: Option<u32>,
}

/// Analysis result: either a full simplex report or the structured
/// degenerate outcome for digraphs without a spanning converging tree.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum AnalysisOutcome {
    Simplex(AnalysisReport),
    Degenerate(DegenerateReport),
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub edge_count: u64,
    pub strongly_connected: bool,
    /// Converging-tree counts per root, as decimal strings.
    pub tree_counts: Vec<String>,
    pub complexity: String,
    pub dimension: usize,
    pub volume: String,
    /// Facet route: origin strictly interior and all dual vertices integral.
    pub reflexive: bool,
    /// Weight-divisibility route; None when its hypotheses fail.
    pub reflexive_divisibility: Option<bool>,
    pub hstar: Vec<String>,
    pub hstar_symmetric: bool,
    pub hstar_unimodal: bool,
    pub terminal_fano: bool,
    pub interior_lattice_points: usize,
    pub idp: IdpOutcome,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum IdpOutcome {
    NotRequested,
    Checked {
        verdict: bool,
        checked_levels: Vec<u32>,
        witness: Option<IdpWitnessReport>,
    },
    Refused {
        reason: String,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct IdpWitnessReport {
    pub level: u32,
    pub point: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegenerateReport {
    pub n: usize,
    pub edge_count: u64,
    pub laplacian_rank: usize,
    pub rank_needed: usize,
    pub tree_counts: Vec<String>,
    pub notes: Vec<String>,
}

fn big_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Analyze one digraph. Budget refusals inside the optional IDP check are
/// recorded in the report instead of aborting the analysis; any other error
/// propagates.
pub fn analyze(d: &Digraph, opts: &AnalysisOptions) -> Result<AnalysisOutcome> {
    let tc = tree_counts(d);
    let mut notes = Vec::new();
    let isolated = d.isolated_vertices();
    if !isolated.is_empty() {
        let labels: Vec<String> = isolated.iter().map(|v| (v + 1).to_string()).collect();
        notes.push(format!(
            "isolated vertices present ({}); the standing no-isolated-vertex assumption fails",
            labels.join(", ")
        ));
    }

    let p = match LatticeSimplex::from_digraph(d) {
        Ok(p) => p,
        Err(Error::Degenerate { rank, needed }) => {
            notes.push("no spanning converging tree: the vertices span no simplex".to_string());
            return Ok(AnalysisOutcome::Degenerate(DegenerateReport {
                n: d.n(),
                edge_count: d.edge_count(),
                laplacian_rank: rank,
                rank_needed: needed,
                tree_counts: big_strings(&tc.counts),
                notes,
            }));
        }
        Err(e) => return Err(e),
    };

    let strongly_connected = d.is_strongly_connected();
    if !strongly_connected {
        notes.push(
            "not strongly connected: the origin lies on the simplex boundary, so the \
             simplex cannot be reflexive"
                .to_string(),
        );
    }
    let volume = p.normalized_volume();
    let reflexive = p.is_reflexive();
    let reflexive_divisibility = is_reflexive_divisibility(d);
    let hstar = hstar_parallelepiped(&p);
    let terminal_fano = p.is_terminal_fano(&opts.budget)?;
    let interior = p.interior_lattice_points(&opts.budget)?.len();

    debug_assert_eq!(hstar.sum(), volume);
    debug_assert_eq!(volume, tc.total);
    debug_assert_eq!(reflexive, hstar.is_symmetric());

    let idp = if opts.compute_idp {
        let idp_opts = IdpOptions {
            budget: opts.budget.clone(),
            max_level: opts.idp_max_level,
        };
        match is_idp(&p, &idp_opts) {
            Ok(report) => IdpOutcome::Checked {
                verdict: report.verdict,
                checked_levels: report.checked_levels,
                witness: report.witness.map(|w| IdpWitnessReport {
                    level: w.level,
                    point: big_strings(&w.point),
                }),
            },
            Err(e @ Error::BudgetExceeded { .. }) => IdpOutcome::Refused {
                reason: e.to_string(),
            },
            Err(e) => return Err(e),
        }
    } else {
        IdpOutcome::NotRequested
    };

    Ok(AnalysisOutcome::Simplex(AnalysisReport {
        n: d.n(),
        edge_count: d.edge_count(),
        strongly_connected,
        tree_counts: big_strings(&tc.counts),
        complexity: tc.total.to_string(),
        dimension: p.dim(),
        volume: volume.to_string(),
        reflexive,
        reflexive_divisibility,
        hstar: big_strings(&hstar.coeffs),
        hstar_symmetric: hstar.is_symmetric(),
        hstar_unimodal: hstar.is_unimodal(),
        terminal_fano,
        interior_lattice_points: interior,
        idp,
        notes,
    }))
}

impl AnalysisOutcome {
    pub fn notes_mut(&mut self) -> &mut Vec<String> {
        match self {
            AnalysisOutcome::Simplex(r) => &mut r.notes,
            AnalysisOutcome::Degenerate(r) => &mut r.notes,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}
