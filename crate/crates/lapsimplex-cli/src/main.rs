use std::fs;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use lapsimplex::analyze::{analyze, AnalysisOptions, AnalysisOutcome};
use lapsimplex::digraph::{CycleSpec, Digraph, NonUnimodalSpec, SimpleGraph, StarSpec};
use lapsimplex::error::Error;
use lapsimplex::io::{digraph_to_json, named_input, parse_digraph, parse_graph, NamedInput};
use lapsimplex::survey::{search_underlying, survey_cycles, SearchMode};
use lapsimplex::verify::{run as run_verify, Tamper, VerifyOptions};
use lapsimplex::Budget;

/// Laplacian simplices of digraphs: exact invariants, surveys, searches.
#[derive(Parser)]
#[command(name = "lapsimplex", version, about)]
struct Cli {
    /// Worker threads for surveys and searches (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one digraph (a JSON file or a bundled paper:NAME input).
    Analyze {
        /// Path to a digraph JSON file, or a named input such as
        /// paper:example1.
        input: String,
        /// Also run the integer decomposition property check.
        #[arg(long)]
        idp: bool,
        /// Override the IDP level bound (default: max(2, dim - 1)).
        #[arg(long, value_name = "K")]
        max_level: Option<u32>,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print a generated digraph as JSON.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Examine every cycle digraph C_n^S for n in the range.
    SurveyCycles {
        n_min: usize,
        n_max: usize,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate digraphs over an undirected graph and report reflexive ones.
    Search {
        /// Path to an undirected graph JSON file, or paper:G1 / paper:G2.
        input: String,
        #[arg(long, value_enum)]
        mode: SearchModeArg,
        #[arg(long)]
        json: bool,
    },
    /// Run the verification checklist.
    VerifyPaper {
        /// Run a single criterion, by name or number.
        #[arg(long, value_name = "NAME")]
        only: Option<String>,
        #[arg(long)]
        json: bool,
        /// Negative control: corrupt one computation path on purpose.
        #[arg(long, hide = true, value_enum)]
        tamper: Option<TamperArg>,
    },
    /// List the bundled named inputs.
    Inputs,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Cycle digraph C_n^S; tails is a comma list such as 1,3 ("-" for none).
    Cycle { n: usize, tails: String },
    /// Star digraph with the given nondecreasing weights, e.g. 1,2,2.
    Star { weights: String },
    /// Cycle digraph of the non-unimodal family.
    Nonunimodal { alpha: u64, beta: u64, k: u64 },
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchModeArg {
    /// One direction per edge (2^e members).
    Orientations,
    /// One direction or both (3^e members).
    Simple,
}

#[derive(Clone, Copy, ValueEnum)]
enum TamperArg {
    TreeCounts,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = lapsimplex::configure_workers(jobs) {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget_refusal = e
                .downcast_ref::<Error>()
                .is_some_and(|err| matches!(err, Error::BudgetExceeded { .. }));
            ExitCode::from(if budget_refusal { 2 } else { 1 })
        }
    }
}

fn dispatch(command: Command) -> anyhow::Result<u8> {
    let budget = Budget::from_env();
    match command {
        Command::Analyze {
            input,
            idp,
            max_level,
            json,
        } => cmd_analyze(&input, idp, max_level, json, budget),
        Command::Gen(gen) => cmd_gen(gen),
        Command::SurveyCycles { n_min, n_max, json } => cmd_survey(n_min, n_max, json, budget),
        Command::Search { input, mode, json } => cmd_search(&input, mode, json, budget),
        Command::VerifyPaper { only, json, tamper } => cmd_verify(only, json, tamper, budget),
        Command::Inputs => {
            for name in lapsimplex::io::NAMED_INPUTS {
                let kind = match named_input(name) {
                    Some(NamedInput::Digraph { .. }) => "digraph",
                    Some(NamedInput::Graph(_)) => "graph",
                    None => unreachable!("listed inputs resolve"),
                };
                println!("paper:{name}  ({kind})");
            }
            Ok(0)
        }
    }
}

fn load_digraph(input: &str) -> anyhow::Result<(Digraph, Option<String>)> {
    if let Some(named) = named_input(input) {
        return match named {
            NamedInput::Digraph { digraph, note } => Ok((digraph, note.map(String::from))),
            NamedInput::Graph(_) => Err(anyhow!(
                "{input} is an undirected graph; use the search command for it"
            )),
        };
    }
    if input.starts_with("paper:") {
        return Err(anyhow!("unknown named input {input}; see `lapsimplex inputs`"));
    }
    let text = fs::read_to_string(input).with_context(|| format!("reading {input}"))?;
    Ok((parse_digraph(&text)?, None))
}

fn load_graph(input: &str) -> anyhow::Result<SimpleGraph> {
    if let Some(named) = named_input(input) {
        return match named {
            NamedInput::Graph(g) => Ok(g),
            NamedInput::Digraph { .. } => Err(anyhow!(
                "{input} is a digraph; the search command needs an undirected graph"
            )),
        };
    }
    if input.starts_with("paper:") {
        return Err(anyhow!("unknown named input {input}; see `lapsimplex inputs`"));
    }
    let text = fs::read_to_string(input).with_context(|| format!("reading {input}"))?;
    Ok(parse_graph(&text)?)
}

fn cmd_analyze(
    input: &str,
    idp: bool,
    max_level: Option<u32>,
    json: bool,
    budget: Budget,
) -> anyhow::Result<u8> {
    let (digraph, note) = load_digraph(input)?;
    let opts = AnalysisOptions {
        compute_idp: idp,
        budget,
        idp_max_level: max_level,
    };
    let mut outcome = analyze(&digraph, &opts)?;
    if let Some(note) = note {
        outcome.notes_mut().insert(0, note);
    }
    // a budget-refused IDP still prints the rest of the report, but the
    // refusal shows in the exit status
    let refused = matches!(
        &outcome,
        AnalysisOutcome::Simplex(r)
            if matches!(r.idp, lapsimplex::analyze::IdpOutcome::Refused { .. })
    );
    let code = if refused { 2 } else { 0 };
    if json {
        println!("{}", outcome.to_json());
        return Ok(code);
    }
    match &outcome {
        AnalysisOutcome::Degenerate(r) => {
            println!("digraph            n = {}, {} edges", r.n, r.edge_count);
            println!("outcome            not a simplex (no spanning converging tree)");
            println!(
                "laplacian rank     {} (needs {})",
                r.laplacian_rank, r.rank_needed
            );
            println!("tree counts        ({})", r.tree_counts.join(", "));
            for n in &r.notes {
                println!("note               {n}");
            }
        }
        AnalysisOutcome::Simplex(r) => {
            println!("digraph              n = {}, {} edges", r.n, r.edge_count);
            println!("strongly connected   {}", r.strongly_connected);
            println!("tree counts          ({})", r.tree_counts.join(", "));
            println!("complexity c(D)      {}", r.complexity);
            println!("dimension            {}", r.dimension);
            println!("normalized volume    {}", r.volume);
            println!("reflexive (facets)   {}", r.reflexive);
            match r.reflexive_divisibility {
                Some(v) => println!("reflexive (weights)  {v}"),
                None => println!("reflexive (weights)  not applicable"),
            }
            println!("h*-vector            ({})", r.hstar.join(", "));
            println!("h* symmetric         {}", r.hstar_symmetric);
            println!("h* unimodal          {}", r.hstar_unimodal);
            println!("terminal Fano        {}", r.terminal_fano);
            println!("interior points      {}", r.interior_lattice_points);
            match &r.idp {
                lapsimplex::analyze::IdpOutcome::NotRequested => {}
                lapsimplex::analyze::IdpOutcome::Checked {
                    verdict,
                    checked_levels,
                    witness,
                } => {
                    println!("IDP                  {verdict} (levels {checked_levels:?})");
                    if let Some(w) = witness {
                        println!(
                            "IDP witness          level {} point ({})",
                            w.level,
                            w.point.join(", ")
                        );
                    }
                }
                lapsimplex::analyze::IdpOutcome::Refused { reason } => {
                    println!("IDP                  refused: {reason}");
                }
            }
            for n in &r.notes {
                println!("note                 {n}");
            }
        }
    }
    Ok(code)
}

fn parse_csv_list(text: &str) -> anyhow::Result<Vec<u64>> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "-" || trimmed == "none" {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .with_context(|| format!("bad list entry {part:?}"))
        })
        .collect()
}

fn cmd_gen(gen: GenCommand) -> anyhow::Result<u8> {
    let digraph = match gen {
        GenCommand::Cycle { n, tails } => {
            let tails = parse_csv_list(&tails)?;
            CycleSpec::new(n, tails.iter().map(|&x| x as usize))?.digraph()
        }
        GenCommand::Star { weights } => {
            let weights = parse_csv_list(&weights)?;
            StarSpec::new(weights)?.digraph()
        }
        GenCommand::Nonunimodal { alpha, beta, k } => {
            NonUnimodalSpec::new(alpha, beta, k)?.digraph()
        }
    };
    println!("{}", digraph_to_json(&digraph));
    Ok(0)
}

fn cmd_survey(n_min: usize, n_max: usize, json: bool, budget: Budget) -> anyhow::Result<u8> {
    let survey = survey_cycles(n_min, n_max, &budget)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&survey)?);
        return Ok(0);
    }
    println!(
        "{:<4} {:<20} {:>6}  {:<8} {:<9} {:<5} {:<5}",
        "n", "S", "c(D)", "terminal", "reflexive", "cond", "idp"
    );
    for row in &survey.rows {
        let tails = if row.tails.is_empty() {
            "{}".to_string()
        } else {
            format!("{:?}", row.tails)
        };
        let reflexive = match (row.reflexive_closed_form, row.reflexive_facet) {
            (true, true) => "yes",
            (false, false) => "no",
            _ => "MISMATCH",
        };
        println!(
            "{:<4} {:<20} {:>6}  {:<8} {:<9} {:<5} {:<5}",
            row.n,
            tails,
            row.complexity,
            if row.terminal_fano { "yes" } else { "no" },
            reflexive,
            row.condition.map_or("-".to_string(), |c| c.to_string()),
            row.idp.map_or("-".to_string(), |v| v.to_string()),
        );
    }
    println!();
    println!("rows                      {}", survey.rows.len());
    println!("route mismatches          {}", survey.route_mismatches);
    println!(
        "non-terminal classes      {}",
        format_classes(&survey.non_terminal_classes)
    );
    println!(
        "reflexive IDP classes     {} (nonempty tail sets)",
        format_classes(&survey.reflexive_idp_nonempty_classes)
    );
    Ok(0)
}

fn format_classes(classes: &[(usize, u64)]) -> String {
    if classes.is_empty() {
        return "none".to_string();
    }
    classes
        .iter()
        .map(|&(n, mask)| {
            let tails: Vec<String> = (0..n)
                .filter(|&b| mask >> b & 1 == 1)
                .map(|b| (b + 1).to_string())
                .collect();
            format!("C_{}^{{{}}}", n, tails.join(","))
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn cmd_search(input: &str, mode: SearchModeArg, json: bool, budget: Budget) -> anyhow::Result<u8> {
    let graph = load_graph(input)?;
    let mode = match mode {
        SearchModeArg::Orientations => SearchMode::Orientations,
        SearchModeArg::Simple => SearchMode::SimpleDigraphs,
    };
    let report = search_underlying(&graph, mode, &budget)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
        return Ok(0);
    }
    println!("members examined     {}", report.total);
    println!("degenerate           {}", report.degenerate);
    println!("strongly connected   {}", report.strongly_connected);
    if report.reflexive.is_empty() {
        println!("reflexive            none");
    } else {
        println!("reflexive            {}", report.reflexive.len());
        for hit in &report.reflexive {
            let edges: Vec<String> = hit
                .edges
                .iter()
                .map(|(t, h)| format!("{t}->{h}"))
                .collect();
            println!(
                "  #{:<6} c(D) = {:<6} [{}]",
                hit.index,
                hit.complexity,
                edges.join(", ")
            );
        }
    }
    Ok(0)
}

fn cmd_verify(
    only: Option<String>,
    json: bool,
    tamper: Option<TamperArg>,
    budget: Budget,
) -> anyhow::Result<u8> {
    let opts = VerifyOptions {
        budget,
        tamper: tamper.map(|TamperArg::TreeCounts| Tamper::TreeCounts),
    };
    let results = run_verify(&opts, only.as_deref())?;
    if json {
        println!("{}", serde_json::to_string_pretty(&results)?);
        return Ok(0);
    }
    for r in &results {
        println!("{}", r.status_line());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    let total_ms: u128 = results.iter().map(|r| r.millis).sum();
    println!();
    println!(
        "{} of {} criteria passed in {:.1} s",
        results.len() - failed,
        results.len(),
        total_ms as f64 / 1000.0
    );
    Ok(0)
}
