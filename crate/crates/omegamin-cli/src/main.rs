//! Batch command-line front-end.
//!
//! Exit codes: 0 = success / positive answer, 1 = computed negative answer
//! (not history-deterministic, not equivalent, not canonical, infeasible),
//! 2 = usage, parse or contract errors. Diagnostics go to standard error.

use clap::{Parser, Subcommand, ValueEnum};
use omegamin::canonical::{check_canonicity, minimise_hd_cobuchi};
use omegamin::games::{equivalent, is_history_deterministic, EquivMode};
use omegamin::gencobuchi::build_general;
use omegamin::hardness::{
    colouring_to_automaton, exact_minimise, graph_colouring, pseudo_path_automaton,
    triangle_full_transform, Colouring, ExactMinMode, ExactMinOutcome, ExactMinQuery, Graph,
};
use omegamin::io::{export_hoa, import_hoa, parse_native, serialise_native};
use omegamin::transforms::recolour_greedy;
use omegamin::{Automaton, Error};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "omegamin",
    version,
    about = "Minimisation toolkit for transition-based generalised (co)Büchi automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MinimizeMode {
    /// Canonical minimal history-deterministic coBüchi automaton.
    HdCobuchi,
    /// State-minimal history-deterministic generalised coBüchi automaton.
    HdGencobuchi,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Deterministic automata, difference-product equivalence.
    Det,
    /// History-deterministic automata, containment games.
    Hd,
}

#[derive(Subcommand)]
enum Command {
    /// Minimise the automaton in the requested model.
    Minimize {
        /// Target model.
        #[arg(long, value_enum)]
        mode: MinimizeMode,
        /// Input automaton (.aut native format; HOA detected by header).
        input: PathBuf,
        /// Output file (stdout when omitted; .hoa extension exports HOA).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decision procedures on a single automaton.
    Check {
        #[command(subcommand)]
        what: CheckWhat,
    },
    /// Language equivalence of two automata.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Gadget constructions from graphs.
    Gadget {
        #[command(subcommand)]
        which: GadgetCommand,
    },
    /// Greedy colour removal on a deterministic generalised (co)Büchi automaton.
    Recolor { input: PathBuf },
    /// Exhaustive exact minimisation (oracle; desk-scale inputs only).
    Exactmin {
        input: PathBuf,
        #[arg(long)]
        max_states: usize,
        #[arg(long)]
        max_colours: usize,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Node budget for the search.
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Subcommand)]
enum CheckWhat {
    /// Is the automaton history-deterministic?
    Hd { input: PathBuf },
    /// Report the canonicity properties of a coBüchi automaton.
    Props { input: PathBuf },
}

#[derive(Subcommand)]
enum GadgetCommand {
    /// The graph-language automaton of an edge list, via a colouring.
    Graph {
        edges: PathBuf,
        /// `auto` searches the chromatic number; a path loads `v c` lines;
        /// omitted uses the trivial one-colour-per-vertex colouring.
        #[arg(long)]
        colouring: Option<String>,
    },
    /// The pseudo-path automaton of an edge list.
    Pseudopath {
        edges: PathBuf,
        /// Initial vertex.
        #[arg(long)]
        init: usize,
    },
    /// The two-colour family member with an exponential one-state blowup.
    Expfamily { n: usize },
    /// Triangle-full 4-clique-free transformation of an edge list.
    Trianglefull { edges: PathBuf },
}

fn read_automaton(path: &Path) -> Result<Automaton, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    if text.trim_start().starts_with("HOA:") {
        import_hoa(&text)
    } else {
        parse_native(&text)
    }
}

fn read_graph(path: &Path) -> Result<Graph, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    Graph::parse_edges(&text)
}

fn write_automaton(aut: &Automaton, output: Option<&Path>) -> Result<(), Error> {
    let (text, target) = match output {
        Some(path) if path.extension().is_some_and(|e| e == "hoa") => (export_hoa(aut), Some(path)),
        Some(path) => (serialise_native(aut), Some(path)),
        None => (serialise_native(aut), None),
    };
    match target {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Parse {
            line: 0,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_colouring(spec: &str, graph: &Graph) -> Result<Colouring, Error> {
    if spec == "auto" {
        for k in 1..=graph.vertices() {
            if let Some(c) = graph_colouring(graph, k) {
                return Ok(c);
            }
        }
        unreachable!("the trivial colouring always exists");
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read colouring {spec}: {e}"),
    })?;
    let mut map = vec![usize::MAX; graph.vertices()];
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let mut field = |what: &str| -> Result<usize, Error> {
            parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse {
                    line: i + 1,
                    message: format!("expected `vertex colour`, missing {what}"),
                })
        };
        let v = field("vertex")?;
        let c = field("colour")?;
        if v >= graph.vertices() {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("vertex {v} out of range"),
            });
        }
        map[v] = c;
    }
    if map.iter().any(|&c| c == usize::MAX) {
        return Err(Error::Contract("colouring file misses some vertex".into()));
    }
    Ok(Colouring(map))
}

/// Returns the exit code: 0 = positive, 1 = negative answer.
fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Minimize { mode, input, output } => {
            let aut = read_automaton(&input)?;
            let canonical = minimise_hd_cobuchi(&aut)?;
            let result = match mode {
                MinimizeMode::HdCobuchi => canonical.automaton,
                MinimizeMode::HdGencobuchi => build_general(&canonical.automaton)?.automaton,
            };
            write_automaton(&result, output.as_deref())?;
            Ok(0)
        }
        Command::Check { what } => match what {
            CheckWhat::Hd { input } => {
                let aut = read_automaton(&input)?;
                let verdict = is_history_deterministic(&aut)?;
                println!("history-deterministic: {}", if verdict { "yes" } else { "no" });
                Ok(if verdict { 0 } else { 1 })
            }
            CheckWhat::Props { input } => {
                let aut = read_automaton(&input)?;
                let report = check_canonicity(&aut)?;
                println!("reachable-only:             {}", report.reachable_only);
                println!("semantically-deterministic: {}", report.semantically_deterministic);
                println!("normal-form:                {}", report.normal_form);
                println!("safe-deterministic:         {}", report.safe_deterministic);
                println!("safe-minimal:               {}", report.safe_minimal);
                println!("safe-centralised:           {}", report.safe_centralised);
                Ok(if report.all() { 0 } else { 1 })
            }
        },
        Command::Equiv { a, b, mode } => {
            let a = read_automaton(&a)?;
            let b = read_automaton(&b)?;
            let mode = match mode {
                ModeArg::Det => EquivMode::Det,
                ModeArg::Hd => {
                    if !is_history_deterministic(&a)? || !is_history_deterministic(&b)? {
                        return Err(Error::Contract(
                            "hd-mode equivalence needs history-deterministic inputs".into(),
                        ));
                    }
                    EquivMode::Hd
                }
            };
            let verdict = equivalent(&a, &b, mode)?;
            println!("equivalent: {}", if verdict { "yes" } else { "no" });
            Ok(if verdict { 0 } else { 1 })
        }
        Command::Gadget { which } => match which {
            GadgetCommand::Graph { edges, colouring } => {
                let graph = read_graph(&edges)?;
                let colouring = match colouring.as_deref() {
                    None => Colouring::trivial(&graph),
                    Some(spec) => load_colouring(spec, &graph)?,
                };
                let aut = colouring_to_automaton(&graph, &colouring)?;
                write_automaton(&aut, None)?;
                Ok(0)
            }
            GadgetCommand::Pseudopath { edges, init } => {
                let graph = read_graph(&edges)?;
                let aut = pseudo_path_automaton(&graph, init)?;
                write_automaton(&aut, None)?;
                Ok(0)
            }
            GadgetCommand::Expfamily { n } => {
                let aut = omegamin::hardness::exp_family(n)?;
                write_automaton(&aut, None)?;
                Ok(0)
            }
            GadgetCommand::Trianglefull { edges } => {
                let graph = read_graph(&edges)?;
                print!("{}", triangle_full_transform(&graph).to_edges());
                Ok(0)
            }
        },
        Command::Recolor { input } => {
            let aut = read_automaton(&input)?;
            let result = match aut.acceptance().family {
                omegamin::AcceptanceFamily::GeneralisedBuchi => recolour_greedy(&aut)?,
                omegamin::AcceptanceFamily::GeneralisedCoBuchi => {
                    // Removing a colour commutes with duality.
                    recolour_greedy(&aut.dualise()?)?.dualise()?
                }
            };
            write_automaton(&result, None)?;
            Ok(0)
        }
        Command::Exactmin {
            input,
            max_states,
            max_colours,
            mode,
            budget,
        } => {
            let aut = read_automaton(&input)?;
            let mut query = ExactMinQuery::new(
                max_states,
                max_colours,
                match mode {
                    ModeArg::Det => ExactMinMode::Det,
                    ModeArg::Hd => ExactMinMode::Hd,
                },
            );
            if let Some(b) = budget {
                query.budget = b;
            }
            match exact_minimise(&aut, &query)? {
                ExactMinOutcome::Found(result) => {
                    write_automaton(&result, None)?;
                    Ok(0)
                }
                ExactMinOutcome::Infeasible => {
                    println!("infeasible");
                    Ok(1)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help and version requests on stdout with success.
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(2);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
