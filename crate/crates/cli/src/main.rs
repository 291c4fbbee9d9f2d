mod play;

use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mbtd_core::game::{Game, Player};
use mbtd_core::graph::{classify_structure, find_factor, generate_family, parse_graph_auto, serialize_graph, FactorKind, Graph, GraphFormat};
use mbtd_core::solver::{ClassifyError, SolveError, Solver, SolverConfig};
use mbtd_core::verify::{default_suite, render_text, run_campaign, cases_for, TheoremId, Verdict};
use serde_json::json;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "mbtd", version, about = "Maker-Breaker total domination games on graphs")]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Solver node budget per search.
    #[arg(long, global = true, env = "MBTD_NODE_BUDGET")]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Graph6,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Dominator,
    Staller,
}

impl From<Side> for Player {
    fn from(s: Side) -> Player {
        match s {
            Side::Dominator => Player::Dominator,
            Side::Staller => Player::Staller,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print a graph from a named family.
    Generate {
        family: String,
        params: Vec<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Structural report and outcome class.
    Classify {
        /// Graph file, or `-` for stdin.
        #[arg(default_value = "-")]
        graph: String,
    },
    /// Winner and best move from the empty board.
    Solve {
        #[arg(default_value = "-")]
        graph: String,
        #[arg(long, value_enum)]
        first: Side,
    },
    /// Run the verification campaign, or the cases of one theorem.
    Verify {
        /// `suite` or a theorem id such as T4 or L5.
        target: String,
        /// Override the theorem's default parameter range.
        #[arg(long, value_delimiter = ',')]
        params: Vec<usize>,
        /// Write the JSON report here and a text rendering beside it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play against the engine on the terminal.
    Play {
        /// Graph file; stdin is reserved for moves.
        graph: String,
        #[arg(long = "as", value_enum)]
        side: Side,
        /// Who moves first; defaults to you.
        #[arg(long, value_enum)]
        first: Option<Side>,
        /// Show immediate threats and double traps before each of your moves.
        #[arg(long)]
        hints: bool,
    },
    /// Serve the HTTP API.
    Serve {
        #[arg(long, env = "MBTD_PORT", default_value_t = 8080)]
        port: u16,
        /// Keep session snapshots in this directory.
        #[arg(long)]
        snapshots: Option<PathBuf>,
        /// Allowed CORS origin; repeat for several. Any origin when absent.
        #[arg(long = "cors-origin")]
        cors_origins: Vec<String>,
    },
}

/// A failure with its exit code.
struct Failure(u8, String);

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Exhausted { .. } => Failure(EXIT_BUDGET, e.to_string()),
            other => Failure(EXIT_FAIL, other.to_string()),
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Unknown(s) => s.into(),
            other => Failure(EXIT_FAIL, other.to_string()),
        }
    }
}

fn read_graph(source: &str) -> Result<Graph, Failure> {
    let text = if source == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure(EXIT_USAGE, format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(source).map_err(|e| Failure(EXIT_USAGE, format!("{source}: {e}")))?
    };
    let g = parse_graph_auto(&text).map_err(|e| Failure(EXIT_USAGE, format!("bad graph: {e}")))?;
    g.ensure_board_size().map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
    Ok(g)
}

fn solver_config(budget: Option<u64>) -> SolverConfig {
    match budget {
        Some(b) => SolverConfig::default().with_node_budget(b),
        None => SolverConfig::default(),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let cfg = solver_config(cli.budget);
    match cli.command {
        Command::Generate { family, params, format } => {
            let g = generate_family(&family, &params).map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
            let format = match format {
                Format::Json => GraphFormat::JsonEdges,
                Format::Graph6 => GraphFormat::Graph6,
            };
            let text = serialize_graph(&g, format).map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
            println!("{text}");
        }
        Command::Classify { graph } => {
            let g = read_graph(&graph)?;
            let flags = g.validate();
            let structure = g.is_cubic().then(|| classify_structure(&g).ok()).flatten();
            let factor = |k| find_factor(&g, k).is_some();
            let (diamond, triangle, claw) = (factor(FactorKind::Diamond), factor(FactorKind::Triangle), factor(FactorKind::Claw));
            let outcome = Solver::new(cfg).classify_outcome(&Game::new(g.clone()))?;
            if cli.json {
                let out = json!({
                    "n": g.n(), "edges": g.edge_count(), "validation": flags, "structure": structure,
                    "factors": { "diamond": diamond, "triangle": triangle, "claw": claw }, "outcome": outcome,
                });
                println!("{out}");
            } else {
                println!("vertices: {}, edges: {}, cubic: {}, connected: {}, bipartite: {}",
                    g.n(), g.edge_count(), yes(flags.cubic), yes(flags.connected), yes(flags.bipartite));
                if let Some(r) = &structure {
                    println!("t1: {}, t2: {}, t3: {}, diamonds: {}, triangles: {}", r.t1, r.t2, r.t3, r.diamonds.len(), r.triangles.len());
                }
                println!("D-game winner: {}, S-game winner: {}", outcome.d_game_winner, outcome.s_game_winner);
                println!("class: {}, diamond-factor: {}, triangle-factor: {}, claw-factor: {}", outcome.class, yes(diamond), yes(triangle), yes(claw));
            }
        }
        Command::Solve { graph, first } => {
            let g = read_graph(&graph)?;
            let game = Game::new(g.clone());
            let r = Solver::new(cfg).solve(&game, &game.start(first.into()))?;
            if cli.json {
                println!("{}", serde_json::to_string(&r).expect("result serializes"));
            } else {
                println!("winner: {}", r.winner);
                match r.best_move {
                    Some(v) => println!("best move: {}", g.display_name(v)),
                    None => println!("best move: none (game already decided)"),
                }
                let line: Vec<String> = r.principal_line.iter().map(|&v| g.display_name(v)).collect();
                println!("principal line: {}", line.join(" "));
                println!("nodes: {}", r.nodes);
            }
        }
        Command::Verify { target, params, out } => {
            let suite = if target == "suite" {
                if !params.is_empty() {
                    return Err(Failure(EXIT_USAGE, "--params needs a theorem id".into()));
                }
                default_suite()
            } else {
                let id: TheoremId = target.parse().map_err(|e| Failure(EXIT_USAGE, format!("{e}")))?;
                cases_for(id, &params)
            };
            let summary = run_campaign(&suite, out.as_deref(), &cfg).map_err(|e| Failure(EXIT_FAIL, format!("writing report: {e}")))?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
            } else {
                print!("{}", render_text(&summary));
            }
            return Ok(match summary.verdict {
                Verdict::Pass => 0,
                Verdict::Fail => EXIT_FAIL,
                Verdict::Inconclusive => EXIT_BUDGET,
            });
        }
        Command::Play { graph, side, first, hints } => {
            if graph == "-" {
                return Err(Failure(EXIT_USAGE, "play reads moves from stdin; pass the graph as a file".into()));
            }
            let g = read_graph(&graph)?;
            let human: Player = side.into();
            let first = first.map(Player::from).unwrap_or(human);
            let stdin = io::stdin();
            let outcome = play::play(g, human, first, hints, cfg, &mut stdin.lock(), &mut io::stdout())
                .map_err(|e| Failure(EXIT_FAIL, e.to_string()))?;
            return Ok(match outcome {
                play::Ended::Finished => 0,
                play::Ended::Quit => 0,
                play::Ended::Budget(m) => return Err(Failure(EXIT_BUDGET, m)),
            });
        }
        Command::Serve { port, snapshots, cors_origins } => {
            let opts = mbtd_server::ServerOptions { port, snapshot_dir: snapshots, cors_origins, solver: {
                let mut s = mbtd_server::ServerOptions::default().solver;
                if let Some(b) = cli.budget {
                    s.node_budget = b;
                }
                s
            } };
            let rt = tokio::runtime::Runtime::new().map_err(|e| Failure(EXIT_FAIL, e.to_string()))?;
            rt.block_on(mbtd_server::serve(opts)).map_err(|e| Failure(EXIT_FAIL, e.to_string()))?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
