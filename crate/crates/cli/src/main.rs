mod play;
mod token;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use relgame::cayley::export_dot;
use relgame::table::write_group_table;
use relgame::verify::{run_everything, solve_record, Report, Suite, SuiteConfig};
use relgame::{Budget, CayleyGraph, GameKind, Instance, SolveError, Variant};

#[derive(Parser, Debug)]
#[command(name = "relgame", version, about = "Relator achievement and avoidance games on Cayley graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GameArg {
    Rel,
    Rav,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Dot,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one instance exactly.
    Solve {
        /// Group token, e.g. dihedral:7, product:6x3, cyclic:4@all.
        group: String,
        #[arg(long, value_enum, default_value = "rel")]
        game: GameArg,
        #[arg(long, default_value_t = 2)]
        players: usize,
        /// Print the result as a verify case record.
        #[arg(long)]
        json: bool,
        /// Expand the root's children on several threads.
        #[arg(long)]
        parallel: bool,
    },
    /// Run verification suites and write a JSON report.
    Verify {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        min_n: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Report path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play interactively or watch policies play.
    Play {
        group: String,
        #[arg(long, value_enum, default_value = "rel")]
        game: GameArg,
        #[arg(long, default_value_t = 2)]
        players: usize,
        /// Controller for seat 1: human, oracle or a policy token.
        #[arg(long = "seat-1", default_value = "human")]
        seat_1: String,
        #[arg(long = "seat-2", default_value = "human")]
        seat_2: String,
        #[arg(long = "seat-3", default_value = "human")]
        seat_3: String,
        #[arg(long = "seat-4", default_value = "human")]
        seat_4: String,
        /// Print the full trace when the game ends.
        #[arg(long)]
        trace: bool,
    },
    /// Write the Cayley graph (DOT) or the group table.
    Export {
        group: String,
        #[arg(long, value_enum, default_value = "dot")]
        format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failures mapped to exit codes: 1 for budget or mismatch, 2 for usage.
#[derive(Debug, thiserror::Error)]
pub(crate) enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("verification failed")]
    Mismatch,
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) | CliError::Mismatch => 1,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Game(g) => CliError::Usage(g.to_string()),
            other => CliError::Budget(other.to_string()),
        }
    }
}

pub(crate) fn game_kind(game: GameArg, players: usize) -> Result<GameKind, CliError> {
    let variant = match game {
        GameArg::Rel => Variant::Rel,
        GameArg::Rav => Variant::Rav,
    };
    GameKind::new(variant, players).map_err(|e| CliError::Usage(e.to_string()))
}

pub(crate) fn build(token: &str) -> Result<(Instance, CayleyGraph), CliError> {
    let instance = token::parse_group_token(token).map_err(CliError::Usage)?;
    let (g, s) = instance.build().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok((instance, CayleyGraph::new(g, s)))
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_solve(token: &str, game: GameArg, players: usize, json: bool, parallel: bool) -> Result<(), CliError> {
    let (instance, graph) = build(token)?;
    let kind = game_kind(game, players)?;
    let budget = Budget::from_env();
    let result = if parallel {
        relgame::solve_parallel(&graph, kind, budget)?
    } else {
        relgame::solve(&graph, kind, budget)?
    };
    if json {
        let rec = solve_record(&instance, &graph, kind, &result);
        println!("{}", serde_json::to_string(&rec).expect("record serializes"));
    } else {
        let first = result.optimal_first.map_or("none".to_string(), |l| graph.letter(l).name.clone());
        let ranking: Vec<String> = result.ranking().iter().map(ToString::to_string).collect();
        println!(
            "group={} gens={} game={kind} winner={} ranking=[{}] optimal_first={first} states={} memo_hits={} ms={}",
            instance.spec.display_name(),
            instance.gens_display(graph.gens()),
            result.winner,
            ranking.join(","),
            result.stats.states_explored,
            result.stats.memo_hits,
            result.stats.elapsed.as_millis(),
        );
    }
    Ok(())
}

fn cmd_verify(
    suite: &str,
    min_n: Option<usize>,
    max_n: Option<usize>,
    threads: usize,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let parsed = if suite == "all" { None } else { Some(suite.parse::<Suite>().map_err(CliError::Usage)?) };
    let cfg = SuiteConfig {
        suite: parsed.unwrap_or(Suite::Cyclic),
        min_n,
        max_n,
        budget: Budget::from_env(),
        threads,
    };
    cfg.validate().map_err(CliError::Usage)?;
    let reports = match parsed {
        Some(_) => vec![relgame::run_suite(&cfg)],
        None => run_everything(&cfg),
    };
    for r in &reports {
        eprintln!(
            "{}: {}/{} matched, {}",
            r.suite,
            r.summary.matched,
            r.summary.total,
            if r.pass { "pass" } else { "FAIL" }
        );
        for c in r.failures() {
            eprintln!("  {} {} {} predicted={} solved={}", c.group, c.gens, c.game, c.predicted, c.solved);
            if let Some(e) = &c.error {
                for line in e.lines() {
                    eprintln!("    {line}");
                }
            }
        }
    }
    let report = match parsed {
        Some(_) => reports.into_iter().next().expect("one report"),
        None => Report::merge("all", reports),
    };
    write_output(out, &(report.to_json() + "\n"))?;
    if report.pass {
        Ok(())
    } else {
        Err(CliError::Mismatch)
    }
}

fn cmd_export(token: &str, format: ExportFormat, out: Option<&PathBuf>) -> Result<(), CliError> {
    let (_, graph) = build(token)?;
    let text = match format {
        ExportFormat::Dot => export_dot(&graph),
        ExportFormat::Table => write_group_table(graph.group(), graph.gens()),
    };
    write_output(out, &text)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve { group, game, players, json, parallel } => cmd_solve(&group, game, players, json, parallel),
        Command::Verify { suite, min_n, max_n, threads, out } => {
            cmd_verify(&suite, min_n, max_n, threads, out.as_ref())
        }
        Command::Play { group, game, players, seat_1, seat_2, seat_3, seat_4, trace } => {
            let seats = [seat_1, seat_2, seat_3, seat_4];
            if players > seats.len() {
                return Err(CliError::Usage(format!("play supports at most {} players", seats.len())));
            }
            play::cmd_play(&group, game_kind(game, players)?, &seats[..players], trace)
        }
        Command::Export { group, format, out } => cmd_export(&group, format, out.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Mismatch) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.code())
        }
    }
}
