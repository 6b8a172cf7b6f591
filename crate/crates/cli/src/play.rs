//! The `play` subcommand: humans type letters, other seats run a policy.

use std::io::{self, BufRead, Write};

use relgame::solver::Policy;
use relgame::{Budget, BoundPolicy, Game, GameKind, GameState, LetterId, PolicyId, Step, Trace};

use crate::{build, CliError};

enum Seat<'a, 'g> {
    Human,
    Policy(BoundPolicy<'a, 'g>),
}

fn seats<'a, 'g>(game: &'a Game<'g>, specs: &[String]) -> Result<Vec<Seat<'a, 'g>>, CliError> {
    specs
        .iter()
        .enumerate()
        .map(|(i, spec)| {
            if spec == "human" {
                return Ok(Seat::Human);
            }
            let id: PolicyId = spec.parse().map_err(|e: relgame::PolicyError| CliError::Usage(e.to_string()))?;
            let seat = relgame::Player(i as u8);
            BoundPolicy::bind(id, game, seat, Budget::from_env())
                .map(Seat::Policy)
                .map_err(|e| CliError::Usage(format!("seat {}: {e}", i + 1)))
        })
        .collect()
}

fn prompt(game: &Game<'_>, state: &GameState, legal: &[LetterId]) -> String {
    let graph = game.graph();
    let names: Vec<&str> = legal.iter().map(|&l| graph.letter(l).name.as_str()).collect();
    format!(
        "{} at {} (visited {}), legal: {} > ",
        state.mover,
        graph.group().label(state.current),
        state.visited.len(),
        names.join(" ")
    )
}

/// Reads letters until one is legal. End of input is a usage error.
fn ask<R: BufRead>(game: &Game<'_>, state: &GameState, legal: &[LetterId], input: &mut R) -> Result<LetterId, CliError> {
    let graph = game.graph();
    loop {
        eprint!("{}", prompt(game, state, legal));
        let _ = io::stderr().flush();
        let mut line = String::new();
        if input.read_line(&mut line).map_err(|e| CliError::Usage(e.to_string()))? == 0 {
            return Err(CliError::Usage("input ended before the game finished".into()));
        }
        match graph.parse_letter(line.trim()) {
            Some(l) if legal.contains(&l) => return Ok(l),
            Some(_) => eprintln!("{} is not legal here", line.trim()),
            None => eprintln!("unknown letter {:?}", line.trim()),
        }
    }
}

pub fn cmd_play(token: &str, kind: GameKind, specs: &[String], show_trace: bool) -> Result<(), CliError> {
    let (_, graph) = build(token)?;
    let game = Game::new(&graph, kind).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut seats = seats(&game, specs)?;
    let stdin = io::stdin();
    let mut input = stdin.lock();

    let mut state = game.initial_state();
    let mut history = Vec::new();
    let mut trace = Trace::default();
    let outcome = loop {
        let legal = game.legal_moves(&state);
        if legal.is_empty() {
            break game.outcome_if_no_moves(&state).expect("no legal moves");
        }
        let letter = match &mut seats[state.mover.index()] {
            Seat::Human => ask(&game, &state, &legal, &mut input)?,
            Seat::Policy(p) => {
                let l = p.choose(&state, &history).map_err(|e| CliError::Budget(e.to_string()))?;
                eprintln!("{} plays {}", state.mover, graph.letter(l).name);
                l
            }
        };
        trace.push_move(&game, &state, letter);
        history.push(letter);
        match game.apply_move(&state, letter).expect("letter checked legal") {
            Step::Next(next) => state = next,
            Step::Terminal(o) => break o,
        }
    };
    trace.outcome = Some(outcome);
    if show_trace {
        print!("{trace}");
    } else {
        println!("{outcome}");
    }
    Ok(())
}
