//! Game rules: states, legal moves, move application and outcomes.

use std::fmt;

use crate::cayley::{CayleyGraph, LetterId};
use crate::error::GameError;
use crate::group::Element;

/// Games are played on groups of at most this order (visited sets are `u64`).
pub const MAX_GAME_ORDER: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Relator achievement: closing a cycle wins.
    Rel,
    /// Relator avoidance: closing a cycle loses.
    Rav,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Rel => "rel",
            Variant::Rav => "rav",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GameKind {
    variant: Variant,
    players: usize,
}

impl GameKind {
    pub fn new(variant: Variant, players: usize) -> Result<Self, GameError> {
        if players < 2 {
            return Err(GameError::TooFewPlayers(players));
        }
        if variant == Variant::Rav && players != 2 {
            return Err(GameError::AvoidancePlayers(players));
        }
        if players > u8::MAX as usize {
            return Err(GameError::TooManyPlayers { got: players, max: u8::MAX as usize });
        }
        Ok(GameKind { variant, players })
    }

    pub fn rel() -> Self {
        GameKind { variant: Variant::Rel, players: 2 }
    }

    pub fn rav() -> Self {
        GameKind { variant: Variant::Rav, players: 2 }
    }

    pub fn rel_n(players: usize) -> Result<Self, GameError> {
        Self::new(Variant::Rel, players)
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn players(&self) -> usize {
        self.players
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.players == 2 {
            write!(f, "{}", self.variant)
        } else {
            write!(f, "{}_{}", self.variant, self.players)
        }
    }
}

/// Seat index, 0-based; displayed as `P1`, `P2`, ...
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Player(pub u8);

impl Player {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Seat `k` places after this one.
    pub fn offset(self, k: usize, players: usize) -> Player {
        Player(((self.index() + k) % players) as u8)
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0 + 1)
    }
}

/// Set of visited elements as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Visited(pub u64);

impl Visited {
    #[inline]
    pub fn contains(self, g: Element) -> bool {
        self.0 >> g.index() & 1 == 1
    }

    #[inline]
    pub fn with(self, g: Element) -> Self {
        Visited(self.0 | 1 << g.index())
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

/// A position between moves. Value type: applying a move returns a new one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GameState {
    pub visited: Visited,
    pub current: Element,
    pub last: Option<LetterId>,
    pub mover: Player,
    pub move_count: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TerminalCause {
    RelatorFormed,
    NoLegalMove,
}

impl fmt::Display for TerminalCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TerminalCause::RelatorFormed => "relator",
            TerminalCause::NoLegalMove => "no-move",
        })
    }
}

/// How a game ended. The whole ranking follows from the winner: the winner
/// ranks first and each following seat one place lower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Outcome {
    pub cause: TerminalCause,
    /// The player who closed the relator, or who had no move.
    pub actor: Player,
    pub winner: Player,
    pub players: usize,
}

impl Outcome {
    /// Players from first to last place.
    pub fn ranking(&self) -> Vec<Player> {
        (0..self.players).map(|k| self.winner.offset(k, self.players)).collect()
    }

    /// 1-based rank of `p`.
    pub fn rank_of(&self, p: Player) -> usize {
        (p.index() + self.players - self.winner.index()) % self.players + 1
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ranking: Vec<String> = self.ranking().iter().map(Player::to_string).collect();
        write!(f, "result cause={} winner={} ranking=[{}]", self.cause, self.winner, ranking.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Next(GameState),
    Terminal(Outcome),
}

/// A game kind bound to a Cayley graph.
#[derive(Clone, Copy, Debug)]
pub struct Game<'g> {
    graph: &'g CayleyGraph,
    kind: GameKind,
}

impl<'g> Game<'g> {
    pub fn new(graph: &'g CayleyGraph, kind: GameKind) -> Result<Self, GameError> {
        if graph.order() > MAX_GAME_ORDER {
            return Err(GameError::OrderLimit { order: graph.order(), max: MAX_GAME_ORDER });
        }
        Ok(Game { graph, kind })
    }

    pub fn graph(&self) -> &'g CayleyGraph {
        self.graph
    }

    pub fn kind(&self) -> GameKind {
        self.kind
    }

    pub fn initial_state(&self) -> GameState {
        GameState {
            visited: Visited::default().with(Element::IDENTITY),
            current: Element::IDENTITY,
            last: None,
            mover: Player(0),
            move_count: 0,
        }
    }

    #[inline]
    pub fn is_legal(&self, state: &GameState, letter: LetterId) -> bool {
        letter.index() < self.graph.degree()
            && state.last.is_none_or(|l| self.graph.inverse(l) != letter)
    }

    /// Legal letters in alphabet order.
    pub fn legal_moves(&self, state: &GameState) -> Vec<LetterId> {
        self.legal_iter(state).collect()
    }

    pub fn legal_iter<'a>(&'a self, state: &'a GameState) -> impl Iterator<Item = LetterId> + 'a {
        let banned = state.last.map(|l| self.graph.inverse(l));
        self.graph.letter_ids().filter(move |&l| Some(l) != banned)
    }

    pub fn apply_move(&self, state: &GameState, letter: LetterId) -> Result<Step, GameError> {
        if !self.is_legal(state, letter) {
            let name = self
                .graph
                .alphabet()
                .get(letter.index())
                .map_or_else(|| format!("#{}", letter.0), |l| l.name.clone());
            return Err(GameError::IllegalLetter(name));
        }
        Ok(self.apply_unchecked(state, letter))
    }

    #[inline]
    pub(crate) fn apply_unchecked(&self, state: &GameState, letter: LetterId) -> Step {
        let target = self.graph.step(state.current, letter);
        if state.visited.contains(target) {
            return Step::Terminal(self.relator_outcome(state.mover));
        }
        Step::Next(GameState {
            visited: state.visited.with(target),
            current: target,
            last: Some(letter),
            mover: state.mover.offset(1, self.kind.players),
            move_count: state.move_count + 1,
        })
    }

    /// Outcome when `actor` closes a relator.
    pub fn relator_outcome(&self, actor: Player) -> Outcome {
        let winner = match self.kind.variant {
            Variant::Rel => actor,
            Variant::Rav => actor.offset(1, self.kind.players),
        };
        Outcome { cause: TerminalCause::RelatorFormed, actor, winner, players: self.kind.players }
    }

    /// The player to move has no legal letter: they rank last, the next
    /// seat wins and the rest follow in seat order.
    pub fn outcome_if_no_moves(&self, state: &GameState) -> Result<Outcome, GameError> {
        if self.legal_iter(state).next().is_some() {
            return Err(GameError::MovesAvailable);
        }
        Ok(self.no_move_outcome(state.mover))
    }

    pub(crate) fn no_move_outcome(&self, mover: Player) -> Outcome {
        Outcome {
            cause: TerminalCause::NoLegalMove,
            actor: mover,
            winner: mover.offset(1, self.kind.players),
            players: self.kind.players,
        }
    }

    /// Plays `letters` from the initial state, recording a trace. Stops at
    /// the first terminal move.
    pub fn replay(&self, letters: &[LetterId]) -> Result<Trace, GameError> {
        let mut trace = Trace::default();
        let mut state = self.initial_state();
        for &l in letters {
            if trace.outcome.is_some() {
                return Err(GameError::Terminal);
            }
            let step = self.apply_move(&state, l)?;
            trace.push_move(self, &state, l);
            match step {
                Step::Next(s) => state = s,
                Step::Terminal(o) => trace.outcome = Some(o),
            }
        }
        if trace.outcome.is_none() {
            if let Ok(o) = self.outcome_if_no_moves(&state) {
                trace.outcome = Some(o);
            }
        }
        Ok(trace)
    }
}

/// One trace line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub turn: u32,
    pub player: Player,
    pub letter: String,
    pub to: String,
    pub visited: usize,
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "turn={} player={} letter={} to={} visited={}",
            self.turn, self.player, self.letter, self.to, self.visited
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    pub moves: Vec<TraceEntry>,
    pub outcome: Option<Outcome>,
}

impl Trace {
    /// Records `letter` played from `state`.
    pub fn push_move(&mut self, game: &Game<'_>, state: &GameState, letter: LetterId) {
        let graph = game.graph();
        let target = graph.step(state.current, letter);
        self.moves.push(TraceEntry {
            turn: state.move_count + 1,
            player: state.mover,
            letter: graph.letter(letter).name.clone(),
            to: graph.group().label(target).to_string(),
            visited: state.visited.with(target).len(),
        });
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.moves {
            writeln!(f, "{m}")?;
        }
        if let Some(o) = &self.outcome {
            writeln!(f, "{o}")?;
        }
        Ok(())
    }
}
