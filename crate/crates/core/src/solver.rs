//! Exact evaluation by depth-first search with a transposition table.
//!
//! The value of a position is its winner under optimal play. Each mover
//! picks the child whose winner gives them the best rank; since a player's
//! rank depends only on the winner's seat, preferences are strict and the
//! value is unique. Equal-valued moves are broken by smallest alphabet
//! index.

use std::time::{Duration, Instant};

use rustc_hash::FxHashMap;

use crate::cayley::{CayleyGraph, LetterId};
use crate::engine::{Game, GameKind, GameState, Player, Step, Trace, MAX_GAME_ORDER};
use crate::error::{PolicyError, SolveError};

pub const DEFAULT_MAX_ORDER_TWO_PLAYER: usize = 24;
pub const DEFAULT_MAX_ORDER_MULTI_PLAYER: usize = 16;
pub const DEFAULT_MAX_STATES: u64 = 40_000_000;

/// Environment variable overriding the solver guards.
pub const BUDGET_ENV: &str = "RELGAME_STATE_BUDGET";

/// Limits applied before and during a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_order_two_player: usize,
    pub max_order_multi_player: usize,
    /// Cap on distinct states expanded.
    pub max_states: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_order_two_player: DEFAULT_MAX_ORDER_TWO_PLAYER,
            max_order_multi_player: DEFAULT_MAX_ORDER_MULTI_PLAYER,
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

impl Budget {
    /// Lifts the order guards to the engine limit while keeping the state cap.
    pub fn with_max_order(mut self, order: usize) -> Self {
        self.max_order_two_player = order;
        self.max_order_multi_player = order;
        self
    }

    pub fn with_max_states(mut self, states: u64) -> Self {
        self.max_states = states;
        self
    }

    /// Default budget, or, when `RELGAME_STATE_BUDGET=N` is set, a state cap
    /// of `N` with the order guards lifted to the engine maximum.
    pub fn from_env() -> Self {
        match std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse::<u64>().ok()) {
            Some(n) => Budget::default().with_max_order(MAX_GAME_ORDER).with_max_states(n),
            None => Budget::default(),
        }
    }

    pub fn max_order(&self, players: usize) -> usize {
        if players <= 2 {
            self.max_order_two_player
        } else {
            self.max_order_multi_player
        }
    }

    pub fn check(&self, graph: &CayleyGraph, kind: GameKind) -> Result<(), SolveError> {
        let max = self.max_order(kind.players());
        if graph.order() > max {
            return Err(SolveError::OrderGuard {
                order: graph.order(),
                max,
                players: kind.players(),
                estimate: walk_estimate(graph),
            });
        }
        Ok(())
    }
}

/// Crude upper bound on non-backtracking walks from the identity of length
/// at most `|G| - 1`.
pub fn walk_estimate(graph: &CayleyGraph) -> f64 {
    let d = graph.degree() as f64;
    d * (d - 1.0).max(1.0).powi(graph.order().saturating_sub(2) as i32)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub states_explored: u64,
    pub memo_hits: u64,
    pub elapsed: Duration,
}

/// Game value at the root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub winner: Player,
    pub players: usize,
    /// `None` only when the first player has no move at all.
    pub optimal_first: Option<LetterId>,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn ranking(&self) -> Vec<Player> {
        (0..self.players).map(|k| self.winner.offset(k, self.players)).collect()
    }
}

/// Canonical memo key. The mover is implied by the visited count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StateKey(u128);

impl StateKey {
    const NO_LETTER: u128 = 0xff;

    #[inline]
    pub fn of(state: &GameState) -> Self {
        let last = state.last.map_or(Self::NO_LETTER, |l| l.0 as u128);
        StateKey(state.visited.0 as u128 | (state.current.0 as u128) << 64 | last << 80)
    }
}

/// Storage for solved values; lets one search routine run over a private
/// map or a shared concurrent one.
pub(crate) trait MemoTable {
    fn get(&mut self, key: StateKey) -> Option<Player>;
    fn insert(&mut self, key: StateKey, winner: Player);

    /// Whether the caller no longer needs this search's answer.
    fn abandoned(&self) -> bool {
        false
    }
}

impl MemoTable for FxHashMap<StateKey, Player> {
    #[inline]
    fn get(&mut self, key: StateKey) -> Option<Player> {
        FxHashMap::get(self, &key).copied()
    }

    #[inline]
    fn insert(&mut self, key: StateKey, winner: Player) {
        FxHashMap::insert(self, key, winner);
    }
}

/// Mover's preference distance to a winner: 0 is a win, `p-1` is last place.
#[inline]
fn distance(mover: Player, winner: Player, players: usize) -> usize {
    (mover.index() + players - winner.index()) % players
}

pub(crate) struct Search<'a, 'g, M> {
    game: &'a Game<'g>,
    memo: M,
    explored: u64,
    hits: u64,
    max_states: u64,
}

impl<'a, 'g, M: MemoTable> Search<'a, 'g, M> {
    pub(crate) fn new(game: &'a Game<'g>, memo: M, max_states: u64) -> Self {
        Search { game, memo, explored: 0, hits: 0, max_states }
    }

    /// Winner of `state` under optimal play.
    pub(crate) fn value(&mut self, state: &GameState) -> Result<Player, SolveError> {
        let key = StateKey::of(state);
        if let Some(w) = self.memo.get(key) {
            self.hits += 1;
            return Ok(w);
        }
        self.explored += 1;
        if self.explored > self.max_states {
            return Err(SolveError::StateBudget { budget: self.max_states, explored: self.explored });
        }
        if self.explored.is_multiple_of(1024) && self.memo.abandoned() {
            return Err(SolveError::Abandoned);
        }
        let game = self.game;
        let graph = game.graph();
        let players = game.kind().players();
        let mover = state.mover;
        let banned = state.last.map(|l| graph.inverse(l));
        let successors = graph.successors(state.current);

        let mut best: Option<(usize, Player)> = None;
        let mut fresh = 0u64; // bitmask of letters leading to unvisited vertices
        for (i, &target) in successors.iter().enumerate() {
            let l = LetterId(i as u8);
            if Some(l) == banned {
                continue;
            }
            if state.visited.contains(target) {
                let w = game.relator_outcome(mover).winner;
                let d = distance(mover, w, players);
                if d == 0 {
                    self.memo.insert(key, w);
                    return Ok(w);
                }
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, w));
                }
            } else {
                fresh |= 1 << i;
            }
        }
        while fresh != 0 {
            let i = fresh.trailing_zeros() as usize;
            fresh &= fresh - 1;
            let Step::Next(child) = game.apply_unchecked(state, LetterId(i as u8)) else {
                unreachable!("fresh target")
            };
            let w = self.value(&child)?;
            let d = distance(mover, w, players);
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, w));
                if d == 0 {
                    break;
                }
            }
        }
        let winner = match best {
            Some((_, w)) => w,
            None => game.no_move_outcome(mover).winner,
        };
        self.memo.insert(key, winner);
        Ok(winner)
    }

    /// Winner after playing `letter` from `state`.
    pub(crate) fn child_value(&mut self, state: &GameState, letter: LetterId) -> Result<Player, SolveError> {
        match self.game.apply_unchecked(state, letter) {
            Step::Terminal(o) => Ok(o.winner),
            Step::Next(child) => self.value(&child),
        }
    }

    /// Optimal letter (smallest alphabet index among equals) and its value.
    pub(crate) fn best_move(&mut self, state: &GameState) -> Result<Option<(LetterId, Player)>, SolveError> {
        let players = self.game.kind().players();
        let mut best: Option<(usize, LetterId, Player)> = None;
        for l in self.game.legal_moves(state) {
            let w = self.child_value(state, l)?;
            let d = distance(state.mover, w, players);
            if best.is_none_or(|(bd, _, _)| d < bd) {
                best = Some((d, l, w));
                if d == 0 {
                    break;
                }
            }
        }
        Ok(best.map(|(_, l, w)| (l, w)))
    }

    pub(crate) fn stats(&self) -> (u64, u64) {
        (self.explored, self.hits)
    }
}

/// A reusable solver for one game; its memo persists across queries.
pub struct Solver<'a, 'g> {
    search: Search<'a, 'g, FxHashMap<StateKey, Player>>,
}

impl<'a, 'g> Solver<'a, 'g> {
    pub fn new(game: &'a Game<'g>, budget: Budget) -> Result<Self, SolveError> {
        budget.check(game.graph(), game.kind())?;
        Ok(Solver { search: Search::new(game, FxHashMap::default(), budget.max_states) })
    }

    /// Winner of `state` under optimal play.
    pub fn value(&mut self, state: &GameState) -> Result<Player, SolveError> {
        self.search.value(state)
    }

    /// The mover's optimal letter and the resulting winner.
    pub fn best_move(&mut self, state: &GameState) -> Result<Option<(LetterId, Player)>, SolveError> {
        self.search.best_move(state)
    }

    pub fn solve(&mut self) -> Result<SolveResult, SolveError> {
        let start = Instant::now();
        let root = self.search.game.initial_state();
        let (optimal_first, winner) = match self.search.best_move(&root)? {
            Some((l, w)) => (Some(l), w),
            None => (None, self.search.game.no_move_outcome(root.mover).winner),
        };
        let (states_explored, memo_hits) = self.search.stats();
        Ok(SolveResult {
            winner,
            players: self.search.game.kind().players(),
            optimal_first,
            stats: SolveStats { states_explored, memo_hits, elapsed: start.elapsed() },
        })
    }
}

/// Solves `kind` on `graph` from the initial position.
pub fn solve(graph: &CayleyGraph, kind: GameKind, budget: Budget) -> Result<SolveResult, SolveError> {
    let game = Game::new(graph, kind)?;
    Solver::new(&game, budget)?.solve()
}

/// The mover's optimal letter at `state` and the winner it leads to.
pub fn best_move(
    graph: &CayleyGraph,
    kind: GameKind,
    state: &GameState,
    budget: Budget,
) -> Result<Option<(LetterId, Player)>, SolveError> {
    let game = Game::new(graph, kind)?;
    Solver::new(&game, budget)?.best_move(state)
}

#[cfg(feature = "parallel")]
mod shared {
    use super::*;
    use dashmap::DashMap;
    use rustc_hash::FxBuildHasher;
    use std::sync::atomic::{AtomicUsize, Ordering};

    pub(crate) type SharedMap = DashMap<StateKey, Player, FxBuildHasher>;

    /// A view of the shared memo for the root branch at `branch`. `settled`
    /// holds the lowest branch index known to win for the root mover; any
    /// later branch can stop, since it can neither improve on nor precede it.
    pub(crate) struct SharedMemo<'m> {
        pub map: &'m SharedMap,
        pub settled: &'m AtomicUsize,
        pub branch: usize,
    }

    impl SharedMemo<'_> {
        pub(crate) fn settle(&self) {
            self.settled.fetch_min(self.branch, Ordering::Relaxed);
        }
    }

    impl MemoTable for SharedMemo<'_> {
        #[inline]
        fn get(&mut self, key: StateKey) -> Option<Player> {
            self.map.get(&key).map(|v| *v)
        }

        #[inline]
        fn insert(&mut self, key: StateKey, winner: Player) {
            self.map.insert(key, winner);
        }

        fn abandoned(&self) -> bool {
            self.settled.load(Ordering::Relaxed) < self.branch
        }
    }
}

/// Like [`solve`], expanding the root's children concurrently over a shared
/// concurrent memo. Values are identical to the sequential search; the
/// statistics may differ. Without the `parallel` feature this is [`solve`].
pub fn solve_parallel(graph: &CayleyGraph, kind: GameKind, budget: Budget) -> Result<SolveResult, SolveError> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        use shared::{SharedMap, SharedMemo};

        let game = Game::new(graph, kind)?;
        budget.check(graph, kind)?;
        let start = Instant::now();
        let root = game.initial_state();
        let map = SharedMap::default();
        let settled = std::sync::atomic::AtomicUsize::new(usize::MAX);
        let moves = game.legal_moves(&root);
        let children: Vec<Result<(Player, u64, u64), SolveError>> = moves
            .par_iter()
            .enumerate()
            .map(|(branch, &l)| {
                let memo = SharedMemo { map: &map, settled: &settled, branch };
                let mut search = Search::new(&game, memo, budget.max_states);
                let w = search.child_value(&root, l)?;
                if w == root.mover {
                    search.memo.settle();
                }
                let (e, h) = search.stats();
                Ok((w, e, h))
            })
            .collect();
        let mut best: Option<(usize, LetterId, Player)> = None;
        let mut stats = SolveStats::default();
        for (&l, child) in moves.iter().zip(children) {
            if best.is_some_and(|(d, _, _)| d == 0) {
                break;
            }
            let (w, e, h) = child?;
            stats.states_explored += e;
            stats.memo_hits += h;
            let d = distance(root.mover, w, kind.players());
            if best.is_none_or(|(bd, _, _)| d < bd) {
                best = Some((d, l, w));
            }
        }
        stats.elapsed = start.elapsed();
        let (optimal_first, winner) = match best {
            Some((_, l, w)) => (Some(l), w),
            None => (None, game.no_move_outcome(root.mover).winner),
        };
        Ok(SolveResult { winner, players: kind.players(), optimal_first, stats })
    }
    #[cfg(not(feature = "parallel"))]
    {
        solve(graph, kind, budget)
    }
}

/// A move rule for one seat, consulted by [`adversarial_strategy_check`].
pub trait Policy {
    /// Display name used in diagnostics.
    fn name(&self) -> String;

    /// The letter to play at `state`, reached by playing `history`.
    fn choose(&mut self, state: &GameState, history: &[LetterId]) -> Result<LetterId, PolicyError>;
}

/// Result of checking a policy against every opposing line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyCheck {
    pub holds: bool,
    /// Games ended over the whole tree (or until the first failure).
    pub leaves: u64,
    /// A line where the seat does not finish first.
    pub counterexample: Option<Trace>,
}

/// Which letters the seats not following the policy may play.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Opposition {
    /// Every legal letter.
    Exhaustive,
    /// Only letters that keep the mover's own best achievable rank, as
    /// computed by the solver under the given budget.
    Rational(Budget),
}

/// Plays `policy` for `seat` while every other seat branches over all legal
/// letters; succeeds iff each finished game ranks `seat` first.
pub fn adversarial_strategy_check<P: Policy + ?Sized>(
    policy: &mut P,
    game: &Game<'_>,
    seat: Player,
) -> Result<StrategyCheck, PolicyError> {
    adversarial_strategy_check_with(policy, game, seat, Opposition::Exhaustive)
}

/// [`adversarial_strategy_check`] with a choice of opposition.
pub fn adversarial_strategy_check_with<P: Policy + ?Sized>(
    policy: &mut P,
    game: &Game<'_>,
    seat: Player,
    opposition: Opposition,
) -> Result<StrategyCheck, PolicyError> {
    struct Walk<'a, 'g, P: ?Sized> {
        policy: &'a mut P,
        game: &'a Game<'g>,
        seat: Player,
        oracle: Option<Solver<'a, 'g>>,
        history: Vec<LetterId>,
        leaves: u64,
    }

    impl<P: Policy + ?Sized> Walk<'_, '_, P> {
        /// `Ok(false)` leaves the losing line in `history`.
        fn run(&mut self, state: &GameState) -> Result<bool, PolicyError> {
            let moves = self.game.legal_moves(state);
            if moves.is_empty() {
                self.leaves += 1;
                return Ok(self.game.no_move_outcome(state.mover).winner == self.seat);
            }
            if state.mover == self.seat {
                let l = self.policy.choose(state, &self.history)?;
                if !self.game.is_legal(state, l) {
                    return Err(PolicyError::IllegalLetter {
                        policy: self.policy.name(),
                        letter: self.game.graph().letter(l).name.clone(),
                        position: describe(self.game, &self.history),
                    });
                }
                return self.descend(state, l);
            }
            let moves = match &mut self.oracle {
                None => moves,
                Some(solver) => {
                    let players = self.game.kind().players();
                    let mut scored = Vec::with_capacity(moves.len());
                    for l in moves {
                        let w = solver.search.child_value(state, l)?;
                        scored.push((distance(state.mover, w, players), l));
                    }
                    let best = scored.iter().map(|&(d, _)| d).min().unwrap_or(0);
                    scored.into_iter().filter(|&(d, _)| d == best).map(|(_, l)| l).collect()
                }
            };
            for l in moves {
                if !self.descend(state, l)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }

        fn descend(&mut self, state: &GameState, l: LetterId) -> Result<bool, PolicyError> {
            self.history.push(l);
            let ok = match self.game.apply_unchecked(state, l) {
                Step::Terminal(o) => {
                    self.leaves += 1;
                    o.winner == self.seat
                }
                Step::Next(child) => self.run(&child)?,
            };
            if ok {
                self.history.pop();
            }
            Ok(ok)
        }
    }

    let oracle = match opposition {
        Opposition::Exhaustive => None,
        Opposition::Rational(budget) => Some(Solver::new(game, budget)?),
    };
    let mut walk = Walk { policy, game, seat, oracle, history: Vec::new(), leaves: 0 };
    let holds = walk.run(&game.initial_state())?;
    let counterexample = if holds {
        None
    } else {
        Some(game.replay(&walk.history).expect("recorded line is legal"))
    };
    Ok(StrategyCheck { holds, leaves: walk.leaves, counterexample })
}

/// Word spelled by `history`, e.g. `r s r^-1 @ r^2s`, for diagnostics.
pub(crate) fn describe(game: &Game<'_>, history: &[LetterId]) -> String {
    let graph = game.graph();
    let mut g = graph.group().identity();
    let mut word = Vec::with_capacity(history.len());
    for &l in history {
        g = graph.step(g, l);
        word.push(graph.letter(l).name.as_str());
    }
    let word = if word.is_empty() { "(empty)".to_string() } else { word.join(" ") };
    format!("{word} @ {}", graph.group().label(g))
}
