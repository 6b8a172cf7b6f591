//! Uniformly random playouts.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cayley::LetterId;
use crate::engine::{Game, Outcome, Step};

/// One finished random game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Playout {
    pub letters: Vec<LetterId>,
    pub outcome: Outcome,
}

/// Plays uniformly random legal letters until the game ends.
pub fn random_playout<R: Rng + ?Sized>(game: &Game<'_>, rng: &mut R) -> Playout {
    let mut state = game.initial_state();
    let mut letters = Vec::new();
    loop {
        let moves = game.legal_moves(&state);
        let Some(&l) = moves.choose(rng) else {
            let outcome = game.outcome_if_no_moves(&state).expect("no legal moves");
            return Playout { letters, outcome };
        };
        letters.push(l);
        match game.apply_move(&state, l).expect("legal by construction") {
            Step::Next(s) => state = s,
            Step::Terminal(outcome) => return Playout { letters, outcome },
        }
    }
}

/// Aggregate over a batch of playouts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlayoutSummary {
    pub games: u64,
    pub longest: usize,
    pub total_moves: u64,
    /// Games won, indexed by seat.
    pub wins: Vec<u64>,
}

impl PlayoutSummary {
    fn add(&mut self, p: &Playout) {
        if self.wins.len() < p.outcome.players {
            self.wins.resize(p.outcome.players, 0);
        }
        self.games += 1;
        self.longest = self.longest.max(p.letters.len());
        self.total_moves += p.letters.len() as u64;
        self.wins[p.outcome.winner.index()] += 1;
    }

    fn merge(mut self, other: PlayoutSummary) -> Self {
        if self.wins.len() < other.wins.len() {
            self.wins.resize(other.wins.len(), 0);
        }
        self.games += other.games;
        self.longest = self.longest.max(other.longest);
        self.total_moves += other.total_moves;
        for (a, b) in self.wins.iter_mut().zip(other.wins) {
            *a += b;
        }
        self
    }
}

/// The `i`-th game of a batch draws from its own stream, so results do not
/// depend on how the batch is split across threads.
fn nth(game: &Game<'_>, seed: u64, i: u64) -> Playout {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    random_playout(game, &mut rng)
}

/// Runs `count` playouts, visiting each with `inspect`, and summarizes.
pub fn playout_batch<F>(game: &Game<'_>, count: u64, seed: u64, inspect: F) -> PlayoutSummary
where
    F: Fn(&Playout) + Sync,
{
    let one = |i: u64| {
        let p = nth(game, seed, i);
        inspect(&p);
        let mut s = PlayoutSummary::default();
        s.add(&p);
        s
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..count).into_par_iter().map(one).reduce(PlayoutSummary::default, PlayoutSummary::merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(one).fold(PlayoutSummary::default(), PlayoutSummary::merge)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::CayleyGraph;
    use crate::engine::GameKind;
    use crate::families::{build_group, GroupSpec};

    #[test]
    fn batch_is_reproducible() {
        let (g, s) = build_group(&GroupSpec::Dihedral(5)).unwrap();
        let graph = CayleyGraph::new(g, s);
        let game = Game::new(&graph, GameKind::rel()).unwrap();
        let a = playout_batch(&game, 500, 7, |_| {});
        let b = playout_batch(&game, 500, 7, |_| {});
        assert_eq!(a, b);
        assert_eq!(a.games, 500);
        assert!(a.longest <= 10);
        assert_eq!(a.wins.iter().sum::<u64>(), 500);
    }

    #[test]
    fn z3_always_closes_on_third_move() {
        let (g, s) = build_group(&GroupSpec::Cyclic(3)).unwrap();
        let graph = CayleyGraph::new(g, s);
        let game = Game::new(&graph, GameKind::rel()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let p = random_playout(&game, &mut rng);
            assert_eq!(p.letters.len(), 3);
            assert_eq!(p.outcome.winner.index(), 0);
        }
    }
}
