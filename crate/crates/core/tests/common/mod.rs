//! Reference implementations used as oracles. They share nothing with the
//! library beyond the multiplication table: moves, legality and outcomes are
//! re-derived here from the rules, and nothing is memoized.

#![allow(dead_code)]

use relgame::{build_group, CayleyGraph, Element, GeneratingSet, Group, GroupSpec, Instance, Variant};

pub fn graph(spec: GroupSpec) -> CayleyGraph {
    let (g, s) = build_group(&spec).expect("group builds");
    CayleyGraph::new(g, s)
}

pub fn instance_graph(instance: &Instance) -> CayleyGraph {
    let (g, s) = instance.build().expect("instance builds");
    CayleyGraph::new(g, s)
}

/// Plain walk game over group elements.
pub struct Reference<'a> {
    group: &'a Group,
    /// Distinct elements of S ∪ S⁻¹.
    letters: Vec<Element>,
    variant: Variant,
    players: usize,
}

#[derive(Clone)]
pub struct Position {
    pub current: Element,
    pub visited: Vec<bool>,
    pub last: Option<Element>,
    pub mover: usize,
}

pub enum Move {
    /// The game ended; the payload is the winning seat.
    Over(usize),
    Continue(Position),
}

impl<'a> Reference<'a> {
    pub fn new(group: &'a Group, gens: &GeneratingSet, variant: Variant, players: usize) -> Self {
        let mut letters = Vec::new();
        for g in gens.generators() {
            for e in [g.element, group.inv(g.element)] {
                if !letters.contains(&e) {
                    letters.push(e);
                }
            }
        }
        Reference { group, letters, variant, players }
    }

    pub fn letters(&self) -> &[Element] {
        &self.letters
    }

    pub fn start(&self) -> Position {
        let e = self.group.identity();
        let mut visited = vec![false; self.group.order()];
        visited[e.index()] = true;
        Position { current: e, visited, last: None, mover: 0 }
    }

    /// Letters other than the inverse of the previous one.
    pub fn legal(&self, p: &Position) -> Vec<Element> {
        let banned = p.last.map(|l| self.group.inv(l));
        self.letters.iter().copied().filter(|&l| Some(l) != banned).collect()
    }

    pub fn play(&self, p: &Position, letter: Element) -> Move {
        let next = self.group.mul(p.current, letter);
        if p.visited[next.index()] {
            return Move::Over(match self.variant {
                Variant::Rel => p.mover,
                Variant::Rav => (p.mover + 1) % self.players,
            });
        }
        let mut q = p.clone();
        q.visited[next.index()] = true;
        q.current = next;
        q.last = Some(letter);
        q.mover = (p.mover + 1) % self.players;
        Move::Continue(q)
    }

    /// The stuck player is last, so the next seat wins.
    pub fn stuck_winner(&self, p: &Position) -> usize {
        (p.mover + 1) % self.players
    }

    /// Places the mover loses, counting from first: 0 means they win.
    fn places_behind(&self, mover: usize, winner: usize) -> usize {
        (mover + self.players - winner) % self.players
    }

    /// Full game-tree value: each player takes the move that ranks them
    /// highest. The winner seat fixes every rank, so this is well defined.
    pub fn winner(&self, p: &Position) -> usize {
        let legal = self.legal(p);
        if legal.is_empty() {
            return self.stuck_winner(p);
        }
        legal
            .into_iter()
            .map(|l| match self.play(p, l) {
                Move::Over(w) => w,
                Move::Continue(q) => self.winner(&q),
            })
            .min_by_key(|&w| self.places_behind(p.mover, w))
            .expect("non-empty")
    }

    /// Whether `seat` can force a first place when all other seats cooperate
    /// against it.
    pub fn forces_win_against_coalition(&self, p: &Position, seat: usize) -> bool {
        let legal = self.legal(p);
        if legal.is_empty() {
            return self.stuck_winner(p) == seat;
        }
        let value = |l| match self.play(p, l) {
            Move::Over(w) => w == seat,
            Move::Continue(q) => self.forces_win_against_coalition(&q, seat),
        };
        if p.mover == seat {
            legal.into_iter().any(value)
        } else {
            legal.into_iter().all(value)
        }
    }
}

/// Every element of `group` obeys the group axioms, by brute force.
pub fn axioms_hold(group: &Group) -> Result<(), String> {
    let e = group.identity();
    let els: Vec<Element> = group.elements().collect();
    for &a in &els {
        if group.mul(a, e) != a || group.mul(e, a) != a {
            return Err(format!("identity fails at {}", group.label(a)));
        }
        let inv = group.inv(a);
        if group.mul(a, inv) != e || group.mul(inv, a) != e {
            return Err(format!("inverse fails at {}", group.label(a)));
        }
        let row: std::collections::HashSet<Element> = els.iter().map(|&b| group.mul(a, b)).collect();
        if row.len() != els.len() {
            return Err(format!("row of {} is not a permutation", group.label(a)));
        }
        for &b in &els {
            let ab = group.mul(a, b);
            for &c in &els {
                if group.mul(ab, c) != group.mul(a, group.mul(b, c)) {
                    return Err(format!("associativity fails at ({},{},{})", a, b, c));
                }
            }
        }
    }
    Ok(())
}
