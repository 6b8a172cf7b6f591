//! Closed-form move policies and the table of predicted winners.

use std::fmt;
use std::str::FromStr;

use crate::cayley::{is_complete, is_complete_bipartite, CayleyGraph, LetterId, Sign};
use crate::engine::{Game, GameState, Player, Variant};
use crate::error::PolicyError;
use crate::families::{GensSpec, GroupSpec, Instance};
use crate::group::Element;
use crate::solver::{Budget, Policy, Solver};

/// Which letter an alternation policy opens with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Opening {
    A,
    B,
}

/// Names of the shipped policies.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PolicyId {
    /// Always play the named involution generator (or the first involution
    /// generator when no such name exists).
    AlwaysInvolution(String),
    DihedralRelOddP1,
    /// Repeat the opponent's previous letter.
    Mirror,
    ProductAlternateP1(Opening),
    ProductAlternateP2,
    ProductZ4P2,
    Rel3AlwaysS,
    DicyclicRavToggleX,
    DicyclicRavToggleB,
    SolverOracle,
}

impl PolicyId {
    pub fn all() -> Vec<PolicyId> {
        vec![
            PolicyId::AlwaysInvolution("s".into()),
            PolicyId::DihedralRelOddP1,
            PolicyId::Mirror,
            PolicyId::ProductAlternateP1(Opening::A),
            PolicyId::ProductAlternateP1(Opening::B),
            PolicyId::ProductAlternateP2,
            PolicyId::ProductZ4P2,
            PolicyId::Rel3AlwaysS,
            PolicyId::DicyclicRavToggleX,
            PolicyId::DicyclicRavToggleB,
            PolicyId::SolverOracle,
        ]
    }

    /// Stable command-line token.
    pub fn token(&self) -> String {
        match self {
            PolicyId::AlwaysInvolution(g) => format!("always-{g}"),
            PolicyId::DihedralRelOddP1 => "dihedral-rel-odd-p1".into(),
            PolicyId::Mirror => "mirror".into(),
            PolicyId::ProductAlternateP1(Opening::A) => "prod-alt-p1-a".into(),
            PolicyId::ProductAlternateP1(Opening::B) => "prod-alt-p1-b".into(),
            PolicyId::ProductAlternateP2 => "prod-alt-p2".into(),
            PolicyId::ProductZ4P2 => "prod-z4-p2".into(),
            PolicyId::Rel3AlwaysS => "rel3-always-s".into(),
            PolicyId::DicyclicRavToggleX => "dic-rav-x".into(),
            PolicyId::DicyclicRavToggleB => "dic-rav-b".into(),
            PolicyId::SolverOracle => "oracle".into(),
        }
    }
}

impl fmt::Display for PolicyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

impl FromStr for PolicyId {
    type Err = PolicyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(id) = PolicyId::all().into_iter().find(|id| id.token() == s) {
            return Ok(id);
        }
        match s.strip_prefix("always-") {
            Some(g) if !g.is_empty() => Ok(PolicyId::AlwaysInvolution(g.to_string())),
            _ => Err(PolicyError::Unknown(s.to_string())),
        }
    }
}

enum Rule<'a, 'g> {
    Involution(LetterId),
    DihedralOdd { r: LetterId, r_inv: LetterId, rotations: Vec<bool> },
    Mirror,
    Alternate { a: usize, b: usize, opening: Option<LetterId>, repeat_first_reply: bool },
    Rel3(LetterId),
    Toggle { up: LetterId, down: LetterId, base: Vec<bool> },
    Oracle(Box<Solver<'a, 'g>>),
}

/// A policy attached to one game and seat.
pub struct BoundPolicy<'a, 'g> {
    id: PolicyId,
    game: &'a Game<'g>,
    seat: Player,
    rule: Rule<'a, 'g>,
}

fn bind_error(id: &PolicyId, reason: impl Into<String>) -> PolicyError {
    PolicyError::Bind { policy: id.token(), reason: reason.into() }
}

fn generator(graph: &CayleyGraph, name: &str) -> Option<(usize, Element)> {
    graph.gens().by_name(name).map(|(i, g)| (i, g.element))
}

fn letter_of(graph: &CayleyGraph, generator: usize, sign: Sign) -> Option<LetterId> {
    graph.alphabet().iter().find(|l| l.generator == generator && l.sign == sign).map(|l| l.id)
}

fn membership(graph: &CayleyGraph, gens: &[Element]) -> Vec<bool> {
    let mut v = vec![false; graph.order()];
    for g in graph.group().closure(gens) {
        v[g.index()] = true;
    }
    v
}

/// First letter (alphabet order) that closes a relator, if any.
pub fn immediate_relator(game: &Game<'_>, state: &GameState) -> Option<LetterId> {
    let graph = game.graph();
    game.legal_iter(state).find(|&l| state.visited.contains(graph.step(state.current, l)))
}

impl<'a, 'g> BoundPolicy<'a, 'g> {
    /// Attaches `id` to `game` for `seat`, checking that the game, seat and
    /// generating set are the ones the policy is meant for.
    pub fn bind(id: PolicyId, game: &'a Game<'g>, seat: Player, budget: Budget) -> Result<Self, PolicyError> {
        let graph = game.graph();
        let group = graph.group();
        let kind = game.kind();
        let expect = |variant: Variant, players: usize, seat_ok: Player| -> Result<(), PolicyError> {
            if kind.variant() != variant || kind.players() != players {
                return Err(bind_error(&id, format!("not applicable to {kind}")));
            }
            if seat != seat_ok {
                return Err(bind_error(&id, format!("plays only as {seat_ok}, not {seat}")));
            }
            Ok(())
        };
        let involution = |name: &str| {
            generator(graph, name)
                .filter(|&(_, e)| group.element_order(e) == 2)
                .and_then(|(i, _)| letter_of(graph, i, Sign::Plus))
        };
        let named = |names: &[&str]| -> Result<Vec<(usize, Element)>, PolicyError> {
            if graph.gens().len() != names.len() {
                return Err(bind_error(&id, format!("needs generating set {{{}}}", names.join(","))));
            }
            names
                .iter()
                .map(|n| generator(graph, n).ok_or_else(|| bind_error(&id, format!("no generator named {n}"))))
                .collect()
        };

        let rule = match &id {
            PolicyId::AlwaysInvolution(name) => {
                expect(Variant::Rav, 2, Player(0))?;
                let first = graph.gens().generators().iter().enumerate().find_map(|(i, g)| {
                    (group.element_order(g.element) == 2).then(|| letter_of(graph, i, Sign::Plus)).flatten()
                });
                let l = involution(name).or(first).ok_or_else(|| bind_error(&id, "no involution generator"))?;
                Rule::Involution(l)
            }
            PolicyId::DihedralRelOddP1 => {
                expect(Variant::Rel, 2, Player(0))?;
                let gens = named(&["r", "s"])?;
                let (ri, r) = gens[0];
                let s = gens[1].1;
                let n = group.element_order(r);
                let dihedral = group.element_order(s) == 2
                    && 2 * n == group.order()
                    && group.mul(group.mul(s, r), s) == group.inv(r);
                if !dihedral || n.is_multiple_of(2) || n < 3 {
                    return Err(bind_error(&id, "needs a dihedral group D_n with n odd and gens {r,s}"));
                }
                Rule::DihedralOdd {
                    r: letter_of(graph, ri, Sign::Plus).expect("r is not an involution"),
                    r_inv: letter_of(graph, ri, Sign::Minus).expect("r is not an involution"),
                    rotations: membership(graph, &[r]),
                }
            }
            PolicyId::Mirror => {
                expect(Variant::Rel, 2, Player(1))?;
                if graph.alphabet().iter().any(|l| graph.inverse(l.id) == l.id) {
                    return Err(bind_error(&id, "an involution generator cannot be repeated"));
                }
                Rule::Mirror
            }
            PolicyId::ProductAlternateP1(_) | PolicyId::ProductAlternateP2 | PolicyId::ProductZ4P2 => {
                let p1 = matches!(id, PolicyId::ProductAlternateP1(_));
                expect(Variant::Rel, 2, if p1 { Player(0) } else { Player(1) })?;
                let gens = named(&["a", "b"])?;
                let ((ai, a), (bi, b)) = (gens[0], gens[1]);
                let (na, nb) = (group.element_order(a), group.element_order(b));
                if group.mul(a, b) != group.mul(b, a) || na < 3 || nb < 3 || na * nb != group.order() {
                    return Err(bind_error(&id, "needs Z_n x Z_m with n, m >= 3 and gens {a,b}"));
                }
                if id == PolicyId::ProductZ4P2 && nb != 4 {
                    return Err(bind_error(&id, "needs b of order 4"));
                }
                let opening = match id {
                    PolicyId::ProductAlternateP1(Opening::A) => letter_of(graph, ai, Sign::Plus),
                    PolicyId::ProductAlternateP1(Opening::B) => letter_of(graph, bi, Sign::Plus),
                    _ => None,
                };
                Rule::Alternate { a: ai, b: bi, opening, repeat_first_reply: id == PolicyId::ProductZ4P2 }
            }
            PolicyId::Rel3AlwaysS => {
                expect(Variant::Rel, 3, Player(0))?;
                Rule::Rel3(involution("s").ok_or_else(|| bind_error(&id, "needs an involution generator s"))?)
            }
            PolicyId::DicyclicRavToggleX | PolicyId::DicyclicRavToggleB => {
                expect(Variant::Rav, 2, Player(0))?;
                let (gens, t) = if id == PolicyId::DicyclicRavToggleX {
                    (named(&["a", "x"])?, 1)
                } else {
                    (named(&["a", "b", "c"])?, 1)
                };
                let (a, (ti, t)) = (gens[0].1, gens[t]);
                let base = membership(graph, &[a]);
                let dicyclic = group.element_order(t) == 4
                    && 2 * group.element_order(a) == group.order()
                    && base[group.mul(t, t).index()];
                if !dicyclic {
                    return Err(bind_error(&id, "needs a dicyclic group with its canonical generators"));
                }
                Rule::Toggle {
                    up: letter_of(graph, ti, Sign::Plus).expect("order four"),
                    down: letter_of(graph, ti, Sign::Minus).expect("order four"),
                    base,
                }
            }
            PolicyId::SolverOracle => Rule::Oracle(Box::new(Solver::new(game, budget)?)),
        };
        Ok(BoundPolicy { id, game, seat, rule })
    }

    pub fn id(&self) -> &PolicyId {
        &self.id
    }

    pub fn seat(&self) -> Player {
        self.seat
    }

    fn prescribe(&mut self, state: &GameState, history: &[LetterId]) -> Result<LetterId, PolicyError> {
        let game = self.game;
        let graph = game.graph();
        let no_move = |id: &PolicyId| PolicyError::NoMove {
            policy: id.token(),
            position: crate::solver::describe(game, history),
        };
        match &mut self.rule {
            Rule::Involution(s) => Ok(*s),
            Rule::DihedralOdd { r, r_inv, rotations } => Ok(match immediate_relator(game, state) {
                Some(w) => w,
                None if rotations[state.current.index()] => *r,
                None => *r_inv,
            }),
            Rule::Mirror => history.last().copied().ok_or_else(|| no_move(&self.id)),
            Rule::Alternate { a, b, opening, repeat_first_reply } => {
                if let Some(w) = immediate_relator(game, state) {
                    return Ok(w);
                }
                let Some(&last) = history.last() else {
                    return opening.ok_or_else(|| no_move(&self.id));
                };
                if *repeat_first_reply && history.len() == 1 {
                    return Ok(last);
                }
                let reply = if graph.letter(last).generator == *a { *b } else { *a };
                let sign = history
                    .iter()
                    .map(|&l| graph.letter(l))
                    .find(|l| l.generator == reply)
                    .map_or(Sign::Plus, |l| l.sign);
                letter_of(graph, reply, sign).ok_or_else(|| no_move(&self.id))
            }
            Rule::Rel3(s) => Ok(immediate_relator(game, state).unwrap_or(*s)),
            Rule::Toggle { up, down, base } => Ok(if base[state.current.index()] { *up } else { *down }),
            Rule::Oracle(solver) => match solver.best_move(state)? {
                Some((l, _)) => Ok(l),
                None => Err(no_move(&self.id)),
            },
        }
    }
}

impl Policy for BoundPolicy<'_, '_> {
    fn name(&self) -> String {
        self.id.token()
    }

    fn choose(&mut self, state: &GameState, history: &[LetterId]) -> Result<LetterId, PolicyError> {
        if state.mover != self.seat {
            return Err(PolicyError::NoMove {
                policy: self.id.token(),
                position: format!("{} to move, policy seated as {}", state.mover, self.seat),
            });
        }
        self.prescribe(state, history)
    }
}

/// Rotation exponent and reflection flag of `g = r^i s^j` in a dihedral
/// group given with generators `{r,s}`.
pub fn dihedral_coords(graph: &CayleyGraph, g: Element) -> Option<(usize, bool)> {
    let group = graph.group();
    let r = generator(graph, "r")?.1;
    let s = generator(graph, "s")?.1;
    let n = group.element_order(r);
    (0..n).find_map(|i| {
        let ri = group.pow(r, i as i64);
        if ri == g {
            Some((i, false))
        } else if group.mul(ri, s) == g {
            Some((i, true))
        } else {
            None
        }
    })
}

/// The two squares (numbered `1..=n`) containing a vertex with rotation
/// exponent `i`: square `k` holds `r^(k-1)`, `r^(k-1)s`, `r^k` and `r^k s`.
pub fn square_of(rotation: usize, n: usize) -> [usize; 2] {
    let i = rotation % n;
    let below = if i == 0 { n } else { i };
    let mut sq = [below, i + 1];
    sq.sort_unstable();
    sq
}

/// A closed-form claim about the winner of one family of games.
pub struct PredictionEntry {
    pub claim: &'static str,
    pub variant: Variant,
    pub players: usize,
    pub applies: fn(&Subject<'_>) -> bool,
    pub winner: Player,
}

/// The instance a prediction is asked about.
pub struct Subject<'a> {
    pub instance: &'a Instance,
    pub graph: &'a CayleyGraph,
}

impl Subject<'_> {
    fn canonical(&self) -> Option<&GroupSpec> {
        (self.instance.gens == GensSpec::Canonical).then_some(&self.instance.spec)
    }

    fn order(&self) -> usize {
        self.graph.order()
    }

    fn cyclic(&self) -> Option<usize> {
        match self.canonical()? {
            GroupSpec::Cyclic(n) if *n >= 3 => Some(*n),
            _ => None,
        }
    }

    fn coxeter(&self) -> Option<usize> {
        match self.canonical()? {
            GroupSpec::DihedralCoxeter(n) => Some(*n),
            _ => None,
        }
    }

    fn dihedral(&self) -> Option<usize> {
        match self.canonical()? {
            GroupSpec::Dihedral(n) => Some(*n),
            GroupSpec::GeneralizedDihedral(f) if f.len() == 1 && f[0] >= 3 => Some(f[0]),
            GroupSpec::ProductCyclic(n, 2) | GroupSpec::ProductCyclic(2, n) if *n >= 3 => Some(*n),
            _ => None,
        }
    }

    fn dicyclic(&self) -> Option<usize> {
        match self.canonical()? {
            GroupSpec::Dicyclic(n) => Some(*n),
            GroupSpec::Quaternion => Some(2),
            _ => None,
        }
    }

    fn triangle(&self) -> Option<usize> {
        match self.canonical()? {
            GroupSpec::DicyclicTriangle(n) => Some(*n),
            _ => None,
        }
    }

    fn product(&self) -> Option<(usize, usize)> {
        match self.canonical()? {
            GroupSpec::ProductCyclic(n, m) => Some((*n, *m)),
            _ => None,
        }
    }

    fn has_involution_generator(&self) -> bool {
        let group = self.graph.group();
        self.graph.gens().generators().iter().any(|g| group.element_order(g.element) == 2)
    }
}

/// Winner of `REL(Z_n x Z_m, {a,b})` from the residue of `n` modulo `m`.
fn product_rule(n: usize, m: usize) -> Option<Player> {
    if m < 3 || n < 3 || n + 1 < m {
        return None;
    }
    match n % m {
        r if r == 1 || r == m - 1 => Some(Player(0)),
        0 => Some(Player(1)),
        2 if m == 4 => Some(Player(1)),
        _ => None,
    }
}

fn product_winner(s: &Subject<'_>) -> Option<Player> {
    let (n, m) = s.product()?;
    product_rule(n, m).or_else(|| product_rule(m, n))
}

fn dihedral_rel_p1(n: usize) -> bool {
    n % 2 == 1 || n % 6 == 2
}

const P1: Player = Player(0);
const P2: Player = Player(1);
const P3: Player = Player(2);

/// Every closed-form claim, most specific first.
pub fn prediction_table() -> Vec<PredictionEntry> {
    use Variant::{Rav, Rel};
    macro_rules! entry {
        ($claim:expr, $variant:expr, $players:expr, $winner:expr, $applies:expr) => {
            PredictionEntry { claim: $claim, variant: $variant, players: $players, applies: $applies, winner: $winner }
        };
    }
    vec![
        entry!("no first move", Rel, 2, P2, |s| s.order() == 1),
        entry!("no first move", Rav, 2, P2, |s| s.order() == 1),
        entry!("single edge", Rel, 2, P1, |s| s.order() == 2),
        entry!("single edge", Rav, 2, P1, |s| s.order() == 2),
        entry!("cycle parity", Rel, 2, P1, |s| s.cyclic().is_some_and(|n| n % 2 == 1)),
        entry!("cycle parity", Rel, 2, P2, |s| s.cyclic().is_some_and(|n| n % 2 == 0)),
        entry!("cycle parity", Rav, 2, P1, |s| s.cyclic().is_some_and(|n| n % 2 == 0)),
        entry!("cycle parity", Rav, 2, P2, |s| s.cyclic().is_some_and(|n| n % 2 == 1)),
        entry!("coxeter dihedral is an even cycle", Rel, 2, P2, |s| s.coxeter().is_some()),
        entry!("coxeter dihedral is an even cycle", Rav, 2, P1, |s| s.coxeter().is_some()),
        entry!("complete graph", Rel, 2, P1, |s| s.order() >= 3 && is_complete(s.graph)),
        entry!("complete graph, even order", Rav, 2, P1, |s| s.order() >= 3
            && s.order() % 2 == 0
            && is_complete(s.graph)),
        entry!("complete graph, odd order", Rav, 2, P2, |s| s.order() >= 3
            && s.order() % 2 == 1
            && is_complete(s.graph)),
        entry!("complete bipartite graph", Rel, 2, P2, |s| s.order() >= 4 && is_complete_bipartite(s.graph)),
        entry!("complete bipartite graph", Rav, 2, P1, |s| s.order() >= 4 && is_complete_bipartite(s.graph)),
        entry!("dihedral squares", Rel, 2, P1, |s| s.dihedral().is_some_and(dihedral_rel_p1)),
        entry!("dihedral squares", Rel, 2, P2, |s| s.dihedral().is_some_and(|n| !dihedral_rel_p1(n))),
        entry!("dicyclic toggle", Rav, 2, P1, |s| s.dicyclic().is_some() || s.triangle().is_some()),
        entry!("dicyclic, odd n", Rel, 2, P1, |s| s.dicyclic().is_some_and(|n| n % 2 == 1 && n >= 3)),
        entry!("dicyclic, even n", Rel, 2, P2, |s| s.dicyclic().is_some_and(|n| n % 2 == 0)),
        entry!("dicyclic triangle generators", Rel, 2, P2, |s| s.triangle().is_some()),
        entry!("product residue", Rel, 2, P1, |s| product_winner(s) == Some(P1)),
        entry!("product residue", Rel, 2, P2, |s| product_winner(s) == Some(P2)),
        entry!("product of two involutions", Rel, 2, P2, |s| s.product() == Some((2, 2))),
        entry!("involution generator", Rav, 2, P1, |s| s.has_involution_generator()),
        entry!("three-player dihedral, odd n", Rel, 3, P1, |s| matches!(s.canonical(), Some(GroupSpec::Dihedral(n)) if n % 2 == 1)),
        entry!("three-player dihedral, even n", Rel, 3, P3, |s| matches!(s.canonical(), Some(GroupSpec::Dihedral(n)) if n % 2 == 0)),
    ]
}

/// A predicted winner and the claim behind it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prediction {
    Winner { winner: Player, claim: &'static str },
    NotCovered,
}

impl Prediction {
    pub fn winner(&self) -> Option<Player> {
        match self {
            Prediction::Winner { winner, .. } => Some(*winner),
            Prediction::NotCovered => None,
        }
    }
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prediction::Winner { winner, .. } => write!(f, "{winner}"),
            Prediction::NotCovered => f.write_str("n/a"),
        }
    }
}

/// All table entries matching an instance, in table order.
pub fn applicable_claims(
    instance: &Instance,
    graph: &CayleyGraph,
    variant: Variant,
    players: usize,
) -> Vec<(&'static str, Player)> {
    let subject = Subject { instance, graph };
    prediction_table()
        .into_iter()
        .filter(|e| e.variant == variant && e.players == players && (e.applies)(&subject))
        .map(|e| (e.claim, e.winner))
        .collect()
}

/// The table's winner for an instance, or `NotCovered`.
pub fn predicted_outcome(instance: &Instance, graph: &CayleyGraph, variant: Variant, players: usize) -> Prediction {
    match applicable_claims(instance, graph, variant, players).first() {
        Some(&(claim, winner)) => Prediction::Winner { winner, claim },
        None => Prediction::NotCovered,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{GameKind, Step};
    use crate::families::build_group;

    fn graph(spec: GroupSpec) -> CayleyGraph {
        let (g, s) = build_group(&spec).unwrap();
        CayleyGraph::new(g, s)
    }

    fn predict(spec: GroupSpec, variant: Variant, players: usize) -> Prediction {
        let inst = Instance::canonical(spec);
        let g = graph(inst.spec.clone());
        predicted_outcome(&inst, &g, variant, players)
    }

    fn play(game: &Game<'_>, names: &[&str]) -> (GameState, Vec<LetterId>) {
        let mut state = game.initial_state();
        let mut hist = Vec::new();
        for n in names {
            let l = game.graph().parse_letter(n).unwrap();
            let Step::Next(s) = game.apply_move(&state, l).unwrap() else { panic!("terminal at {n}") };
            state = s;
            hist.push(l);
        }
        (state, hist)
    }

    #[test]
    fn tokens_round_trip() {
        for id in PolicyId::all() {
            assert_eq!(id.token().parse::<PolicyId>().unwrap(), id);
        }
        assert!("always".parse::<PolicyId>().is_err());
        assert_eq!("always-t".parse::<PolicyId>().unwrap(), PolicyId::AlwaysInvolution("t".into()));
    }

    #[test]
    fn predictions() {
        assert_eq!(predict(GroupSpec::Dihedral(8), Variant::Rel, 2).winner(), Some(P1));
        assert_eq!(predict(GroupSpec::ProductCyclic(6, 4), Variant::Rel, 2).winner(), Some(P2));
        assert_eq!(predict(GroupSpec::Dihedral(4), Variant::Rel, 3).winner(), Some(P3));
        assert_eq!(predict(GroupSpec::ProductCyclic(7, 5), Variant::Rel, 2), Prediction::NotCovered);
        assert_eq!(predict(GroupSpec::ProductCyclic(3, 4), Variant::Rel, 2).winner(), Some(P1));
    }

    #[test]
    fn mirror_repeats_last_letter() {
        let g = graph(GroupSpec::DicyclicTriangle(3));
        let game = Game::new(&g, GameKind::rel()).unwrap();
        let mut p = BoundPolicy::bind(PolicyId::Mirror, &game, P2, Budget::default()).unwrap();
        let (s, h) = play(&game, &["c^-1"]);
        assert_eq!(g.letter(p.choose(&s, &h).unwrap()).name, "c^-1");
    }

    #[test]
    fn toggle_x_from_rotation() {
        let g = graph(GroupSpec::Dicyclic(3));
        let game = Game::new(&g, GameKind::rav()).unwrap();
        let mut p = BoundPolicy::bind(PolicyId::DicyclicRavToggleX, &game, P1, Budget::default()).unwrap();
        let (s, h) = play(&game, &["x", "x"]);
        assert_eq!(g.group().label(s.current), "a^3");
        assert_eq!(g.letter(p.choose(&s, &h).unwrap()).name, "x");
    }

    #[test]
    fn alternation_opens_with_a() {
        let g = graph(GroupSpec::ProductCyclic(4, 3));
        let game = Game::new(&g, GameKind::rel()).unwrap();
        let mut p = BoundPolicy::bind(PolicyId::ProductAlternateP1(Opening::A), &game, P1, Budget::default()).unwrap();
        assert_eq!(g.letter(p.choose(&game.initial_state(), &[]).unwrap()).name, "a");
        let (s, h) = play(&game, &["a", "b^-1"]);
        assert_eq!(g.letter(p.choose(&s, &h).unwrap()).name, "a");
        let (s, h) = play(&game, &["a", "a"]);
        assert_eq!(g.letter(p.choose(&s, &h).unwrap()).name, "b");
    }

    #[test]
    fn bind_rejects_wrong_context() {
        let d6 = graph(GroupSpec::Dihedral(6));
        let rel = Game::new(&d6, GameKind::rel()).unwrap();
        assert!(BoundPolicy::bind(PolicyId::AlwaysInvolution("s".into()), &rel, P1, Budget::default()).is_err());
        assert!(BoundPolicy::bind(PolicyId::DihedralRelOddP1, &rel, P1, Budget::default()).is_err());
        let rav = Game::new(&d6, GameKind::rav()).unwrap();
        assert!(BoundPolicy::bind(PolicyId::AlwaysInvolution("s".into()), &rav, P2, Budget::default()).is_err());
        assert!(BoundPolicy::bind(PolicyId::Mirror, &rel, P2, Budget::default()).is_err());
    }

    #[test]
    fn squares() {
        let d5 = graph(GroupSpec::Dihedral(5));
        let at = |label: &str| {
            let (i, _) = dihedral_coords(&d5, d5.group().element_by_label(label).unwrap()).unwrap();
            square_of(i, 5)
        };
        assert_eq!(at("e"), [1, 5]);
        assert_eq!(at("r^2s"), [2, 3]);
        assert_eq!(at("r"), [1, 2]);
    }
}
