//! Theorem suites: solver outcomes against the prediction table, policy
//! conformance and isomorphism invariance, collected into a JSON report.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cayley::{undirected_isomorphic, CayleyGraph};
use crate::engine::{Game, GameKind, Player};
use crate::error::GroupError;
use crate::families::{GensSpec, GroupSpec, Instance};
use crate::solver::{adversarial_strategy_check_with, solve, Budget, Opposition, SolveResult};
use crate::strategies::{predicted_outcome, BoundPolicy, Opening, PolicyId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Cyclic,
    CompleteBipartite,
    Complete,
    DihedralRel,
    DihedralRav,
    RavOrder2,
    DicyclicRav,
    DicyclicRel,
    Products,
    Rel3Dihedral,
    IsoEquivalence,
    Policies,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Cyclic,
        Suite::CompleteBipartite,
        Suite::Complete,
        Suite::DihedralRel,
        Suite::DihedralRav,
        Suite::RavOrder2,
        Suite::DicyclicRav,
        Suite::DicyclicRel,
        Suite::Products,
        Suite::Rel3Dihedral,
        Suite::IsoEquivalence,
        Suite::Policies,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cyclic => "cyclic",
            Suite::CompleteBipartite => "complete-bipartite",
            Suite::Complete => "complete",
            Suite::DihedralRel => "dihedral-rel",
            Suite::DihedralRav => "dihedral-rav",
            Suite::RavOrder2 => "rav-order2",
            Suite::DicyclicRav => "dicyclic-rav",
            Suite::DicyclicRel => "dicyclic-rel",
            Suite::Products => "products",
            Suite::Rel3Dihedral => "rel3-dihedral",
            Suite::IsoEquivalence => "iso-equivalence",
            Suite::Policies => "policies",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite {s:?}; expected one of {}", names.join(", "))
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub suite: Suite,
    /// Overrides the lower end of the suite's family parameter range.
    pub min_n: Option<usize>,
    /// Overrides the upper end; for `rav-order2` it caps the group order.
    pub max_n: Option<usize>,
    pub budget: Budget,
    /// Cases run concurrently; 1 runs them in order on the calling thread.
    pub threads: usize,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        SuiteConfig { suite, min_n: None, max_n: None, budget: Budget::default(), threads: 1 }
    }

    fn range(&self, lo: usize, hi: usize) -> std::ops::RangeInclusive<usize> {
        self.min_n.unwrap_or(lo).max(lo)..=self.max_n.unwrap_or(hi)
    }

    pub fn validate(&self) -> Result<(), String> {
        if let (Some(a), Some(b)) = (self.min_n, self.max_n) {
            if a > b {
                return Err(format!("--min-n {a} exceeds --max-n {b}"));
            }
        }
        if self.threads == 0 {
            return Err("thread count must be at least 1".into());
        }
        Ok(())
    }
}

/// One line of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub group: String,
    pub gens: String,
    pub game: String,
    pub players: usize,
    pub predicted: String,
    pub solved: String,
    #[serde(rename = "match")]
    pub matched: bool,
    pub states: u64,
    pub ms: u64,
    /// Why the case could not be decided; kept out of the JSON schema.
    #[serde(skip)]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub matched: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
    pub pass: bool,
}

impl Report {
    pub fn new(suite: impl Into<String>, cases: Vec<CaseRecord>) -> Self {
        let matched = cases.iter().filter(|c| c.matched).count();
        let errored = cases.iter().any(|c| c.error.is_some());
        let summary = Summary { total: cases.len(), matched, failed: cases.len() - matched };
        let pass = summary.failed == 0 && !errored;
        Report { suite: suite.into(), cases, summary, pass }
    }

    /// Concatenates several reports under one name.
    pub fn merge(suite: impl Into<String>, reports: Vec<Report>) -> Self {
        Report::new(suite, reports.into_iter().flat_map(|r| r.cases).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Failed cases, with their error message when there is one.
    pub fn failures(&self) -> impl Iterator<Item = &CaseRecord> {
        self.cases.iter().filter(|c| !c.matched || c.error.is_some())
    }
}

fn canonical(spec: GroupSpec) -> Instance {
    Instance::canonical(spec)
}

/// Every instance the suites draw on, in suite order without repeats.
pub fn catalog() -> Vec<Instance> {
    let mut out: Vec<Instance> = Vec::new();
    let mut push = |i: Instance| {
        if !out.contains(&i) {
            out.push(i);
        }
    };
    for n in 2..=12 {
        push(canonical(GroupSpec::Cyclic(n)));
    }
    for n in 3..=6 {
        push(Instance::new(GroupSpec::Cyclic(n), GensSpec::AllNonIdentity));
    }
    push(Instance::new(GroupSpec::Dihedral(3), GensSpec::AllNonIdentity));
    push(canonical(GroupSpec::Quaternion));
    for n in 3..=5 {
        push(Instance::new(GroupSpec::Dihedral(n), GensSpec::ComplementOf("r".into())));
    }
    for n in 2..=3 {
        push(Instance::new(GroupSpec::Dicyclic(n), GensSpec::ComplementOf("a".into())));
    }
    for n in 3..=12 {
        push(canonical(GroupSpec::Dihedral(n)));
    }
    for n in 3..=12 {
        push(canonical(GroupSpec::DihedralCoxeter(n)));
    }
    for n in 2..=4 {
        push(canonical(GroupSpec::Dicyclic(n)));
    }
    for n in 2..=3 {
        push(canonical(GroupSpec::DicyclicTriangle(n)));
    }
    for (n, m) in product_pairs(2..=12, 24) {
        push(canonical(GroupSpec::ProductCyclic(n, m)));
    }
    for f in [vec![3], vec![4], vec![5], vec![6], vec![7], vec![8], vec![9], vec![10], vec![11], vec![12]] {
        push(canonical(GroupSpec::GeneralizedDihedral(f)));
    }
    for f in [vec![2, 2], vec![2, 3], vec![2, 4], vec![3, 3], vec![2, 6], vec![3, 4]] {
        push(canonical(GroupSpec::GeneralizedDihedral(f)));
    }
    out
}

/// `(n, m)` with `m ∈ {2,3,4}`, `n` in range, and `nm ≤ max_order`.
fn product_pairs(ns: std::ops::RangeInclusive<usize>, max_order: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for m in 2..=4 {
        for n in ns.clone() {
            if n >= m.max(2) && n * m <= max_order {
                out.push((n, m));
            }
        }
    }
    out
}

/// One solver case: an instance and a game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveCase {
    pub instance: Instance,
    pub kind: GameKind,
}

/// One policy conformance case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolicyCase {
    pub instance: Instance,
    pub kind: GameKind,
    pub policy: PolicyId,
    pub seat: Player,
}

fn both_games(instances: impl IntoIterator<Item = Instance>) -> Vec<SolveCase> {
    instances
        .into_iter()
        .flat_map(|i| {
            [GameKind::rel(), GameKind::rav()].map(|kind| SolveCase { instance: i.clone(), kind })
        })
        .collect()
}

fn one_game(instances: impl IntoIterator<Item = Instance>, kind: GameKind) -> Vec<SolveCase> {
    instances.into_iter().map(|instance| SolveCase { instance, kind }).collect()
}

fn order_of(i: &Instance) -> usize {
    i.spec.order().unwrap_or(usize::MAX)
}

/// The solver cases of a suite, in report order.
pub fn solve_cases(cfg: &SuiteConfig) -> Vec<SolveCase> {
    use GroupSpec as G;
    match cfg.suite {
        Suite::Cyclic => both_games(cfg.range(3, 12).map(|n| canonical(G::Cyclic(n)))),
        Suite::CompleteBipartite => {
            let mut v = vec![canonical(G::Quaternion)];
            v.extend(cfg.range(3, 5).map(|n| Instance::new(G::Dihedral(n), GensSpec::ComplementOf("r".into()))));
            v.extend((2..=3).map(|n| Instance::new(G::Dicyclic(n), GensSpec::ComplementOf("a".into()))));
            both_games(v)
        }
        Suite::Complete => {
            let mut v: Vec<Instance> =
                cfg.range(3, 6).map(|n| Instance::new(G::Cyclic(n), GensSpec::AllNonIdentity)).collect();
            v.push(Instance::new(G::Dihedral(3), GensSpec::AllNonIdentity));
            both_games(v)
        }
        Suite::DihedralRel => one_game(cfg.range(3, 9).map(|n| canonical(G::Dihedral(n))), GameKind::rel()),
        Suite::DihedralRav => one_game(cfg.range(3, 9).map(|n| canonical(G::Dihedral(n))), GameKind::rav()),
        Suite::RavOrder2 => {
            let cap = cfg.max_n.unwrap_or(24);
            let v = catalog().into_iter().filter(|i| {
                order_of(i) <= cap
                    && i.build().is_ok_and(|(g, s)| s.generators().iter().any(|x| g.element_order(x.element) == 2))
            });
            one_game(v, GameKind::rav())
        }
        Suite::DicyclicRav | Suite::DicyclicRel => {
            let kind = if cfg.suite == Suite::DicyclicRav { GameKind::rav() } else { GameKind::rel() };
            let mut v: Vec<Instance> = cfg.range(2, 4).map(|n| canonical(G::Dicyclic(n))).collect();
            v.extend(cfg.range(2, 3).map(|n| canonical(G::DicyclicTriangle(n))));
            one_game(v, kind)
        }
        Suite::Products => {
            let max_order = if cfg.max_n.is_some() { usize::MAX } else { 24 };
            both_games(
                product_pairs(cfg.range(2, 12), max_order)
                    .into_iter()
                    .map(|(n, m)| canonical(G::ProductCyclic(n, m))),
            )
        }
        Suite::Rel3Dihedral => one_game(
            cfg.range(3, 7).map(|n| canonical(G::Dihedral(n))),
            GameKind::rel_n(3).expect("three players"),
        ),
        Suite::IsoEquivalence | Suite::Policies => Vec::new(),
    }
}

/// Instance pairs whose undirected Cayley graphs should be isomorphic.
pub fn iso_pairs(cfg: &SuiteConfig) -> Vec<(Instance, Instance)> {
    use GroupSpec as G;
    let mut v: Vec<(Instance, Instance)> = cfg
        .range(3, 6)
        .map(|n| (canonical(G::DihedralCoxeter(n)), canonical(G::Cyclic(2 * n))))
        .collect();
    v.extend(cfg.range(3, 5).map(|n| (canonical(G::Dihedral(n)), canonical(G::ProductCyclic(n, 2)))));
    v
}

/// Policy cases, each seated where the corresponding claim places its
/// winner.
pub fn policy_cases(cfg: &SuiteConfig) -> Vec<PolicyCase> {
    use GroupSpec as G;
    let case = |spec: GroupSpec, kind: GameKind, policy: PolicyId, seat: u8| PolicyCase {
        instance: canonical(spec),
        kind,
        policy,
        seat: Player(seat),
    };
    let always_s = || PolicyId::AlwaysInvolution("s".into());
    let mut v = Vec::new();
    for n in cfg.range(3, 9) {
        v.push(case(G::Dihedral(n), GameKind::rav(), always_s(), 0));
    }
    for n in cfg.range(3, 8) {
        v.push(case(G::ProductCyclic(n, 2), GameKind::rav(), always_s(), 0));
    }
    v.push(case(G::GeneralizedDihedral(vec![6]), GameKind::rav(), always_s(), 0));
    for n in cfg.range(3, 9).filter(|n| n % 2 == 1) {
        v.push(case(G::Dihedral(n), GameKind::rel(), PolicyId::DihedralRelOddP1, 0));
    }
    for n in cfg.range(2, 4) {
        v.push(case(G::Dicyclic(n), GameKind::rav(), PolicyId::DicyclicRavToggleX, 0));
    }
    for n in cfg.range(2, 3) {
        v.push(case(G::DicyclicTriangle(n), GameKind::rav(), PolicyId::DicyclicRavToggleB, 0));
    }
    for n in cfg.range(2, 4).filter(|n| n % 2 == 0) {
        v.push(case(G::Dicyclic(n), GameKind::rel(), PolicyId::Mirror, 1));
    }
    for m in 3..=4 {
        for n in cfg.range(m - 1, 7).filter(|&n| n >= 3 && n * m <= 28) {
            let r = n % m;
            let (policy, seat) = if r == 1 {
                (PolicyId::ProductAlternateP1(Opening::A), 0)
            } else if r == m - 1 {
                (PolicyId::ProductAlternateP1(Opening::B), 0)
            } else if r == 0 {
                (PolicyId::ProductAlternateP2, 1)
            } else if m == 4 && r == 2 {
                (PolicyId::ProductZ4P2, 1)
            } else {
                continue;
            };
            v.push(case(G::ProductCyclic(n, m), GameKind::rel(), policy, seat));
        }
    }
    for n in cfg.range(3, 7).filter(|n| n % 2 == 1) {
        v.push(case(G::Dihedral(n), GameKind::rel_n(3).expect("three players"), PolicyId::Rel3AlwaysS, 0));
    }
    v
}

fn graph_of(instance: &Instance) -> Result<CayleyGraph, GroupError> {
    let (g, s) = instance.build()?;
    Ok(CayleyGraph::new(g, s))
}

fn error_record(instance: &Instance, kind: GameKind, predicted: String, error: String) -> CaseRecord {
    CaseRecord {
        group: instance.spec.display_name(),
        gens: instance.to_string(),
        game: kind.variant().to_string(),
        players: kind.players(),
        predicted,
        solved: "error".into(),
        matched: false,
        states: 0,
        ms: 0,
        error: Some(error),
    }
}

/// The report line for a solved instance.
pub fn solve_record(instance: &Instance, graph: &CayleyGraph, kind: GameKind, result: &SolveResult) -> CaseRecord {
    let prediction = predicted_outcome(instance, graph, kind.variant(), kind.players());
    CaseRecord {
        group: instance.spec.display_name(),
        gens: instance.gens_display(graph.gens()),
        game: kind.variant().to_string(),
        players: kind.players(),
        predicted: prediction.to_string(),
        solved: result.winner.to_string(),
        matched: prediction.winner().is_none_or(|w| w == result.winner),
        states: result.stats.states_explored,
        ms: result.stats.elapsed.as_millis() as u64,
        error: None,
    }
}

/// Solves one case and compares against the prediction table. Uncovered
/// cases are recorded as `n/a` and count as matching.
pub fn run_solve_case(case: &SolveCase, budget: Budget) -> CaseRecord {
    let SolveCase { instance, kind } = case;
    let graph = match graph_of(instance) {
        Ok(g) => g,
        Err(e) => return error_record(instance, *kind, "n/a".into(), e.to_string()),
    };
    match solve(&graph, *kind, budget) {
        Ok(r) => solve_record(instance, &graph, *kind, &r),
        Err(e) => {
            let prediction = predicted_outcome(instance, &graph, kind.variant(), kind.players());
            let mut rec = error_record(instance, *kind, prediction.to_string(), e.to_string());
            rec.gens = instance.gens_display(graph.gens());
            rec
        }
    }
}

/// Checks one policy against all opposition. Multiplayer cases let the
/// other seats play any move that is optimal for their own rank, since a
/// fully hostile coalition can always steer the win to a third seat.
pub fn run_policy_case(case: &PolicyCase, budget: Budget) -> CaseRecord {
    let PolicyCase { instance, kind, policy, seat } = case;
    let fail = |e: String| {
        let mut r = error_record(instance, *kind, seat.to_string(), e);
        r.group = format!("{} ({policy})", instance.spec.display_name());
        r
    };
    let graph = match graph_of(instance) {
        Ok(g) => g,
        Err(e) => return fail(e.to_string()),
    };
    let game = match Game::new(&graph, *kind) {
        Ok(g) => g,
        Err(e) => return fail(e.to_string()),
    };
    let start = Instant::now();
    let opposition = if kind.players() > 2 { Opposition::Rational(budget) } else { Opposition::Exhaustive };
    let checked = BoundPolicy::bind(policy.clone(), &game, *seat, budget)
        .and_then(|mut p| adversarial_strategy_check_with(&mut p, &game, *seat, opposition));
    match checked {
        Ok(check) => CaseRecord {
            group: format!("{} ({policy})", instance.spec.display_name()),
            gens: instance.gens_display(graph.gens()),
            game: kind.variant().to_string(),
            players: kind.players(),
            predicted: seat.to_string(),
            solved: match &check.counterexample {
                None => seat.to_string(),
                Some(t) => t.outcome.map_or("n/a".into(), |o| o.winner.to_string()),
            },
            matched: check.holds,
            states: check.leaves,
            ms: start.elapsed().as_millis() as u64,
            error: check.counterexample.map(|t| format!("losing line:\n{t}")),
        },
        Err(e) => fail(e.to_string()),
    }
}

/// Solves both members of an isomorphic pair under one game. The record
/// for the left member carries the right member's winner as its
/// prediction.
pub fn run_iso_case(left: &Instance, right: &Instance, kind: GameKind, budget: Budget) -> CaseRecord {
    let start = Instant::now();
    let graphs = graph_of(left).and_then(|a| Ok((a, graph_of(right)?)));
    let (a, b) = match graphs {
        Ok(p) => p,
        Err(e) => return error_record(left, kind, "n/a".into(), e.to_string()),
    };
    let mut rec = CaseRecord {
        group: format!("{} ~ {}", left.spec.display_name(), right.spec.display_name()),
        gens: format!("{} ~ {}", left.gens_display(a.gens()), right.gens_display(b.gens())),
        game: kind.variant().to_string(),
        players: kind.players(),
        predicted: "n/a".into(),
        solved: "error".into(),
        matched: false,
        states: 0,
        ms: 0,
        error: None,
    };
    let iso = match undirected_isomorphic(&a, &b) {
        Ok(x) => x,
        Err(e) => {
            rec.error = Some(e.to_string());
            return rec;
        }
    };
    let solved = solve(&a, kind, budget).and_then(|x| Ok((x, solve(&b, kind, budget)?)));
    match solved {
        Ok((x, y)) => {
            rec.predicted = y.winner.to_string();
            rec.solved = x.winner.to_string();
            rec.matched = iso && x.winner == y.winner;
            rec.states = x.stats.states_explored + y.stats.states_explored;
            if !iso {
                rec.error = Some("graphs are not isomorphic".into());
            }
        }
        Err(e) => rec.error = Some(e.to_string()),
    }
    rec.ms = start.elapsed().as_millis() as u64;
    rec
}

fn run_all<T: Sync>(items: &[T], threads: usize, f: impl Fn(&T) -> CaseRecord + Sync + Send) -> Vec<CaseRecord> {
    #[cfg(feature = "parallel")]
    if threads > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
        return pool.install(|| items.par_iter().map(&f).collect());
    }
    let _ = threads;
    items.iter().map(f).collect()
}

/// Runs a solver-backed suite (everything except `policies`).
pub fn run_suite(cfg: &SuiteConfig) -> Report {
    let cases = if cfg.suite == Suite::IsoEquivalence {
        let items: Vec<(Instance, Instance, GameKind)> = iso_pairs(cfg)
            .into_iter()
            .flat_map(|(a, b)| [GameKind::rel(), GameKind::rav()].map(|k| (a.clone(), b.clone(), k)))
            .collect();
        run_all(&items, cfg.threads, |(a, b, k)| run_iso_case(a, b, *k, cfg.budget))
    } else if cfg.suite == Suite::Policies {
        return run_policy_suite(cfg);
    } else {
        run_all(&solve_cases(cfg), cfg.threads, |c| run_solve_case(c, cfg.budget))
    };
    Report::new(cfg.suite.name(), cases)
}

/// Runs every policy conformance case.
pub fn run_policy_suite(cfg: &SuiteConfig) -> Report {
    let cases = run_all(&policy_cases(cfg), cfg.threads, |c| run_policy_case(c, cfg.budget));
    Report::new(Suite::Policies.name(), cases)
}

/// Runs every suite with the shared settings of `cfg`.
pub fn run_everything(cfg: &SuiteConfig) -> Vec<Report> {
    Suite::ALL.iter().map(|&suite| run_suite(&SuiteConfig { suite, ..cfg.clone() })).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_suite_has_twenty_cases() {
        let r = run_suite(&SuiteConfig::new(Suite::Cyclic));
        assert_eq!(r.summary.total, 20);
        assert!(r.pass, "{}", r.to_json());
    }

    #[test]
    fn dihedral_rel_winners() {
        let r = run_suite(&SuiteConfig::new(Suite::DihedralRel));
        let winners: Vec<&str> = r.cases.iter().map(|c| c.solved.as_str()).collect();
        assert_eq!(winners, ["P1", "P2", "P1", "P2", "P1", "P1", "P1"]);
        assert!(r.pass);
    }

    #[test]
    fn budget_errors_fail_the_suite() {
        let cfg = SuiteConfig { max_n: Some(9), ..SuiteConfig::new(Suite::DicyclicRel) };
        let r = run_suite(&cfg);
        assert!(!r.pass);
        assert!(r.cases.iter().any(|c| c.solved == "error" && c.error.as_deref().unwrap().contains("guard")));
    }

    #[test]
    fn json_schema_fields() {
        let r = run_suite(&SuiteConfig { max_n: Some(4), ..SuiteConfig::new(Suite::Cyclic) });
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let case = &v["cases"][0];
        let mut keys: Vec<&str> = case.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["game", "gens", "group", "match", "ms", "players", "predicted", "solved", "states"]);
        assert_eq!(v["summary"]["total"], 4);
        assert_eq!(v["pass"], true);
    }

    #[test]
    fn catalog_has_no_duplicates() {
        let c = catalog();
        for (i, a) in c.iter().enumerate() {
            assert!(!c[i + 1..].contains(a), "{a}");
        }
    }

    #[test]
    fn catalog_instances_build() {
        for i in catalog() {
            assert!(i.build().is_ok(), "{i}");
        }
    }

    #[test]
    fn config_validation() {
        let cfg = SuiteConfig { min_n: Some(5), max_n: Some(4), ..SuiteConfig::new(Suite::Cyclic) };
        assert!(cfg.validate().is_err());
        assert!(SuiteConfig::new(Suite::Cyclic).validate().is_ok());
    }
}
