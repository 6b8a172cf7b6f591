//! Exact engine for the relator achievement and avoidance games played on
//! Cayley graphs of finite groups.
//!
//! Players take turns extending a walk from the identity by one letter of
//! `S ∪ S⁻¹`, never undoing the previous letter. In the achievement game the
//! first player to revisit a vertex wins; in the avoidance game that player
//! loses. A player with no legal letter loses.

pub mod cayley;
pub mod engine;
pub mod error;
pub mod families;
pub mod group;
pub mod playout;
pub mod solver;
pub mod strategies;
pub mod table;
pub mod verify;

pub use cayley::{CayleyGraph, Letter, LetterId, Sign};
pub use engine::{Game, GameKind, GameState, Outcome, Player, Step, TerminalCause, Trace, Variant};
pub use error::{GameError, GraphError, GroupError, PolicyError, SolveError};
pub use families::{build_group, GensSpec, GroupSpec, Instance};
pub use group::{Element, GeneratingSet, Generator, Group};
pub use solver::{solve, solve_parallel, Budget, SolveResult, Solver};
pub use strategies::{predicted_outcome, BoundPolicy, PolicyId, Prediction};
pub use verify::{run_policy_suite, run_suite, Report, Suite, SuiteConfig};
