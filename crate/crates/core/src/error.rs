use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters { family: &'static str, reason: String },
    #[error("group must have at least one element")]
    EmptyGroup,
    #[error("group order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("table has {found} entries, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("table entry {entry} out of range for order {order}")]
    EntryOutOfRange { entry: usize, order: usize },
    #[error("expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("index 0 is not an identity (fails at element {0})")]
    Identity(usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("generator {0:?} is the identity")]
    IdentityGenerator(String),
    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),
    #[error("invalid generator name {0:?}")]
    BadGeneratorName(String),
    #[error("generators reach only {reached} of {order} elements")]
    NotGenerating { reached: usize, order: usize },
    #[error("defining relator {relator} of {group} evaluates to {value}, not the identity")]
    RelatorFailed { group: String, relator: String, value: String },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("isomorphism check is limited to order {max}, got {order}")]
    OrderLimit { order: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("letter {0} is not legal in this position")]
    IllegalLetter(String),
    #[error("game has legal moves; no-move outcome is undefined here")]
    MovesAvailable,
    #[error("avoidance game is defined for two players only, got {0}")]
    AvoidancePlayers(usize),
    #[error("at least two players are required, got {0}")]
    TooFewPlayers(usize),
    #[error("at most {max} players are supported, got {got}")]
    TooManyPlayers { got: usize, max: usize },
    #[error("games are limited to groups of order {max}, got {order}")]
    OrderLimit { order: usize, max: usize },
    #[error("position is terminal")]
    Terminal,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("group order {order} exceeds the solver guard {max} for {players} players (roughly {estimate:.1e} walks to search); raise RELGAME_STATE_BUDGET to override")]
    OrderGuard { order: usize, max: usize, players: usize, estimate: f64 },
    #[error("state budget of {budget} exhausted after {explored} states")]
    StateBudget { budget: u64, explored: u64 },
    #[error(transparent)]
    Game(#[from] GameError),
    /// A parallel branch was dropped because a sibling already decided the
    /// root. Never escapes the public solve functions.
    #[error("search abandoned")]
    Abandoned,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolicyError {
    #[error("policy {policy} cannot be bound: {reason}")]
    Bind { policy: String, reason: String },
    #[error("policy {policy} prescribed illegal letter {letter} at {position}")]
    IllegalLetter { policy: String, letter: String, position: String },
    #[error("policy {policy} has no prescription at {position}")]
    NoMove { policy: String, position: String },
    #[error("unknown policy {0:?}")]
    Unknown(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
}
