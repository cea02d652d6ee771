use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("strategy index {index} out of range (have {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("dimension mismatch for {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        found: usize,
    },

    #[error("negative weight {value:e} at index {index}")]
    NegativeWeight { index: usize, value: f64 },

    #[error("weights sum to {sum} (deviation above tolerance {tol:e})")]
    SumDeviation { sum: f64, tol: f64 },

    #[error("non-finite weight at index {index}")]
    NonFiniteWeight { index: usize },

    #[error("empty strategy restriction")]
    EmptyRestriction,

    #[error("linear program failed: {0}")]
    LpFailure(String),

    #[error("invalid link function: {0}")]
    InvalidLink(String),

    #[error("payoff {u} outside link domain [{lo}, {hi}]")]
    OutOfDomain { u: f64, lo: f64, hi: f64 },

    #[error("link domain too small: [{lo}, {hi}]")]
    DomainTooSmall { lo: f64, hi: f64 },

    #[error("nonpositive argument {value} to ln at u = {u}")]
    NonPositiveLogArgument { u: f64, value: f64 },

    #[error("payoff {u} left the link domain [{lo}, {hi}] at t = {t}")]
    LinkDomain { t: f64, u: f64, lo: f64, hi: f64 },

    #[error("non-finite state at t = {t}")]
    NonFinite { t: f64 },

    #[error("background fitness too small: C + g = {value} <= 0 for strategy {strategy}{}", step_suffix(*.step))]
    BackgroundTooSmall {
        step: Option<usize>,
        strategy: usize,
        value: f64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no {0} violation found on the search box")]
    NoViolation(&'static str),

    #[error("infeasible construction: {0}")]
    Infeasible(String),

    #[error("trajectory covers {covered} time units, need at least {needed}")]
    InsufficientCoverage { covered: f64, needed: f64 },

    #[error("unknown name: {0}")]
    UnknownName(String),
}

fn step_suffix(step: Option<usize>) -> String {
    match step {
        Some(n) => format!(" at step {n}"),
        None => String::new(),
    }
}

impl Error {
    /// Failures that arise while running a numerical procedure, as opposed to
    /// malformed inputs or infeasible constructions.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::LpFailure(_)
                | Error::LinkDomain { .. }
                | Error::NonFinite { .. }
                | Error::BackgroundTooSmall { .. }
        )
    }

    pub(crate) fn dims(what: impl Into<String>, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            what: what.into(),
            expected,
            found,
        }
    }
}
