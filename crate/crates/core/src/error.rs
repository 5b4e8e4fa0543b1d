use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),

    #[error("vertex index {index} out of range for n = {n}")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("duplicate face {0:?}")]
    DuplicateFace([usize; 3]),

    #[error("degenerate simplex {0:?}: repeated vertex")]
    DegenerateSimplex(Vec<usize>),

    #[error("chain has {got} entries but the complex indexes {expected}")]
    IndexMismatch { expected: usize, got: usize },

    #[error("edge {0:?} is not in the complex")]
    MissingEdge((usize, usize)),

    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },

    #[error("no nonzero 2-cycle is supported on the given faces")]
    NoCycle,

    #[error("the 1-chain is not a cycle")]
    NotACycle,

    #[error("triangle {0:?} does not bound a 2-chain")]
    Unfillable([usize; 3]),

    #[error("no rich induced subcomplex found in {0} attempts")]
    AttemptsExhausted(usize),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error("no cycle of length at most {bound} was found")]
    NoShortCycle { bound: usize },

    #[error("gluing error: {0}")]
    Gluing(String),

    #[error("malformed story: {0}")]
    MalformedStory(String),

    #[error("state is not closed")]
    NotClosed,

    #[error("not a triangulated surface")]
    NotSurface,

    #[error("a census up to f = {f_max} exceeds the exhaustive limit f <= {limit}")]
    CensusLimit { f_max: usize, limit: usize },

    #[error("group of order {0} is too large to sweep")]
    GroupTooLarge(u128),

    #[error("property violation: {0}")]
    PropertyViolation(String),

    #[error("empty seed list")]
    EmptySeedList,

    #[error("every seed in the batch failed")]
    AllSeedsFailed,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by the caller's input rather than by search limits.
    pub fn is_invalid_input(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::VertexOutOfRange { .. }
                | Error::DuplicateFace(_)
                | Error::DegenerateSimplex(_)
                | Error::IndexMismatch { .. }
                | Error::MissingEdge(_)
                | Error::NotACycle
                | Error::InvalidParams(_)
                | Error::PreconditionUnmet(_)
                | Error::MalformedStory(_)
                | Error::EmptySeedList
                | Error::Json(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
