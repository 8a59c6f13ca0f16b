use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid anyon count {0}: at least one anyon is required")]
    InvalidAnyonCount(i64),

    #[error("generator s{index} is out of range for {strands} strands")]
    GeneratorOutOfRange { index: i64, strands: usize },

    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("not a weave: crossing #{ordinal} (s{index}) does not involve the mobile strand")]
    NotAWeave { ordinal: usize, index: usize },

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("memory guard tripped: {0}")]
    MemoryGuard(String),

    #[error("invalid options: {0}")]
    InvalidOptions(String),

    #[error("infeasible weave endpoints: {0}")]
    InfeasibleEndpoints(String),

    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("rotation angle {0:.6} rad exceeds the pi/2 guard for commutator decomposition")]
    AngleGuard(f64),

    #[error("invalid target: {0}")]
    InvalidTarget(String),

    #[error("stage mismatch: {0}")]
    StageMismatch(String),

    #[error("m = {0} is divisible by 5, the controlled rotation degenerates to the identity")]
    DegenerateRotation(i64),

    #[error("net file: {0}")]
    NetFile(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Resource guards map to a distinct CLI exit status.
    pub fn is_resource_guard(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_) | Error::MemoryGuard(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
