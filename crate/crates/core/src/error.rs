use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("vertex {vertex} has degree {degree}, exceeding the bound {max_degree}")]
    DegreeBound {
        vertex: usize,
        degree: usize,
        max_degree: usize,
    },

    #[error("more than one 'O' label (second at position {position})")]
    MultipleOxygen { position: usize },

    #[error("'O' label at position {position} is not the root")]
    OxygenNotRoot { position: usize },

    #[error("root vertex {root} has degree {degree}; a pendent root must have degree 1")]
    RootNotPendent { root: usize, degree: usize },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("unknown vertex id {vertex} (order {order})")]
    UnknownVertex { vertex: usize, order: usize },

    #[error("terminal vertex {0} is pendent; the terminal must be an internal vertex")]
    PendentTerminal(usize),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("degree identity violated: degrees sum to {sum}, expected {expected}")]
    DegreeIdentity { sum: usize, expected: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("order {order} out of range {min}..={max}")]
    OrderOutOfRange { order: usize, min: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown objective {0:?}")]
    UnknownObjective(String),

    #[error("rank-deficient design matrix; dependent columns: {columns:?}")]
    RankDeficient { columns: Vec<String> },

    #[error("insufficient data: {records} records for {coefficients} coefficients")]
    InsufficientData { records: usize, coefficients: usize },

    #[error("observations have zero variance")]
    ZeroVariance,

    #[error("line {line}, column {column}: {message}")]
    Dataset {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("json error: {0}")]
    Json(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
