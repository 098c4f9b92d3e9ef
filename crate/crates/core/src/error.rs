use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is not 2-connected")]
    NotBiconnected,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("enumeration guard exceeded: {pairs} distinct edge pairs, guard is {guard}")]
    GuardExceeded { pairs: usize, guard: usize },

    #[error("deletion-contraction budget of {0} expansions exhausted")]
    BudgetExhausted(u64),

    #[error("inexact polynomial division: {0}")]
    InexactDivision(String),

    #[error("root iteration did not converge (precision escalated to {0} bits)")]
    NoConvergence(u32),

    #[error("Schur-Cohn hypothesis fails: determinant M_{0} is exactly zero")]
    ZeroDeterminant(usize),

    #[error("sign pattern indeterminate after subdivision to depth {0}")]
    Indeterminate(u32),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::GuardExceeded { .. } | Error::BudgetExhausted(_) => 2,
            Error::Indeterminate(_) | Error::ZeroDeterminant(_) => 3,
            Error::NoConvergence(_) | Error::InexactDivision(_) => 4,
            _ => 1,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
