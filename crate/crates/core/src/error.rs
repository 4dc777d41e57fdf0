use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid instance spec: {0}")]
    InvalidSpec(String),

    #[error("graph is disconnected ({components} components); connect it first")]
    Disconnected { components: usize },

    #[error("{0} is not a permutation of the vertex set")]
    NotAPermutation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("exact search refused: n = {n} exceeds the budget of {limit} vertices")]
    BudgetExceeded { n: usize, limit: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("warm start infeasible at vertex {vertex}: {msg}")]
    WarmStart { vertex: usize, msg: String },

    #[error("solver failed: {msg}\n{output}")]
    Solver { msg: String, output: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
