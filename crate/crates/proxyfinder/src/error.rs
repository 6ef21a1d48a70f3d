use thiserror::Error;

/// Errors produced by model validation, estimation, and solving.
#[derive(Debug, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),

    #[error("distribution error: {0}")]
    Distribution(String),

    #[error("function error: {0}")]
    Function(String),

    #[error("instance error: {0}")]
    Instance(String),

    #[error("input error: {0}")]
    Input(String),

    #[error("graph error: {0}")]
    Graph(String),

    /// Exact-enumeration path requested on a distribution that cannot be
    /// enumerated (state space above the configured cap).
    #[error("exact estimation unsupported: {0}")]
    UnsupportedExact(String),

    /// A solver or oracle size cap was exceeded.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    /// Degenerate estimation state (zero-probability conditioning event,
    /// no surviving samples after rejection).
    #[error("estimation error: {0}")]
    Estimation(String),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("scenario file: {0}")]
    ScenarioFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
