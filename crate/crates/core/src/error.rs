use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("opaque atom `{0}`: its Jacquet module is not computed by the engine")]
    OpaqueAtom(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parameter error: {0}")]
    Params(String),
    #[error("no classifier case covers {0}")]
    Coverage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
