use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole: {0}")]
    Pole(String),

    /// The requested accuracy could not be reached within the iteration or
    /// panel caps. `best` and `bound` describe the best result obtained.
    #[error("convergence failure in {what}: best value {best:e} with bound {bound:e}")]
    Convergence { what: String, best: f64, bound: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn convergence(what: impl Into<String>, best: f64, bound: f64) -> Self {
        Error::Convergence {
            what: what.into(),
            best,
            bound,
        }
    }
}
