use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("objective is not finite at {at}")]
    NonFinite { at: f64 },

    /// The infimum of a convex objective was not bracketed; it is either
    /// approached at infinity or diverges. `best` is the lowest value seen.
    #[error("failed to bracket minimizer after {doublings} doublings (best value {best} at ({x}, {z}))")]
    Unbracketed {
        doublings: usize,
        x: f64,
        z: f64,
        best: f64,
    },

    #[error("power iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("edge distribution is not a stationary Markov chain: {0}")]
    NotStationary(String),

    #[error("invalid cycle: {0}")]
    InvalidPath(String),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    /// Branch-and-bound stopped early. `best` is the largest code found so far
    /// and is therefore a certified lower bound on the optimum.
    #[error("search budget of {budget} nodes exhausted (best found {best})")]
    BudgetExceeded { budget: u64, best: usize },

    #[error("invalid request: {0}")]
    InvalidRequest(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}
