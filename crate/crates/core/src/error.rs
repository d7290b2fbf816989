use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported diagram {name}: expected one of A1..A8, B2..B8, C2..C8, D4..D8, E6, E7, E8, F4, G2")]
    UnsupportedDiagram { name: String },

    #[error("level identity r(i) + r(g-i+1) = n fails at i = {i}: {lhs} != {rank}")]
    IdentityViolation { i: usize, lhs: usize, rank: usize },

    #[error("verification failed for {diagram}: {reason}")]
    VerificationFailure {
        diagram: String,
        reason: String,
        counterexample: Option<Vec<usize>>,
    },

    #[error("chain family does not cover element {element} of the complement")]
    CoverFailure { element: String },

    #[error("{coeffs:?} is not a positive root of {diagram}")]
    NotARoot { diagram: String, coeffs: Vec<u32> },

    #[error("no lemma witness found for {diagram}: {reason}")]
    WitnessNotFound { diagram: String, reason: String },

    #[error("lemma conclusion fails at element {element}: {reason}")]
    ConclusionFailure { element: usize, reason: String },

    #[error("malformed poset document: {0}")]
    Import(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
