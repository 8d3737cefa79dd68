use thiserror::Error;

/// Errors produced by evaluation, bound checking and table reproduction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the region where the requested quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The series did not reach the requested tolerance within `max_terms` terms.
    #[error("series did not converge after {terms} terms (relative tail bound {tail_bound:e})")]
    NonConvergence { terms: usize, tail_bound: f64 },

    /// A gamma factor of the normalization constant sits on a pole.
    #[error("normalization pole: {0}")]
    NormalizationPole(String),

    #[error("unknown bound id `{0}`")]
    UnknownBoundId(String),

    #[error("invalid evaluation options: {0}")]
    InvalidOptions(String),

    /// Two algebraically equivalent routes disagreed beyond the internal tolerance.
    #[error("cross-check failed for {what}: {first} vs {second}")]
    CrossCheck {
        what: &'static str,
        first: f64,
        second: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
