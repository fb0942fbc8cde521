use thiserror::Error;

use crate::orbits::OrbitClass;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the range where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("ambient mismatch: GF({q_a})^{n_a} vs GF({q_b})^{n_b}")]
    AmbientMismatch {
        q_a: u32,
        n_a: usize,
        q_b: u32,
        n_b: usize,
    },

    #[error("class mismatch: {left} vs {right}")]
    ClassMismatch { left: String, right: String },

    #[error("orbit class mismatch: {left} vs {right}")]
    OrbitMismatch { left: OrbitClass, right: OrbitClass },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    /// A constructed object failed its own post-hoc verification. Always a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
