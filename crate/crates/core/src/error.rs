use thiserror::Error;

use crate::graph::{GraphClass, NodeId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("node `{0}` not found")]
    NodeNotFound(NodeId),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition of {op} violated: {reason}")]
    PreconditionViolated { op: String, reason: String },

    #[error("graph is outside the class {class} on which {measure} is defined")]
    ClassViolation { measure: String, class: GraphClass },

    #[error("empty graph")]
    EmptyGraph,

    #[error("{what} did not converge (residual {residual:e})")]
    NoConvergence { what: &'static str, residual: f64 },

    #[error("singular linear system in {0}")]
    Singular(&'static str),

    #[error("shortest-path count overflow")]
    Overflow,

    #[error("{0} is not available in exact arithmetic")]
    InexactOnly(&'static str),

    #[error("random graph generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },

    #[error("step {step} (`{op}`): {error}")]
    Step {
        step: usize,
        op: String,
        error: Box<Error>,
    },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn precondition(op: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::PreconditionViolated {
            op: op.into(),
            reason: reason.into(),
        }
    }
}
