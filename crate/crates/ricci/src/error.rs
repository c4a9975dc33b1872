use std::fmt;

use crate::numerics::Rational;

/// Crate-wide error type.
///
/// Variants map one-to-one onto the failure modes of the public API:
/// construction problems, argument violations, scale limits, and solver
/// self-check failures (`Internal`, which always indicates a bug).
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Loop, duplicate edge, or out-of-range endpoint while building a graph.
    Construction {
        pair: (usize, usize),
        reason: ConstructionReason,
    },
    /// A precondition on an argument value was violated.
    Argument(String),
    /// The operation needs a connected graph (or connected supports).
    Disconnected(String),
    /// Instance is beyond the exhaustive-verification ceiling.
    Scale(String),
    /// Random walk requested at an isolated vertex.
    DegreeZero { vertex: usize },
    /// Transport endpoints carry different total mass; boxed totals keep
    /// the enum small.
    MarginalMismatch(Box<(Rational, Rational)>),
    /// Malformed input text.
    Parse {
        line: Option<usize>,
        offset: Option<usize>,
        message: String,
    },
    /// A statement's hypothesis does not hold for the given instance.
    Precondition(String),
    /// The candidate graph failed a step of the hypercube reconstruction.
    NotHypercube {
        vertex: Option<usize>,
        reason: String,
    },
    /// Exact self-checks failed; this is a solver bug, not a property of the input.
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionReason {
    SelfLoop,
    DuplicateEdge,
    VertexOutOfRange { n: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Construction { pair, reason } => match reason {
                ConstructionReason::SelfLoop => {
                    write!(f, "loop at vertex {} is not allowed", pair.0)
                }
                ConstructionReason::DuplicateEdge => {
                    write!(f, "duplicate edge ({}, {})", pair.0, pair.1)
                }
                ConstructionReason::VertexOutOfRange { n } => {
                    write!(f, "edge ({}, {}) has an endpoint >= n = {}", pair.0, pair.1, n)
                }
            },
            Error::Argument(msg) => write!(f, "invalid argument: {msg}"),
            Error::Disconnected(ctx) => write!(f, "graph is not connected: {ctx}"),
            Error::Scale(msg) => write!(f, "instance too large: {msg}"),
            Error::DegreeZero { vertex } => {
                write!(f, "vertex {vertex} is isolated; random walk undefined")
            }
            Error::MarginalMismatch(totals) => {
                write!(f, "mass totals differ: {} vs {}", totals.0, totals.1)
            }
            Error::Parse {
                line,
                offset,
                message,
            } => {
                write!(f, "parse error")?;
                if let Some(l) = line {
                    write!(f, " at line {l}")?;
                }
                if let Some(o) = offset {
                    write!(f, " at byte {o}")?;
                }
                write!(f, ": {message}")
            }
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::NotHypercube { vertex, reason } => {
                write!(f, "not a hypercube: {reason}")?;
                if let Some(v) = vertex {
                    write!(f, " (at vertex {v})")?;
                }
                Ok(())
            }
            Error::Internal(msg) => write!(f, "internal solver error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
