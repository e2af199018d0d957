use thiserror::Error;

/// Errors raised by graph construction, matrix assembly and the numeric routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex {0} is isolated; the extended weighting needs every vertex to have an edge")]
    IsolatedVertex(usize),

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph is not a tree")]
    NotATree,

    #[error("invalid family {family}: {reason}")]
    InvalidFamily { family: String, reason: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("forest contains a cycle")]
    CyclicForest,

    #[error("ambient degree {ambient} of vertex {vertex} is below its forest degree {forest}")]
    AmbientDegreeTooSmall {
        vertex: usize,
        ambient: usize,
        forest: usize,
    },

    #[error(
        "power iteration did not converge after {iterations} iterations \
         (value {value}, residual {residual:e})"
    )]
    NonConvergence {
        value: f64,
        vector: Vec<f64>,
        iterations: usize,
        residual: f64,
    },

    #[error("no root bracketed in [{lo}, {hi}]")]
    RootNotBracketed { lo: f64, hi: f64 },

    #[error("{what} = {value} is out of range: {expected}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        expected: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("adjacent ranked values {a} and {b} differ by {gap:e}, below {threshold:e}; exact adjudication required")]
    NearTie {
        a: String,
        b: String,
        gap: f64,
        threshold: f64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_range(
    what: &'static str,
    value: usize,
    lo: usize,
    hi: usize,
    expected: &'static str,
) -> Result<()> {
    if value < lo || value > hi {
        return Err(Error::OutOfRange {
            what,
            value: value as i64,
            expected,
        });
    }
    Ok(())
}
