use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("identical points: a line needs two distinct points, got {0} twice")]
    IdenticalPoints(usize),
    #[error("unknown point {point}: universe has {n} points")]
    UnknownPoint { point: usize, n: usize },
    #[error("need at least {needed} points, got {n}")]
    TooFewPoints { n: usize, needed: usize },
    #[error("empty ground set")]
    EmptyGroundSet,
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("malformed hyperedge {edge:?}: {reason}")]
    MalformedEdge { edge: Vec<usize>, reason: &'static str },
    #[error("order relation has a cycle through point {0}")]
    Cycle(usize),
    #[error("invalid graph edge ({a}, {b}): {reason}")]
    InvalidEdge { a: usize, b: usize, reason: &'static str },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("universal line through ({a}, {b}): the process requires a poset with no universal line")]
    UniversalLine { a: usize, b: usize },
    #[error("height {0} < 2: the bound requires h(P) >= 2")]
    Height(usize),
    #[error("metric violation at ({i}, {j}{}): {axiom}", .k.map(|k| format!(", {k}")).unwrap_or_default())]
    MetricViolation {
        axiom: &'static str,
        i: usize,
        j: usize,
        k: Option<usize>,
    },
    #[error("graph is disconnected: no path from {0} to {1}")]
    Disconnected(usize, usize),
    #[error("enumeration cap exceeded: n = {n} > {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid certificate: {0}")]
    Certificate(String),
}
