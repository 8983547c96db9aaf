use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("PD syntax error: {0}")]
    Syntax(String),
    #[error("arc label {label} appears {count} times (expected exactly 2)")]
    ArcCount { label: u32, count: usize },
    #[error("no coherent orientation of the strands exists")]
    InconsistentOrientation,
    #[error("crossing index {index} out of range (diagram has {len} crossings)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operation requires a connected diagram")]
    SplitDiagram,
    #[error("operation requires a knot diagram (got {components} components)")]
    NotAKnot { components: usize },
    #[error("state assignment has length {got}, diagram has {want} crossings")]
    StateLength { got: usize, want: usize },
    #[error("parity violation: c + 2 - s_A - s_B is odd (corrupted diagram)")]
    ParityViolation,
    #[error("crossing count {crossings} exceeds the configured ceiling {ceiling}")]
    CeilingExceeded { crossings: usize, ceiling: usize },
    #[error("search budget must be positive")]
    EmptyBudget,
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("untwisting failed to terminate (convention bug): {0}")]
    UntwistStuck(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
