use thiserror::Error;

/// Errors produced by the simulator library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pauli string length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("qubit count {0} out of range (1..={max})", max = crate::pauli::MAX_QUBITS)]
    QubitCountOutOfRange(usize),

    #[error("dense representation limited to {cap} qubits, got {n}")]
    DenseCapExceeded { n: usize, cap: usize },

    #[error("qubit index {index} out of range for a {n}-qubit network")]
    QubitOutOfRange { index: usize, n: usize },

    #[error("qubit {0} appears more than once in one gate")]
    DuplicateQubit(usize),

    #[error("qubit {0} is acted on by more than one gate in the same step")]
    OverlappingGates(usize),

    #[error("pair correlation needs two distinct qubits, got {0} twice")]
    SameQubit(usize),

    #[error("rotation axis must have unit norm, got |n| = {0}")]
    AxisNotUnit(f64),

    #[error("parameter `{0}` is not bound")]
    UnboundParameter(String),

    #[error("parameter `{0}` is not declared by the circuit")]
    UnknownParameter(String),

    #[error("parameter `{0}` bound more than once")]
    DuplicateBinding(String),

    #[error("time step {t} exceeds circuit depth {depth}")]
    TimeOutOfRange { t: usize, depth: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: {source}")]
    AtLine { line: usize, source: Box<Error> },

    #[error("unknown gate `{0}`")]
    UnknownGate(String),

    #[error("invalid probe: {0}")]
    InvalidProbe(String),

    #[error("subset of {size} qubits exceeds the cap of {cap}")]
    SubsetCapExceeded { size: usize, cap: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("internal consistency violated: {0}")]
    Consistency(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
