use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit cap exceeded: {requested} qubits requested, cap is {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("qubit index {index} out of range for a {n_qubits}-qubit register")]
    IndexOutOfRange { index: usize, n_qubits: usize },

    #[error("target qubit {0} listed more than once")]
    DuplicateTarget(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("key has {got} bits, expected {expected}")]
    KeyLength { expected: usize, got: usize },

    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("not a density matrix: {0}")]
    InvalidDensity(String),

    #[error("operator is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("table is not a bijection on {domain} elements")]
    NotBijective { domain: usize },

    #[error("function table has {got} entries, expected {expected}")]
    IncompleteTable { expected: usize, got: usize },

    #[error("value {value} does not fit in {bits} bits")]
    ValueOutOfRange { value: u64, bits: usize },

    #[error("partial trace needs at least one kept qubit")]
    EmptyKeep,

    #[error("forced measurement outcome {0:#b} has zero probability")]
    ZeroProbability(usize),

    #[error("malformed circuit description: {0}")]
    MalformedCircuit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
