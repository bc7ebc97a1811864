use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {residual:.3e})")]
    NonHermitianInput { residual: f64 },

    #[error("eigenvalue iteration did not converge after {iterations} sweeps")]
    ConvergenceFailure { iterations: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix is singular")]
    Singular,

    #[error("index {index} out of range for site of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("partition subsets must be nonempty")]
    EmptyPartition,

    #[error("amplitude matrix is not of product form (rank-1 residual {residual:.3e})")]
    NonProductState { residual: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("operation requires the {expected} sector")]
    WrongSector { expected: &'static str },

    #[error("operation requires {expected}, got N={n_a}, M={n_b}")]
    WrongShape { expected: &'static str, n_a: usize, n_b: usize },

    #[error("at most {max} qubits may be kept, got {requested}")]
    TooManyKept { requested: usize, max: usize },

    #[error("subset carries amplitude {amplitude:.3e} on a weight >= 2 configuration")]
    WeightOverflow { amplitude: f64 },

    #[error("register of {qubits} qubits exceeds the cap of {max}")]
    RegisterTooLarge { qubits: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
