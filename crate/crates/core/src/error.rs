use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown element symbol `{0}`")]
    UnknownElement(String),
    #[error("unsupported basis set `{0}`")]
    UnsupportedBasis(String),
    #[error("element {symbol} is not covered by basis set {basis}")]
    ElementNotInBasis { symbol: String, basis: String },
    #[error("atoms {0} and {1} share a position")]
    CoincidentAtoms(usize, usize),
    #[error("invalid molecule: {0}")]
    InvalidMolecule(String),
    #[error("{n} basis functions exceeds the dense integral limit of {max}")]
    BasisTooLarge { n: usize, max: usize },
    #[error("overlap matrix is singular or not positive definite (smallest eigenvalue {0:e})")]
    SingularOverlap(f64),
    #[error("invalid electron count: {0}")]
    InvalidElectronCount(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid active space: {0}")]
    InvalidActiveSpace(String),
    #[error("fermionic mode {mode} out of range for {n_modes} modes")]
    ModeOutOfRange { mode: usize, n_modes: usize },
    #[error("qubit index {qubit} out of range for {n_qubits} qubits")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("{requested} qubits exceeds the limit of {max}")]
    QubitCapExceeded { requested: usize, max: usize },
    #[error("operator is not Hermitian: {0}")]
    NonHermitian(String),
    #[error("mapping `{0}` is out of scope")]
    UnsupportedMapping(String),
    #[error("symmetry reduction failed: {0}")]
    Reduction(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("ansatz has no excitations: {0}")]
    DegenerateAnsatz(String),
    #[error("fcidump: {0}")]
    Fcidump(String),
}
