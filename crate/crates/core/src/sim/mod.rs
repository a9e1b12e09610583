//! Dense statevector simulation: Pauli rotations, exact and sampled
//! expectation values, parameterised circuits.

mod circuit;
mod measure;
mod state;

pub use circuit::{Circuit, Instruction};
pub(crate) use measure::hermitian_tolerance;
pub use measure::{expectation, sampled_expectation, CompiledObservable};
pub use state::{apply_pauli_exponential, reference_state, StateVector, MAX_QUBITS};
