//! Pauli-string algebra and fermion-to-qubit mappings.
//!
//! Qubit q of a word is bit q of every bitmask and of every statevector
//! index (little-endian); the text form lists qubit 0 first.

mod mapping;
mod sum;
mod word;

pub use mapping::{
    anticommutation_check, encoding_matrix, map_fermion, parity_two_qubit_reduction, CarReport, Encoding,
    MappingKind, ModeSets, ParityReduction, QubitMapping,
};
pub use sum::{phase, PauliSum, DEFAULT_THRESHOLD};
pub use word::{multiply, Letter, PauliString, PauliWord, MAX_WORD_QUBITS};
