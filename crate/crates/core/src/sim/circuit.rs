use super::state::StateVector;
use crate::error::{Error, Result};
use crate::pauli::PauliWord;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub enum Instruction<T> {
    /// Bit flip on one qubit.
    X(usize),
    /// exp(−i (scale·θ[param]) / 2 · word).
    PauliExp { word: PauliWord, param: usize, scale: T },
}

/// Parameterised circuit built from bit flips and Pauli rotations.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit<T> {
    n_qubits: usize,
    n_params: usize,
    instructions: Vec<Instruction<T>>,
}

impl<T: Real> Circuit<T> {
    pub fn new(n_qubits: usize, n_params: usize) -> Self {
        Self {
            n_qubits,
            n_params,
            instructions: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_params(&self) -> usize {
        self.n_params
    }

    pub fn instructions(&self) -> &[Instruction<T>] {
        &self.instructions
    }

    pub fn push_x(&mut self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                n_qubits: self.n_qubits,
            });
        }
        self.instructions.push(Instruction::X(q));
        Ok(())
    }

    pub fn push_exp(&mut self, word: PauliWord, param: usize, scale: T) -> Result<()> {
        if word.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "{}-qubit rotation in a {}-qubit circuit",
                word.n_qubits(),
                self.n_qubits
            )));
        }
        if param >= self.n_params {
            return Err(Error::InvalidConfig(format!(
                "parameter {param} out of range for {} parameters",
                self.n_params
            )));
        }
        self.instructions.push(Instruction::PauliExp { word, param, scale });
        Ok(())
    }

    /// Applies every instruction in order.
    pub fn apply(&self, state: &mut StateVector<T>, theta: &[T]) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "{}-qubit circuit on a {}-qubit state",
                self.n_qubits,
                state.n_qubits()
            )));
        }
        if theta.len() != self.n_params {
            return Err(Error::DimensionMismatch(format!(
                "{} parameters given, circuit takes {}",
                theta.len(),
                self.n_params
            )));
        }
        for ins in &self.instructions {
            match ins {
                Instruction::X(q) => state.apply_x(*q)?,
                Instruction::PauliExp { word, param, scale } => {
                    state.apply_pauli_exponential(word, *scale * theta[*param])?
                }
            }
        }
        Ok(())
    }

    /// Runs the circuit on |0…0⟩.
    pub fn run(&self, theta: &[T]) -> Result<StateVector<T>> {
        let mut s = StateVector::basis(self.n_qubits, 0)?;
        self.apply(&mut s, theta)?;
        Ok(s)
    }
}
