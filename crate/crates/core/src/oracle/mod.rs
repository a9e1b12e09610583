//! Reference solvers: exact diagonalisation of qubit Hamiltonians and a
//! Metropolis Monte Carlo sampler.

mod eigen;
mod metropolis;
mod sparse;

pub use eigen::{exact_ground_energy, hermitian_eigenvalues, lanczos, DENSE_LIMIT};
pub use metropolis::{metropolis_sample, MetropolisConfig, MetropolisResult};
pub use sparse::{pauli_to_matrix, pauli_to_matrix_in_subspace, SparseOperatorMatrix, MAX_SPARSE_QUBITS};

use crate::error::{Error, Result};
use crate::pauli::{PauliSum, QubitMapping};
use crate::scalar::Real;

/// All `k`-element subsets of `0..n` as bitmasks, ascending.
fn subsets(n: usize, k: usize) -> Vec<u64> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut s: u64 = (1u64 << k) - 1;
    let limit = 1u64 << n;
    while s < limit {
        out.push(s);
        // next bit pattern with the same popcount
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    out
}

/// Qubit basis states of every determinant with `n_alpha` α and `n_beta`
/// β electrons (interleaved spin orbitals), encoded by `mapping`.
pub fn sector_states(mapping: &QubitMapping, n_alpha: usize, n_beta: usize) -> Result<Vec<u64>> {
    let n_spatial = mapping.n_modes / 2;
    if !mapping.n_modes.is_multiple_of(2) {
        return Err(Error::InvalidConfig("spin sectors need an even number of modes".into()));
    }
    let mut states = Vec::new();
    let mut modes = Vec::with_capacity(n_alpha + n_beta);
    for a in subsets(n_spatial, n_alpha) {
        for b in subsets(n_spatial, n_beta) {
            modes.clear();
            modes.extend((0..n_spatial).filter(|p| a >> p & 1 == 1).map(|p| 2 * p));
            modes.extend((0..n_spatial).filter(|p| b >> p & 1 == 1).map(|p| 2 * p + 1));
            states.push(mapping.encode_occupation(&modes)?);
        }
    }
    Ok(states)
}

/// Lowest eigenvalue of `h` within the fixed (N_α, N_β) sector.
pub fn sector_ground_energy<T: Real>(
    h: &PauliSum<T>,
    mapping: &QubitMapping,
    n_alpha: usize,
    n_beta: usize,
) -> Result<T> {
    if h.n_qubits() != mapping.n_qubits() {
        return Err(Error::DimensionMismatch(format!(
            "{}-qubit operator for a {}-qubit mapping",
            h.n_qubits(),
            mapping.n_qubits()
        )));
    }
    let states = sector_states(mapping, n_alpha, n_beta)?;
    if states.is_empty() {
        return Err(Error::InvalidConfig(format!(
            "empty sector ({n_alpha}α, {n_beta}β) in {} modes",
            mapping.n_modes
        )));
    }
    let m = pauli_to_matrix_in_subspace(h, &states)?;
    exact_ground_energy(&m, 1).map(|v| v[0])
}
