//! Molecule → qubit Hamiltonian in one call.

use crate::chem::{load_basis, Molecule};
use crate::error::{Error, Result};
use crate::fermion::{apply_active_space, build_hamiltonian, ActiveSpaceSpec, FermionOperator, SpinOrbitalIntegrals};
use crate::integrals::{compute_integrals, fcidump::mo_integrals, MoIntegrals};
use crate::oracle::sector_ground_energy;
use crate::pauli::{MappingKind, PauliSum, QubitMapping, DEFAULT_THRESHOLD};
use crate::scalar::Real;
use crate::scf::{run_rhf, ScfConfig, ScfResult};
use crate::sim::{expectation, hermitian_tolerance, reference_state, MAX_QUBITS};
use crate::vqe::{build_uccsd, UccsdAnsatz};

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub basis: String,
    /// (active electrons, active spatial orbitals); `None` keeps every orbital.
    pub active_space: Option<(usize, usize)>,
    pub mapping: MappingKind,
    /// Drop the two sector qubits when the mapping is parity.
    pub two_qubit_reduction: bool,
    pub scf: ScfConfig,
}

impl Default for ProblemSpec {
    fn default() -> Self {
        Self {
            basis: "sto-3g".into(),
            active_space: None,
            mapping: MappingKind::Parity,
            two_qubit_reduction: true,
            scf: ScfConfig::default(),
        }
    }
}

/// Mean-field stage: SCF and the MO integrals it defines.
#[derive(Debug, Clone)]
pub struct ScfStage<T> {
    pub molecule: Molecule<T>,
    pub n_basis: usize,
    pub n_electrons: usize,
    pub scf: ScfResult<T>,
    /// Full-space spatial MO integrals.
    pub mo: MoIntegrals<T>,
}

/// Everything derived from one molecule and spec.
#[derive(Debug, Clone)]
pub struct Problem<T> {
    pub molecule: Molecule<T>,
    pub n_basis: usize,
    pub scf: ScfResult<T>,
    /// Full-space spatial MO integrals.
    pub mo: MoIntegrals<T>,
    /// Active-space spin-orbital integrals.
    pub integrals: SpinOrbitalIntegrals<T>,
    pub active_space: ActiveSpaceSpec,
    pub n_alpha: usize,
    pub n_beta: usize,
    pub fermion_hamiltonian: FermionOperator<T>,
    pub mapping: QubitMapping,
    pub hamiltonian: PauliSum<T>,
}

/// Basis, integrals, RHF and the MO transform. SCF non-convergence is not
/// an error; check `stage.scf.converged`.
pub fn scf_stage<T: Real>(molecule: &Molecule<T>, spec: &ProblemSpec) -> Result<ScfStage<T>> {
    let basis = load_basis(&spec.basis, molecule)?;
    let ints = compute_integrals(&basis, molecule)?;
    let n_electrons = molecule.n_electrons()?;
    let scf = run_rhf(&ints, n_electrons, &spec.scf)?;
    let mo = mo_integrals(&ints, &scf.mo_coefficients, n_electrons)?;
    Ok(ScfStage {
        molecule: molecule.clone(),
        n_basis: basis.len(),
        n_electrons,
        scf,
        mo,
    })
}

/// Applies the active space to a finished SCF stage and maps the
/// Hamiltonian to qubits.
pub fn qubit_problem<T: Real>(stage: ScfStage<T>, spec: &ProblemSpec) -> Result<Problem<T>> {
    let n_electrons = stage.n_electrons;
    let full = SpinOrbitalIntegrals::from_spatial(&stage.mo);
    let active_space = match spec.active_space {
        Some((ne, no)) => ActiveSpaceSpec::from_counts(n_electrons, ne, no)?,
        None => ActiveSpaceSpec::from_counts(n_electrons, n_electrons, stage.n_basis)?,
    };
    let n_modes = 2 * active_space.n_active_spatial;
    if n_modes > MAX_QUBITS {
        return Err(Error::QubitCapExceeded {
            requested: n_modes,
            max: MAX_QUBITS,
        });
    }
    let integrals = apply_active_space(&full, &active_space)?;
    let n_alpha = active_space.n_active_electrons / 2;
    let n_beta = active_space.n_active_electrons - n_alpha;
    let mapping = if spec.mapping == MappingKind::Parity && spec.two_qubit_reduction && n_modes >= 4 {
        QubitMapping::parity_reduced(n_modes, n_alpha, n_beta)?
    } else {
        QubitMapping::new(spec.mapping, n_modes)?
    };
    let fermion_hamiltonian = build_hamiltonian(&integrals);
    let mapped = mapping.map(&fermion_hamiltonian)?.simplify(T::lit(DEFAULT_THRESHOLD));
    let tol = hermitian_tolerance(&mapped);
    let hamiltonian = mapped.into_hermitian(tol)?;
    Ok(Problem {
        molecule: stage.molecule,
        n_basis: stage.n_basis,
        scf: stage.scf,
        mo: stage.mo,
        integrals,
        active_space,
        n_alpha,
        n_beta,
        fermion_hamiltonian,
        mapping,
        hamiltonian,
    })
}

/// [`scf_stage`] followed by [`qubit_problem`].
pub fn build_problem<T: Real>(molecule: &Molecule<T>, spec: &ProblemSpec) -> Result<Problem<T>> {
    qubit_problem(scf_stage(molecule, spec)?, spec)
}

impl<T: Real> Problem<T> {
    pub fn n_qubits(&self) -> usize {
        self.mapping.n_qubits()
    }

    /// Ground energy within the (N_α, N_β) sector of the active space.
    pub fn fci_energy(&self) -> Result<T> {
        sector_ground_energy(&self.hamiltonian, &self.mapping, self.n_alpha, self.n_beta)
    }

    pub fn uccsd(&self, trotter_steps: usize) -> Result<UccsdAnsatz<T>> {
        build_uccsd(self.integrals.n_spin_orbitals, self.integrals.n_electrons, trotter_steps)
    }

    /// ⟨Φ|H|Φ⟩ of the mapped reference determinant.
    pub fn reference_energy(&self) -> Result<T> {
        let bits = self
            .mapping
            .encode_occupation(&(0..self.integrals.n_electrons).collect::<Vec<_>>())?;
        let occupied: Vec<usize> = (0..self.n_qubits()).filter(|q| bits >> q & 1 == 1).collect();
        expectation(&reference_state(self.n_qubits(), &occupied)?, &self.hamiltonian)
    }
}
