//! Electronic-structure toolkit: Gaussian integrals, restricted
//! Hartree-Fock, second-quantised Hamiltonians, fermion-to-qubit mappings
//! and a variational quantum eigensolver on a dense statevector simulator,
//! with exact diagonalisation as a reference.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`.
//!
//! ```
//! use qelectra::chem::library;
//! use qelectra::pipeline::{build_problem, ProblemSpec};
//! use qelectra::vqe::{run_vqe, Backend, OptimizerConfig};
//!
//! let problem = build_problem(&library::hydrogen::<f64>(), &ProblemSpec::default())?;
//! let ansatz = problem.uccsd(1)?;
//! let opt = OptimizerConfig::gradient_descent();
//! let vqe = run_vqe(&problem.hamiltonian, &ansatz, &problem.mapping, &opt, Backend::Exact)?;
//! let fci = problem.fci_energy()?;
//! assert!(vqe.e_min >= fci - 1e-9 && vqe.e_min - fci < 1e-6);
//! # Ok::<(), qelectra::Error>(())
//! ```

pub mod chem;
pub mod error;
pub mod fermion;
pub mod integrals;
pub mod linalg;
pub mod oracle;
pub mod pipeline;
pub mod pauli;
pub mod scalar;
pub mod scf;
pub mod sim;
pub mod vqe;

pub use error::{Error, Result};
pub use scalar::Real;

/// Double-precision aliases.
pub type Molecule = chem::Molecule<f64>;
pub type IntegralSet = integrals::IntegralSet<f64>;
pub type ScfResult = scf::ScfResult<f64>;
pub type FermionOperator = fermion::FermionOperator<f64>;
pub type SpinOrbitalIntegrals = fermion::SpinOrbitalIntegrals<f64>;
pub type PauliSum = pauli::PauliSum<f64>;
pub type StateVector = sim::StateVector<f64>;
pub type Circuit = sim::Circuit<f64>;
pub type SparseOperatorMatrix = oracle::SparseOperatorMatrix<f64>;
pub type UccsdAnsatz = vqe::UccsdAnsatz<f64>;
pub type OptimizerConfig = vqe::OptimizerConfig<f64>;
pub type VqeResult = vqe::VqeResult<f64>;
pub type Problem = pipeline::Problem<f64>;
