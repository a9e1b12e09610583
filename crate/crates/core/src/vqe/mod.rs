//! UCCSD ansatz and the variational loop around it.

mod ansatz;
mod optimize;

pub use ansatz::{ansatz_circuit, build_uccsd, Excitation, UccsdAnsatz};
pub use optimize::{
    central_difference_gradient, excited_estimate, run_vqe, spsa_gradient, Backend, OptimizerConfig, OptimizerKind,
    VqeObjective, VqeResult,
};
