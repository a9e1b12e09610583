use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::ansatz::{ansatz_circuit, UccsdAnsatz};
use crate::error::{Error, Result};
use crate::pauli::{PauliSum, QubitMapping};
use crate::scalar::Real;
use crate::sim::{sampled_expectation, Circuit, CompiledObservable, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OptimizerKind {
    Spsa,
    GradientDescent,
}

/// Optimiser settings. Use [`OptimizerConfig::gradient_descent`] or
/// [`OptimizerConfig::spsa`] for the defaults and override fields as needed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig<T> {
    pub kind: OptimizerKind,
    pub max_iterations: usize,
    /// Energy change (Hartree) regarded as stalled.
    pub tolerance: T,
    /// Consecutive stalled iterations that end the run.
    pub patience: usize,
    pub seed: u64,
    pub spsa_a: T,
    pub spsa_c: T,
    pub spsa_alpha: T,
    pub spsa_gamma: T,
    pub spsa_big_a: T,
    pub learning_rate: T,
    /// Half-width of the central differences.
    pub fd_step: T,
}

impl<T: Real> OptimizerConfig<T> {
    pub fn gradient_descent() -> Self {
        Self {
            kind: OptimizerKind::GradientDescent,
            max_iterations: 1000,
            tolerance: T::lit(1e-8),
            patience: 5,
            seed: 0,
            spsa_a: T::lit(0.2),
            spsa_c: T::lit(0.1),
            spsa_alpha: T::lit(0.602),
            spsa_gamma: T::lit(0.101),
            spsa_big_a: T::lit(100.0),
            learning_rate: T::lit(0.1),
            fd_step: T::lit(1e-4),
        }
    }

    /// SPSA with a = 0.2, c = 0.1, α = 0.602, γ = 0.101, A = max_iterations / 10.
    pub fn spsa(max_iterations: usize, seed: u64) -> Self {
        Self {
            kind: OptimizerKind::Spsa,
            max_iterations,
            tolerance: T::lit(1e-5),
            seed,
            spsa_big_a: T::lit(0.1) * T::from_usize_lossy(max_iterations),
            ..Self::gradient_descent()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("tolerance", self.tolerance),
            ("spsa a", self.spsa_a),
            ("spsa c", self.spsa_c),
            ("spsa alpha", self.spsa_alpha),
            ("spsa gamma", self.spsa_gamma),
            ("learning rate", self.learning_rate),
            ("finite-difference step", self.fd_step),
        ];
        for (name, v) in positive {
            if !(v > T::zero()) {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.spsa_big_a >= T::zero()) {
            return Err(Error::InvalidConfig("spsa A must be non-negative".into()));
        }
        if self.patience == 0 {
            return Err(Error::InvalidConfig("patience must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Exact,
    Sampled { shots: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct VqeResult<T> {
    pub e_min: T,
    pub theta_star: Vec<T>,
    /// E(θ) at the start and after every iteration.
    pub energy_history: Vec<T>,
    /// Cumulative evaluation count matching each history entry.
    pub evaluation_history: Vec<usize>,
    /// θ matching each history entry.
    pub trajectory: Vec<Vec<T>>,
    pub evaluations: usize,
    pub iterations: usize,
    pub converged: bool,
    pub excited: Option<Vec<T>>,
}

impl<T: Real> VqeResult<T> {
    /// Attaches E_k = e_min + kλ for k = 1..=k_max.
    pub fn with_excited_states(mut self, k_max: usize, lambda: T) -> Result<Self> {
        self.excited = Some(
            (1..=k_max)
                .map(|k| excited_estimate(self.e_min, k, lambda))
                .collect::<Result<_>>()?,
        );
        Ok(self)
    }

    pub fn write_history_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "iteration,energy,evaluations")?;
        for (k, (e, n)) in self.energy_history.iter().zip(&self.evaluation_history).enumerate() {
            writeln!(w, "{k},{e},{n}")?;
        }
        Ok(())
    }

    pub fn history_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_history_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }
}

/// Excited-level heuristic E_k = e0 + k·λ, λ ∈ [0, 1].
pub fn excited_estimate<T: Real>(e0: T, k: usize, lambda: T) -> Result<T> {
    if !(lambda >= T::zero() && lambda <= T::one()) {
        return Err(Error::InvalidConfig(format!("lambda must lie in [0, 1], got {lambda}")));
    }
    Ok(e0 + T::from_usize_lossy(k) * lambda)
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

enum Estimator<T> {
    Exact(CompiledObservable<T>),
    Sampled { h: PauliSum<T>, shots: usize },
}

/// E(θ) for one ansatz, mapping and backend.
///
/// Sampled evaluations draw their seed from the run seed and the bits of θ,
/// so the result does not depend on evaluation order or thread count.
pub struct VqeObjective<T> {
    circuit: Circuit<T>,
    estimator: Estimator<T>,
    seed: u64,
}

impl<T: Real> VqeObjective<T> {
    pub fn new(
        h: &PauliSum<T>,
        ansatz: &UccsdAnsatz<T>,
        mapping: &QubitMapping,
        backend: Backend,
        seed: u64,
    ) -> Result<Self> {
        let circuit = ansatz_circuit(ansatz, mapping)?;
        if circuit.n_qubits() != h.n_qubits() {
            return Err(Error::DimensionMismatch(format!(
                "{}-qubit Hamiltonian for a {}-qubit ansatz",
                h.n_qubits(),
                circuit.n_qubits()
            )));
        }
        let estimator = match backend {
            Backend::Exact => Estimator::Exact(CompiledObservable::new(h)?),
            Backend::Sampled { shots } => {
                if shots == 0 {
                    return Err(Error::InvalidConfig("at least one shot is required".into()));
                }
                Estimator::Sampled { h: h.clone(), shots }
            }
        };
        Ok(Self {
            circuit,
            estimator,
            seed,
        })
    }

    pub fn circuit(&self) -> &Circuit<T> {
        &self.circuit
    }

    pub fn state(&self, theta: &[T]) -> Result<StateVector<T>> {
        self.circuit.run(theta)
    }

    pub fn energy(&self, theta: &[T]) -> Result<T> {
        let psi = self.state(theta)?;
        match &self.estimator {
            Estimator::Exact(obs) => obs.expectation(&psi),
            Estimator::Sampled { h, shots } => {
                let seed = theta
                    .iter()
                    .fold(splitmix(self.seed), |acc, t| splitmix(acc ^ t.as_f64().to_bits()));
                sampled_expectation(&psi, h, *shots, seed).map(|(mean, _)| mean)
            }
        }
    }
}

/// Central-difference gradient, components evaluated in parallel.
pub fn central_difference_gradient<T, F>(f: &F, theta: &[T], step: T) -> Result<Vec<T>>
where
    T: Real,
    F: Fn(&[T]) -> Result<T> + Sync,
{
    (0..theta.len())
        .into_par_iter()
        .map(|p| {
            let mut t = theta.to_vec();
            t[p] = theta[p] + step;
            let up = f(&t)?;
            t[p] = theta[p] - step;
            let down = f(&t)?;
            Ok((up - down) / (step + step))
        })
        .collect()
}

/// Simultaneous-perturbation gradient estimate from two evaluations at
/// θ ± cΔ with Rademacher Δ drawn from `rng`.
pub fn spsa_gradient<T, F>(f: &F, theta: &[T], c: T, rng: &mut ChaCha8Rng) -> Result<Vec<T>>
where
    T: Real,
    F: Fn(&[T]) -> Result<T>,
{
    let delta: Vec<T> = (0..theta.len())
        .map(|_| if rng.gen::<bool>() { T::one() } else { -T::one() })
        .collect();
    let plus: Vec<T> = theta.iter().zip(&delta).map(|(&t, &d)| t + c * d).collect();
    let minus: Vec<T> = theta.iter().zip(&delta).map(|(&t, &d)| t - c * d).collect();
    let diff = (f(&plus)? - f(&minus)?) / (c + c);
    // 1/Δᵢ = Δᵢ for ±1 entries
    Ok(delta.into_iter().map(|d| diff * d).collect())
}

/// Minimises ⟨Ψ(θ)|H|Ψ(θ)⟩ from the ansatz's current θ.
///
/// Stops once |ΔE| ≤ tolerance on `patience` consecutive iterations
/// (converged) or after `max_iterations` (not converged).
pub fn run_vqe<T: Real>(
    h: &PauliSum<T>,
    ansatz: &UccsdAnsatz<T>,
    mapping: &QubitMapping,
    opt: &OptimizerConfig<T>,
    backend: Backend,
) -> Result<VqeResult<T>> {
    opt.validate()?;
    let objective = VqeObjective::new(h, ansatz, mapping, backend, opt.seed)?;
    let f = |t: &[T]| objective.energy(t);
    let n_params = ansatz.n_parameters();
    if ansatz.theta.len() != n_params {
        return Err(Error::DimensionMismatch(format!(
            "{} angles for {} excitations",
            ansatz.theta.len(),
            n_params
        )));
    }

    let mut theta = ansatz.theta.clone();
    let mut e = f(&theta)?;
    let mut evaluations = 1;
    let mut energy_history = vec![e];
    let mut evaluation_history = vec![evaluations];
    let mut trajectory = vec![theta.clone()];
    let mut converged = n_params == 0;
    let mut iterations = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(opt.seed);
    let mut streak = 0;

    while !converged && iterations < opt.max_iterations {
        let k = T::from_usize_lossy(iterations);
        let step: Vec<T> = match opt.kind {
            OptimizerKind::GradientDescent => {
                evaluations += 2 * n_params;
                central_difference_gradient(&f, &theta, opt.fd_step)?
                    .into_iter()
                    .map(|g| opt.learning_rate * g)
                    .collect()
            }
            OptimizerKind::Spsa => {
                let ck = opt.spsa_c / (k + T::one()).powf(opt.spsa_gamma);
                let ak = opt.spsa_a / (k + T::one() + opt.spsa_big_a).powf(opt.spsa_alpha);
                evaluations += 2;
                spsa_gradient(&f, &theta, ck, &mut rng)?.into_iter().map(|g| ak * g).collect()
            }
        };
        for (t, s) in theta.iter_mut().zip(step) {
            *t -= s;
        }
        let e_new = f(&theta)?;
        evaluations += 1;
        iterations += 1;
        energy_history.push(e_new);
        evaluation_history.push(evaluations);
        trajectory.push(theta.clone());
        streak = if (e_new - e).abs() <= opt.tolerance { streak + 1 } else { 0 };
        e = e_new;
        converged = streak >= opt.patience;
    }

    let best = energy_history
        .iter()
        .enumerate()
        .fold(0, |b, (i, v)| if *v < energy_history[b] { i } else { b });
    Ok(VqeResult {
        e_min: energy_history[best],
        theta_star: trajectory[best].clone(),
        energy_history,
        evaluation_history,
        trajectory,
        evaluations,
        iterations,
        converged,
        excited: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::MappingKind;
    use num_complex::Complex;

    fn toy() -> (PauliSum<f64>, UccsdAnsatz<f64>, QubitMapping) {
        // two modes, one electron: [[−2, 1], [1, 2]] with ground −√5
        let mut h = PauliSum::zero(2);
        h.add_term("ZI".parse().unwrap(), Complex::new(1.0, 0.0));
        h.add_term("IZ".parse().unwrap(), Complex::new(-1.0, 0.0));
        h.add_term("XX".parse().unwrap(), Complex::new(0.5, 0.0));
        h.add_term("YY".parse().unwrap(), Complex::new(0.5, 0.0));
        let a = UccsdAnsatz::with_excitations(2, 1, vec![crate::vqe::Excitation::Single { i: 0, a: 1 }], 1).unwrap();
        (h, a, QubitMapping::new(MappingKind::JordanWigner, 2).unwrap())
    }

    #[test]
    fn excited_formula() {
        assert_eq!(excited_estimate(-1.5f64, 0, 0.3).unwrap(), -1.5);
        assert_eq!(excited_estimate(-1.5f64, 7, 0.0).unwrap(), -1.5);
        assert!((excited_estimate(-1.1373f64, 2, 0.1).unwrap() + 0.9373).abs() < 1e-12);
        assert!(excited_estimate(0.0f64, 1, 1.5).is_err());
        assert!(excited_estimate(0.0f64, 1, -0.1).is_err());
    }

    #[test]
    fn gd_on_two_level_problem() {
        let (h, a, m) = toy();
        let r = run_vqe(&h, &a, &m, &OptimizerConfig::gradient_descent(), Backend::Exact).unwrap();
        assert!(r.converged);
        assert!((r.e_min + 5f64.sqrt()).abs() < 1e-6, "{}", r.e_min);
        assert_eq!(r.energy_history.len(), r.iterations + 1);
        assert_eq!(r.evaluations, 1 + 3 * r.iterations);
    }

    #[test]
    fn empty_ansatz_returns_reference() {
        let (h, _, m) = toy();
        let a = UccsdAnsatz::with_excitations(2, 1, Vec::new(), 1).unwrap();
        let r = run_vqe(&h, &a, &m, &OptimizerConfig::spsa(50, 1), Backend::Exact).unwrap();
        assert!(r.converged);
        assert_eq!(r.iterations, 0);
        assert_eq!(r.e_min, -2.0);
    }

    #[test]
    fn spsa_is_deterministic() {
        let (h, a, m) = toy();
        let cfg = OptimizerConfig::spsa(100, 42);
        let r1 = run_vqe(&h, &a, &m, &cfg, Backend::Sampled { shots: 256 }).unwrap();
        let r2 = run_vqe(&h, &a, &m, &cfg, Backend::Sampled { shots: 256 }).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn history_csv_layout() {
        let (h, a, m) = toy();
        let mut cfg = OptimizerConfig::gradient_descent();
        cfg.max_iterations = 2;
        let r = run_vqe(&h, &a, &m, &cfg, Backend::Exact).unwrap();
        let csv = r.history_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "iteration,energy,evaluations");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("0,-2,1"));
        assert!(!r.converged);
    }

    #[test]
    fn config_validation() {
        let mut c = OptimizerConfig::<f64>::spsa(10, 0);
        assert!(c.validate().is_ok());
        c.spsa_a = 0.0;
        assert!(c.validate().is_err());
        let mut g = OptimizerConfig::<f64>::gradient_descent();
        g.tolerance = -1.0;
        assert!(g.validate().is_err());
    }
}
