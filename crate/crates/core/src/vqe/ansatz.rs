use std::fmt;

use crate::error::{Error, Result};
use crate::fermion::{FermionOperator, Ladder};
use crate::pauli::{QubitMapping, DEFAULT_THRESHOLD};
use crate::scalar::Real;
use crate::sim::Circuit;

/// Excitation out of the reference determinant, in spin-orbital indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Excitation {
    Single { i: usize, a: usize },
    Double { i: usize, j: usize, a: usize, b: usize },
}

impl Excitation {
    /// Anti-Hermitian generator τ − τ†.
    pub fn generator<T: Real>(&self) -> FermionOperator<T> {
        use Ladder as L;
        let tau = match *self {
            Excitation::Single { i, a } => FermionOperator::term(vec![L::create(a), L::annihilate(i)], T::one()),
            Excitation::Double { i, j, a, b } => FermionOperator::term(
                vec![L::create(a), L::create(b), L::annihilate(j), L::annihilate(i)],
                T::one(),
            ),
        };
        let dagger = tau.adjoint();
        tau - dagger
    }

    fn modes(&self) -> Vec<usize> {
        match *self {
            Excitation::Single { i, a } => vec![i, a],
            Excitation::Double { i, j, a, b } => vec![i, j, a, b],
        }
    }
}

impl fmt::Display for Excitation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Excitation::Single { i, a } => write!(f, "{i}->{a}"),
            Excitation::Double { i, j, a, b } => write!(f, "{i},{j}->{a},{b}"),
        }
    }
}

/// Unitary coupled cluster with singles and doubles on top of the
/// determinant that fills spin orbitals 0..n_electrons.
#[derive(Debug, Clone, PartialEq)]
pub struct UccsdAnsatz<T> {
    pub n_spin_orbitals: usize,
    pub n_electrons: usize,
    pub excitations: Vec<Excitation>,
    pub theta: Vec<T>,
    pub trotter_steps: usize,
}

impl<T: Real> UccsdAnsatz<T> {
    /// Ansatz over an explicit excitation list (possibly empty), θ = 0.
    pub fn with_excitations(
        n_spin_orbitals: usize,
        n_electrons: usize,
        excitations: Vec<Excitation>,
        trotter_steps: usize,
    ) -> Result<Self> {
        if n_electrons > n_spin_orbitals {
            return Err(Error::InvalidElectronCount(format!(
                "{n_electrons} electrons in {n_spin_orbitals} spin orbitals"
            )));
        }
        if trotter_steps == 0 {
            return Err(Error::InvalidConfig("at least one Trotter step is required".into()));
        }
        for e in &excitations {
            let modes = e.modes();
            let (occ, virt) = modes.split_at(modes.len() / 2);
            let distinct = modes.iter().enumerate().all(|(k, m)| !modes[..k].contains(m));
            if !distinct
                || occ.iter().any(|&m| m >= n_electrons)
                || virt.iter().any(|&m| m < n_electrons || m >= n_spin_orbitals)
            {
                return Err(Error::InvalidConfig(format!(
                    "excitation {e} is not occupied → virtual for {n_electrons} electrons in {n_spin_orbitals} spin orbitals"
                )));
            }
        }
        Ok(Self {
            n_spin_orbitals,
            n_electrons,
            theta: vec![T::zero(); excitations.len()],
            excitations,
            trotter_steps,
        })
    }

    pub fn n_parameters(&self) -> usize {
        self.excitations.len()
    }

    /// Spin orbitals of the reference determinant.
    pub fn reference_modes(&self) -> Vec<usize> {
        (0..self.n_electrons).collect()
    }
}

/// All spin-preserving singles then doubles (each block lexicographic in
/// (i, j, a, b)), with θ = 0.
pub fn build_uccsd<T: Real>(n_spin_orbitals: usize, n_electrons: usize, trotter_steps: usize) -> Result<UccsdAnsatz<T>> {
    if n_electrons == 0 || n_electrons > n_spin_orbitals {
        return Err(Error::InvalidElectronCount(format!(
            "UCCSD needs 0 < n_electrons ≤ n_spin_orbitals, got {n_electrons} in {n_spin_orbitals}"
        )));
    }
    let occ = 0..n_electrons;
    let virt = n_electrons..n_spin_orbitals;
    let spin = |m: usize| m % 2;
    let mut excitations = Vec::new();
    for i in occ.clone() {
        for a in virt.clone() {
            if spin(i) == spin(a) {
                excitations.push(Excitation::Single { i, a });
            }
        }
    }
    for i in occ.clone() {
        for j in i + 1..n_electrons {
            for a in virt.clone() {
                for b in a + 1..n_spin_orbitals {
                    if spin(i) + spin(j) == spin(a) + spin(b) {
                        excitations.push(Excitation::Double { i, j, a, b });
                    }
                }
            }
        }
    }
    if excitations.is_empty() {
        return Err(Error::DegenerateAnsatz(format!(
            "{n_electrons} electrons in {n_spin_orbitals} spin orbitals leave nothing to excite"
        )));
    }
    UccsdAnsatz::with_excitations(n_spin_orbitals, n_electrons, excitations, trotter_steps)
}

/// Reference preparation followed by first-order Trotterised
/// exp(θ_k (τ_k − τ_k†)), one Pauli rotation per mapped string per step.
///
/// Each generator maps to Σ i·g·P with real g, so its factor is a rotation
/// by angle −2gθ/steps about P.
pub fn ansatz_circuit<T: Real>(ansatz: &UccsdAnsatz<T>, mapping: &QubitMapping) -> Result<Circuit<T>> {
    if mapping.n_modes != ansatz.n_spin_orbitals {
        return Err(Error::DimensionMismatch(format!(
            "mapping over {} modes for an ansatz over {} spin orbitals",
            mapping.n_modes, ansatz.n_spin_orbitals
        )));
    }
    if let Some(r) = mapping.reduction {
        if r.n_alpha + r.n_beta != ansatz.n_electrons {
            return Err(Error::DimensionMismatch(format!(
                "mapping sector holds {} electrons, ansatz {}",
                r.n_alpha + r.n_beta,
                ansatz.n_electrons
            )));
        }
    }
    let n = mapping.n_qubits();
    let mut circuit = Circuit::new(n, ansatz.n_parameters());
    let reference = mapping.encode_occupation(&ansatz.reference_modes())?;
    for q in 0..n {
        if reference >> q & 1 == 1 {
            circuit.push_x(q)?;
        }
    }
    let mut rotations = Vec::with_capacity(ansatz.n_parameters());
    for (k, e) in ansatz.excitations.iter().enumerate() {
        let g = mapping.map(&e.generator::<T>())?.simplify(T::lit(DEFAULT_THRESHOLD));
        for (w, c) in g.terms() {
            if c.re.abs() > T::lit(1e-10) {
                return Err(Error::NonHermitian(format!("generator of {e} has a Hermitian part on {w}")));
            }
            rotations.push((*w, k, -T::lit(2.0) * c.im));
        }
    }
    let steps = T::from_usize_lossy(ansatz.trotter_steps);
    for _ in 0..ansatz.trotter_steps {
        for &(w, k, scale) in &rotations {
            circuit.push_exp(w, k, scale / steps)?;
        }
    }
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::MappingKind;

    #[test]
    fn minimal_enumeration() {
        let a = build_uccsd::<f64>(4, 2, 1).unwrap();
        assert_eq!(
            a.excitations,
            vec![
                Excitation::Single { i: 0, a: 2 },
                Excitation::Single { i: 1, a: 3 },
                Excitation::Double { i: 0, j: 1, a: 2, b: 3 },
            ]
        );
        assert_eq!(a.theta, vec![0.0; 3]);
    }

    #[test]
    fn eight_in_twelve_count() {
        // αα and ββ doubles: 6 each; αβ: 4·4·2·2; singles: 2·4·2
        assert_eq!(build_uccsd::<f64>(12, 8, 1).unwrap().n_parameters(), 16 + 6 + 6 + 64);
    }

    #[test]
    fn degenerate_and_invalid() {
        assert!(matches!(build_uccsd::<f64>(4, 4, 1), Err(Error::DegenerateAnsatz(_))));
        assert!(build_uccsd::<f64>(4, 0, 1).is_err());
        assert!(build_uccsd::<f64>(4, 2, 0).is_err());
        assert!(UccsdAnsatz::<f64>::with_excitations(4, 2, vec![Excitation::Single { i: 2, a: 3 }], 1).is_err());
    }

    #[test]
    fn generator_is_anti_hermitian() {
        let g = Excitation::Double { i: 0, j: 1, a: 2, b: 3 }.generator::<f64>();
        let sum = g.clone() + g.adjoint();
        assert!(sum.normal_ordered().prune(1e-14).is_empty());
    }

    #[test]
    fn zero_angles_give_reference() {
        let a = build_uccsd::<f64>(6, 2, 2).unwrap();
        for kind in MappingKind::ALL {
            let m = QubitMapping::new(kind, 6).unwrap();
            let c = ansatz_circuit(&a, &m).unwrap();
            let s = c.run(&a.theta).unwrap();
            let idx = m.encode_occupation(&[0, 1]).unwrap() as usize;
            assert!((s.amplitudes()[idx].norm() - 1.0).abs() < 1e-12);
        }
    }
}
