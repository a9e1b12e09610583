//! Second-quantised electronic Hamiltonians over spin orbitals.
//!
//! Spin orbital 2p is spatial orbital p with α spin and 2p + 1 the same
//! orbital with β spin. Two-electron integrals are held in physicists'
//! notation, ⟨pq|rs⟩ = (pr|qs).

mod operator;

use ndarray::{s, Array2, Array4};

use crate::error::{Error, Result};
use crate::integrals::{fcidump, IntegralSet, MoIntegrals};
use crate::scalar::Real;

pub use operator::{FermionOperator, Ladder};

#[derive(Debug, Clone, PartialEq)]
pub struct SpinOrbitalIntegrals<T> {
    pub n_spin_orbitals: usize,
    /// Electrons described by these integrals (after any freezing).
    pub n_electrons: usize,
    pub one_body: Array2<T>,
    /// ⟨pq|rs⟩.
    pub two_body: Array4<T>,
    pub core_energy: T,
}

impl<T: Real> SpinOrbitalIntegrals<T> {
    /// Spin-blocks spatial MO integrals.
    pub fn from_spatial(mo: &MoIntegrals<T>) -> Self {
        let n = mo.n_orbitals;
        let ns = 2 * n;
        let one_body = Array2::from_shape_fn((ns, ns), |(p, q)| {
            if p % 2 == q % 2 {
                mo.one_body[[p / 2, q / 2]]
            } else {
                T::zero()
            }
        });
        let two_body = Array4::from_shape_fn((ns, ns, ns, ns), |(p, q, r, s)| {
            if p % 2 == r % 2 && q % 2 == s % 2 {
                mo.two_body[[p / 2, r / 2, q / 2, s / 2]]
            } else {
                T::zero()
            }
        });
        Self {
            n_spin_orbitals: ns,
            n_electrons: mo.n_electrons,
            one_body,
            two_body,
            core_energy: mo.core_energy,
        }
    }

    pub fn n_spatial(&self) -> usize {
        self.n_spin_orbitals / 2
    }

    /// Spatial integrals from the α block; inverse of [`Self::from_spatial`]
    /// for spin-blocked input.
    pub fn to_spatial(&self) -> Result<MoIntegrals<T>> {
        if !self.n_spin_orbitals.is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!(
                "{} spin orbitals do not pair into spatial orbitals",
                self.n_spin_orbitals
            )));
        }
        let n = self.n_spatial();
        Ok(MoIntegrals {
            n_orbitals: n,
            n_electrons: self.n_electrons,
            ms2: 0,
            core_energy: self.core_energy,
            one_body: Array2::from_shape_fn((n, n), |(p, q)| self.one_body[[2 * p, 2 * q]]),
            // (pq|rs) = ⟨pr|qs⟩
            two_body: Array4::from_shape_fn((n, n, n, n), |(p, q, r, s)| {
                self.two_body[[2 * p, 2 * r, 2 * q, 2 * s]]
            }),
        })
    }

    /// Reads FCIDUMP text and spin-blocks it.
    pub fn from_fcidump(text: &str) -> Result<Self> {
        Ok(Self::from_spatial(&fcidump::MoIntegrals::from_fcidump(text)?))
    }
}

/// AO → MO transform through the columns of `c`, then spin blocking.
pub fn mo_transform<T: Real>(
    ints: &IntegralSet<T>,
    c: &Array2<T>,
    n_electrons: usize,
) -> Result<SpinOrbitalIntegrals<T>> {
    Ok(SpinOrbitalIntegrals::from_spatial(&fcidump::mo_integrals(ints, c, n_electrons)?))
}

/// ĥ = E_core + Σ h_pq a†ₚa_q + ½ Σ ⟨pq|rs⟩ a†ₚa†_q a_s a_r, normal ordered.
pub fn build_hamiltonian<T: Real>(soi: &SpinOrbitalIntegrals<T>) -> FermionOperator<T> {
    let n = soi.n_spin_orbitals;
    let half = T::lit(0.5);
    let mut op = FermionOperator::constant(soi.core_energy);
    for p in 0..n {
        for q in 0..n {
            let h = soi.one_body[[p, q]];
            if h != T::zero() {
                op.add_term(vec![Ladder::create(p), Ladder::annihilate(q)], h);
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            if p == q {
                continue;
            }
            for r in 0..n {
                for s in 0..n {
                    let v = soi.two_body[[p, q, r, s]];
                    if r == s || v == T::zero() {
                        continue;
                    }
                    op.add_term(
                        vec![
                            Ladder::create(p),
                            Ladder::create(q),
                            Ladder::annihilate(s),
                            Ladder::annihilate(r),
                        ],
                        half * v,
                    );
                }
            }
        }
    }
    let mut out = op.normal_ordered();
    // keep the constant even when the core energy is exactly zero
    if out.constant_term() == T::zero() {
        out.add_term(Vec::new(), T::zero());
    }
    out
}

/// Frozen-core / active-orbital partition, counted in spatial orbitals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ActiveSpaceSpec {
    pub n_frozen_spatial: usize,
    pub n_active_spatial: usize,
    pub n_active_electrons: usize,
}

impl ActiveSpaceSpec {
    /// Freezes the lowest (n_electrons − n_active_electrons)/2 orbitals.
    pub fn from_counts(n_electrons: usize, n_active_electrons: usize, n_active_spatial: usize) -> Result<Self> {
        if n_active_electrons > n_electrons || !(n_electrons - n_active_electrons).is_multiple_of(2) {
            return Err(Error::InvalidActiveSpace(format!(
                "{n_active_electrons} active electrons cannot be taken from {n_electrons} by freezing closed shells"
            )));
        }
        Ok(Self {
            n_frozen_spatial: (n_electrons - n_active_electrons) / 2,
            n_active_spatial,
            n_active_electrons,
        })
    }

    pub fn validate(&self, n_mo: usize, n_electrons: usize) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidActiveSpace(m));
        if self.n_active_spatial == 0 {
            return bad("active space needs at least one orbital".into());
        }
        if self.n_frozen_spatial + self.n_active_spatial > n_mo {
            return bad(format!(
                "{} frozen + {} active orbitals exceed {} available",
                self.n_frozen_spatial, self.n_active_spatial, n_mo
            ));
        }
        if 2 * self.n_frozen_spatial > n_electrons
            || n_electrons - 2 * self.n_frozen_spatial != self.n_active_electrons
        {
            return bad(format!(
                "freezing {} orbitals of a {}-electron system leaves {} electrons, not {}",
                self.n_frozen_spatial,
                n_electrons,
                n_electrons.saturating_sub(2 * self.n_frozen_spatial),
                self.n_active_electrons
            ));
        }
        if self.n_active_electrons > 2 * self.n_active_spatial {
            return bad(format!(
                "{} electrons do not fit in {} active orbitals",
                self.n_active_electrons, self.n_active_spatial
            ));
        }
        Ok(())
    }
}

/// Folds doubly occupied frozen orbitals into the core energy and an
/// effective one-body operator, then keeps the active block.
pub fn apply_active_space<T: Real>(
    soi: &SpinOrbitalIntegrals<T>,
    spec: &ActiveSpaceSpec,
) -> Result<SpinOrbitalIntegrals<T>> {
    spec.validate(soi.n_spatial(), soi.n_electrons)?;
    let nf = 2 * spec.n_frozen_spatial;
    let lo = nf;
    let hi = nf + 2 * spec.n_active_spatial;
    let g = &soi.two_body;
    let half = T::lit(0.5);

    let mut core = soi.core_energy;
    for i in 0..nf {
        core += soi.one_body[[i, i]];
        for j in 0..nf {
            core += half * (g[[i, j, i, j]] - g[[i, j, j, i]]);
        }
    }
    let mut one_body = soi.one_body.slice(s![lo..hi, lo..hi]).to_owned();
    for p in lo..hi {
        for q in lo..hi {
            let mut acc = T::zero();
            for i in 0..nf {
                acc += g[[p, i, q, i]] - g[[p, i, i, q]];
            }
            one_body[[p - lo, q - lo]] += acc;
        }
    }
    Ok(SpinOrbitalIntegrals {
        n_spin_orbitals: hi - lo,
        n_electrons: spec.n_active_electrons,
        one_body,
        two_body: g.slice(s![lo..hi, lo..hi, lo..hi, lo..hi]).to_owned(),
        core_energy: core,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chem::{library, load_basis, Molecule};
    use crate::integrals::compute_integrals;
    use crate::scf::{run_rhf, ScfConfig};

    fn hf(mol: &Molecule<f64>) -> (IntegralSet<f64>, Array2<f64>) {
        let ints = compute_integrals(&load_basis("sto-3g", mol).unwrap(), mol).unwrap();
        let r = run_rhf(&ints, mol.n_electrons().unwrap(), &ScfConfig::default()).unwrap();
        (ints, r.mo_coefficients)
    }

    #[test]
    fn identity_transform_keeps_ao_values() {
        let mol = library::hydrogen::<f64>();
        let (ints, _) = hf(&mol);
        let soi = mo_transform(&ints, &Array2::eye(2), 2).unwrap();
        let h = ints.core_hamiltonian();
        assert!((soi.one_body[[0, 2]] - h[[0, 1]]).abs() < 1e-12);
        assert!((soi.one_body[[1, 3]] - h[[0, 1]]).abs() < 1e-12);
        assert_eq!(soi.one_body[[0, 1]], 0.0);
        // ⟨01|01⟩ = (00|11) with α on 0 and β on 1
        assert!((soi.two_body[[0, 3, 0, 3]] - ints.eri.get(0, 0, 1, 1)).abs() < 1e-12);
    }

    #[test]
    fn spin_forbidden_elements_vanish() {
        let (ints, c) = hf(&library::hydrogen());
        let soi = mo_transform(&ints, &c, 2).unwrap();
        let n = soi.n_spin_orbitals;
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        if p % 2 != r % 2 || q % 2 != s % 2 {
                            assert_eq!(soi.two_body[[p, q, r, s]], 0.0);
                        }
                        let a = soi.two_body[[p, q, r, s]];
                        assert!((a - soi.two_body[[q, p, s, r]]).abs() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn hydrogen_lowest_orbital_one_body() {
        // σg = (χ₀ + χ₁)/√(2 + 2S): h = (H00 + H01)/(1 + S)
        let (ints, c) = hf(&library::hydrogen());
        let soi = mo_transform(&ints, &c, 2).unwrap();
        let h = ints.core_hamiltonian();
        let s01 = ints.overlap[[0, 1]];
        let hand = (h[[0, 0]] + h[[0, 1]]) / (1.0 + s01);
        assert!((soi.one_body[[0, 0]] - hand).abs() < 1e-12);
        assert!((soi.one_body[[1, 1]] - hand).abs() < 1e-12);

        // published minimal-basis value at 1.4 bohr
        let mol = Molecule::<f64>::new(
            vec![
                crate::chem::Atom::new("H", [0.0; 3]).unwrap(),
                crate::chem::Atom::new("H", [0.0, 0.0, 1.4]).unwrap(),
            ],
            0,
            1,
        )
        .unwrap();
        let (ints, c) = hf(&mol);
        let soi = mo_transform(&ints, &c, 2).unwrap();
        assert!((soi.one_body[[0, 0]] + 1.2528).abs() < 1e-3, "{}", soi.one_body[[0, 0]]);
    }

    #[test]
    fn smallest_hamiltonian() {
        let mut soi = SpinOrbitalIntegrals {
            n_spin_orbitals: 1,
            n_electrons: 1,
            one_body: Array2::from_elem((1, 1), -0.7),
            two_body: Array4::zeros((1, 1, 1, 1)),
            core_energy: 0.25,
        };
        let h = build_hamiltonian(&soi);
        assert_eq!(h.len(), 2);
        assert_eq!(h.constant_term(), 0.25);
        assert_eq!(h.coefficient(&[Ladder::create(0), Ladder::annihilate(0)]), -0.7);
        soi.core_energy = 0.0;
        assert_eq!(build_hamiltonian(&soi).len(), 2);
    }

    /// Coefficients of a normal-ordered Hamiltonian written out directly:
    /// one-body h_pq, two-body (P > Q, R > S) ⟨PQ|SR⟩ − ⟨PQ|RS⟩.
    fn brute_force(soi: &SpinOrbitalIntegrals<f64>) -> Vec<(Vec<Ladder>, f64)> {
        let n = soi.n_spin_orbitals;
        let mut out = vec![(vec![], soi.core_energy)];
        for p in 0..n {
            for q in 0..n {
                out.push((vec![Ladder::create(p), Ladder::annihilate(q)], soi.one_body[[p, q]]));
            }
        }
        let g = &soi.two_body;
        for p in 0..n {
            for q in 0..p {
                for r in 0..n {
                    for s in 0..r {
                        let v = g[[p, q, s, r]] - g[[p, q, r, s]];
                        out.push((
                            vec![
                                Ladder::create(p),
                                Ladder::create(q),
                                Ladder::annihilate(r),
                                Ladder::annihilate(s),
                            ],
                            v,
                        ));
                    }
                }
            }
        }
        out.retain(|(_, v)| v.abs() > 1e-12);
        out
    }

    #[test]
    fn hydrogen_terms_match_brute_force() {
        let (ints, c) = hf(&library::hydrogen());
        let soi = mo_transform(&ints, &c, 2).unwrap();
        let h = build_hamiltonian(&soi).prune(1e-12);
        let reference = brute_force(&soi);
        assert_eq!(h.len(), reference.len());
        for (ops, v) in &reference {
            assert!((h.coefficient(ops) - v).abs() < 1e-12);
        }
        assert!(h.is_normal_ordered());
        assert!(h.is_hermitian(1e-12));
    }

    #[test]
    fn water_hermitian() {
        let mol = library::water::<f64>();
        let (ints, c) = hf(&mol);
        let soi = mo_transform(&ints, &c, 10).unwrap();
        let spec = ActiveSpaceSpec::from_counts(10, 4, 3).unwrap();
        let act = apply_active_space(&soi, &spec).unwrap();
        let h = build_hamiltonian(&act);
        assert!(h.is_hermitian(1e-12));
        assert_eq!(h.n_modes(), 6);
    }

    #[test]
    fn swapping_equivalent_atoms() {
        let mol = library::hydrogen::<f64>();
        let swapped = Molecule::new(vec![mol.atoms[1].clone(), mol.atoms[0].clone()], 0, 1).unwrap();
        let build = |m: &Molecule<f64>| {
            let (ints, c) = hf(m);
            build_hamiltonian(&mo_transform(&ints, &c, 2).unwrap()).prune(1e-12)
        };
        let (a, b) = (build(&mol), build(&swapped));
        assert_eq!(a.len(), b.len());
        for (ops, v) in a.terms() {
            assert!((b.coefficient(ops) - v).abs() < 1e-10);
        }
    }

    #[test]
    fn trivial_active_space_is_identity() {
        let (ints, c) = hf(&library::lithium_hydride());
        let soi = mo_transform(&ints, &c, 4).unwrap();
        let spec = ActiveSpaceSpec {
            n_frozen_spatial: 0,
            n_active_spatial: 6,
            n_active_electrons: 4,
        };
        assert_eq!(apply_active_space(&soi, &spec).unwrap(), soi);
    }

    #[test]
    fn spatial_round_trip() {
        let (ints, c) = hf(&library::water());
        let mo = fcidump::mo_integrals(&ints, &c, 10).unwrap();
        let back = SpinOrbitalIntegrals::from_spatial(&mo).to_spatial().unwrap();
        assert_eq!(back, mo);
    }

    #[test]
    fn lithium_hydride_frozen_core() {
        let (ints, c) = hf(&library::lithium_hydride());
        let soi = mo_transform(&ints, &c, 4).unwrap();
        let spec = ActiveSpaceSpec::from_counts(4, 2, 5).unwrap();
        assert_eq!(spec.n_frozen_spatial, 1);
        let act = apply_active_space(&soi, &spec).unwrap();
        assert_eq!(act.n_spin_orbitals, 10);
        assert_eq!(act.n_electrons, 2);
        // the frozen-core HF energy equals the full HF energy
        let hf_full = hf_energy(&soi);
        let hf_act = hf_energy(&act);
        assert!((hf_full - hf_act).abs() < 1e-10);
    }

    fn hf_energy(soi: &SpinOrbitalIntegrals<f64>) -> f64 {
        let occ = 0..soi.n_electrons;
        let mut e = soi.core_energy;
        for i in occ.clone() {
            e += soi.one_body[[i, i]];
            for j in occ.clone() {
                e += 0.5 * (soi.two_body[[i, j, i, j]] - soi.two_body[[i, j, j, i]]);
            }
        }
        e
    }

    #[test]
    fn invalid_active_spaces() {
        assert!(ActiveSpaceSpec::from_counts(4, 3, 2).is_err());
        assert!(ActiveSpaceSpec::from_counts(4, 6, 4).is_err());
        let spec = ActiveSpaceSpec {
            n_frozen_spatial: 1,
            n_active_spatial: 6,
            n_active_electrons: 2,
        };
        assert!(spec.validate(6, 4).is_err());
        let crowded = ActiveSpaceSpec {
            n_frozen_spatial: 0,
            n_active_spatial: 1,
            n_active_electrons: 4,
        };
        assert!(crowded.validate(6, 4).is_err());
    }
}
