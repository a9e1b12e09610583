//! Analytic one- and two-electron integrals over contracted Gaussians.

mod boys;
pub mod fcidump;
mod hermite;
pub mod quadrature;

use ndarray::{Array2, Array4};
use rayon::prelude::*;

use crate::chem::{nuclear_repulsion, ContractedGaussian, Molecule};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub use boys::boys;
pub use fcidump::MoIntegrals;
pub use quadrature::{quadrature_one_electron, GridSpec, QuadratureResult};

/// Largest basis for which the dense ERI tensor is stored.
pub const MAX_BASIS: usize = 32;

#[inline]
pub(crate) fn pair_index(i: usize, j: usize) -> usize {
    let (a, b) = if i >= j { (i, j) } else { (j, i) };
    a * (a + 1) / 2 + b
}

/// Two-electron integrals (ij|kl), chemists' notation, stored once per
/// 8-fold permutation class.
#[derive(Debug, Clone, PartialEq)]
pub struct Eri<T> {
    n: usize,
    packed: Vec<T>,
}

impl<T: Real> Eri<T> {
    pub fn n_basis(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> T {
        self.packed[pair_index(pair_index(i, j), pair_index(k, l))]
    }

    /// Number of stored symmetry-unique values.
    pub fn unique_len(&self) -> usize {
        self.packed.len()
    }

    pub fn to_dense(&self) -> Array4<T> {
        let n = self.n;
        Array4::from_shape_fn((n, n, n, n), |(i, j, k, l)| self.get(i, j, k, l))
    }

    /// Packs a dense tensor; only the canonical representative of each
    /// permutation class is read.
    pub fn from_dense(dense: &Array4<T>) -> Self {
        let n = dense.shape()[0];
        let npair = n * (n + 1) / 2;
        let mut packed = vec![T::zero(); npair * (npair + 1) / 2];
        for i in 0..n {
            for j in 0..=i {
                for k in 0..n {
                    for l in 0..=k {
                        let (ij, kl) = (pair_index(i, j), pair_index(k, l));
                        if ij >= kl {
                            packed[pair_index(ij, kl)] = dense[[i, j, k, l]];
                        }
                    }
                }
            }
        }
        Self { n, packed }
    }
}

#[derive(Debug, Clone)]
pub struct IntegralSet<T> {
    pub n_basis: usize,
    pub overlap: Array2<T>,
    pub kinetic: Array2<T>,
    pub nuclear_attraction: Array2<T>,
    pub eri: Eri<T>,
    /// Nuclear repulsion energy.
    pub h0: T,
}

impl<T: Real> IntegralSet<T> {
    /// T + V.
    pub fn core_hamiltonian(&self) -> Array2<T> {
        &self.kinetic + &self.nuclear_attraction
    }
}

pub(crate) fn point_charges<T: Real>(mol: &Molecule<T>) -> Vec<(T, [T; 3])> {
    mol.atoms.iter().map(|a| (a.charge(), a.position)).collect()
}

/// Overlap, kinetic, nuclear-attraction and repulsion integrals.
///
/// The ERI loop runs in parallel over canonical quartets; results are
/// collected in quartet order, so output does not depend on thread count.
pub fn compute_integrals<T: Real>(
    basis: &[ContractedGaussian<T>],
    mol: &Molecule<T>,
) -> Result<IntegralSet<T>> {
    let n = basis.len();
    if n == 0 {
        return Err(Error::InvalidConfig("empty basis".into()));
    }
    if n > MAX_BASIS {
        return Err(Error::BasisTooLarge { n, max: MAX_BASIS });
    }
    let h0 = nuclear_repulsion(mol)?;
    let charges = point_charges(mol);

    let mut overlap = Array2::zeros((n, n));
    let mut kinetic = Array2::zeros((n, n));
    let mut nuclear = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..=i {
            let s = hermite::contracted_overlap(&basis[i], &basis[j]);
            let t = hermite::contracted_kinetic(&basis[i], &basis[j]);
            let v = hermite::contracted_nuclear(&basis[i], &basis[j], &charges);
            for (m, x) in [(&mut overlap, s), (&mut kinetic, t), (&mut nuclear, v)] {
                m[[i, j]] = x;
                m[[j, i]] = x;
            }
        }
    }

    let mut pairs = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in 0..=i {
            pairs.push(hermite::PairData::new(&basis[i], &basis[j]));
        }
    }
    let npair = pairs.len();
    let quartets: Vec<(usize, usize)> = (0..npair)
        .flat_map(|ij| (0..=ij).map(move |kl| (ij, kl)))
        .collect();
    let packed: Vec<T> = quartets
        .par_iter()
        .map(|&(ij, kl)| hermite::contracted_eri(&pairs[ij], &pairs[kl]))
        .collect();

    Ok(IntegralSet {
        n_basis: n,
        overlap,
        kinetic,
        nuclear_attraction: nuclear,
        eri: Eri { n, packed },
        h0,
    })
}
