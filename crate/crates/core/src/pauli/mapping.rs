//! Fermion-to-qubit encodings.
//!
//! Each encoding is a lower unitriangular matrix β over GF(2): qubit j
//! stores Σₖ β[j][k] nₖ mod 2. Jordan-Wigner is the identity, parity the
//! all-ones lower triangle, Bravyi-Kitaev the Fenwick-tree matrix. From β:
//!
//! * update set U(i) = { j ≠ i : β[j][i] = 1 }, qubits that flip with nᵢ;
//! * parity set P(i), qubits whose sum is Σ_{k<i} nₖ;
//! * flip set F(i), qubits j ≠ i with nᵢ = qᵢ ⊕ Σ_F q_j;
//! * remainder set R(i) = P(i) △ F(i);
//!
//! and a†ᵢ = ½ X_U (Xᵢ Z_P − i Yᵢ Z_R). With F(i) empty this is the familiar
//! ½ X_U (Xᵢ − i Yᵢ) Z_P form.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use num_complex::Complex;

use super::sum::PauliSum;
use super::word::PauliWord;
use crate::error::{Error, Result};
use crate::fermion::{FermionOperator, Ladder};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MappingKind {
    JordanWigner,
    Parity,
    BravyiKitaev,
}

impl MappingKind {
    pub const ALL: [MappingKind; 3] = [Self::JordanWigner, Self::Parity, Self::BravyiKitaev];

    pub fn short_name(self) -> &'static str {
        match self {
            Self::JordanWigner => "jw",
            Self::Parity => "parity",
            Self::BravyiKitaev => "bk",
        }
    }
}

impl fmt::Display for MappingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for MappingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['_', ' '], "-").as_str() {
            "jw" | "jordan-wigner" => Ok(Self::JordanWigner),
            "parity" => Ok(Self::Parity),
            "bk" | "bravyi-kitaev" => Ok(Self::BravyiKitaev),
            "binary" | "binary-code" | "bc" => Err(Error::UnsupportedMapping(
                "the binary-code transformation is out of scope".into(),
            )),
            other => Err(Error::UnsupportedMapping(format!("unknown mapping {other:?}"))),
        }
    }
}

/// Rows of β as bitmasks.
pub fn encoding_matrix(kind: MappingKind, n: usize) -> Vec<u64> {
    (0..n)
        .map(|j| match kind {
            MappingKind::JordanWigner => 1u64 << j,
            MappingKind::Parity => low_bits(j + 1),
            MappingKind::BravyiKitaev => {
                let size = (j + 1) & (j + 1).wrapping_neg();
                low_bits(j + 1) & !low_bits(j + 1 - size)
            }
        })
        .collect()
}

fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Inverse of a lower unitriangular GF(2) matrix.
fn invert_unitriangular(rows: &[u64]) -> Vec<u64> {
    let n = rows.len();
    let mut inv: Vec<u64> = Vec::with_capacity(n);
    // row i of β: q_i = n_i ⊕ Σ_{k<i} β[i][k] n_k, so
    // n_i = q_i ⊕ Σ_{k<i} β[i][k] n_k with each n_k already expanded.
    for i in 0..n {
        let mut r = 1u64 << i;
        let mut rest = rows[i] & !(1u64 << i);
        while rest != 0 {
            let k = rest.trailing_zeros() as usize;
            r ^= inv[k];
            rest &= rest - 1;
        }
        inv.push(r);
    }
    inv
}

/// Update, parity, flip and remainder sets of mode `i` as bitmasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModeSets {
    pub update: u64,
    pub parity: u64,
    pub flip: u64,
    pub remainder: u64,
}

#[derive(Debug, Clone)]
pub struct Encoding {
    pub kind: MappingKind,
    pub n_modes: usize,
    beta: Vec<u64>,
    sets: Vec<ModeSets>,
}

impl Encoding {
    pub fn new(kind: MappingKind, n_modes: usize) -> Result<Self> {
        if n_modes > super::word::MAX_WORD_QUBITS {
            return Err(Error::QubitCapExceeded {
                requested: n_modes,
                max: super::word::MAX_WORD_QUBITS,
            });
        }
        let beta = encoding_matrix(kind, n_modes);
        let inv = invert_unitriangular(&beta);
        let sets = (0..n_modes)
            .map(|i| {
                let bit = 1u64 << i;
                let update = (0..n_modes)
                    .filter(|&j| j != i && beta[j] & bit != 0)
                    .fold(0, |m, j| m | 1u64 << j);
                let parity = inv[..i].iter().fold(0, |m, r| m ^ r);
                let flip = inv[i] & !bit;
                ModeSets {
                    update,
                    parity,
                    flip,
                    remainder: parity ^ flip,
                }
            })
            .collect();
        Ok(Self {
            kind,
            n_modes,
            beta,
            sets,
        })
    }

    pub fn sets(&self, mode: usize) -> ModeSets {
        self.sets[mode]
    }

    /// Qubit values encoding the occupation bitmask `occupation`.
    pub fn encode(&self, occupation: u64) -> u64 {
        self.beta
            .iter()
            .enumerate()
            .fold(0, |q, (j, row)| q | (((row & occupation).count_ones() as u64 & 1) << j))
    }

    /// Image of a†ᵢ (`dagger`) or aᵢ.
    pub fn ladder<T: Real>(&self, l: Ladder) -> Result<PauliSum<T>> {
        let n = self.n_modes;
        if l.mode >= n {
            return Err(Error::ModeOutOfRange {
                mode: l.mode,
                n_modes: n,
            });
        }
        let s = self.sets[l.mode];
        let bit = 1u64 << l.mode;
        let half = T::lit(0.5);
        // X_U Xᵢ Z_P
        let a = PauliWord::from_masks(n, s.update | bit, s.parity)?;
        // X_U Yᵢ Z_R
        let b = PauliWord::from_masks(n, s.update | bit, s.remainder | bit)?;
        let sign = if l.dagger { -half } else { half };
        let mut out = PauliSum::zero(n);
        out.add_term(a, Complex::new(half, T::zero()));
        out.add_term(b, Complex::new(T::zero(), sign));
        Ok(out)
    }
}

/// Maps a fermionic operator on `n_modes` modes to qubits.
pub fn map_fermion<T: Real>(op: &FermionOperator<T>, kind: MappingKind, n_modes: usize) -> Result<PauliSum<T>> {
    map_with(op, &Encoding::new(kind, n_modes)?, &|m| m)
}

fn map_with<T: Real>(
    op: &FermionOperator<T>,
    enc: &Encoding,
    relabel: &dyn Fn(usize) -> usize,
) -> Result<PauliSum<T>> {
    let n = enc.n_modes;
    let mut cache: HashMap<Ladder, PauliSum<T>> = HashMap::new();
    let mut out = PauliSum::zero(n);
    for (ops, c) in op.terms() {
        let mut acc = PauliSum::identity(n, Complex::new(c, T::zero()));
        for &l in ops {
            if l.mode >= n {
                return Err(Error::ModeOutOfRange {
                    mode: l.mode,
                    n_modes: n,
                });
            }
            let target = Ladder {
                mode: relabel(l.mode),
                dagger: l.dagger,
            };
            if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(target) {
                e.insert(enc.ladder(target)?);
            }
            acc = &acc * &cache[&target];
        }
        out = out + acc;
    }
    Ok(out.simplify(T::lit(super::DEFAULT_THRESHOLD)))
}

/// Result of [`anticommutation_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarReport {
    pub kind: MappingKind,
    pub n_modes: usize,
    /// max over i, j of ‖{aᵢ, a†ⱼ} − δᵢⱼ‖ and ‖{aᵢ, aⱼ}‖ (entrywise max).
    pub max_deviation: f64,
}

/// Checks the canonical anticommutation relations of the mode images as
/// dense matrices.
pub fn anticommutation_check(kind: MappingKind, n_modes: usize) -> Result<CarReport> {
    const MAX_MODES: usize = 8;
    if n_modes > MAX_MODES {
        return Err(Error::QubitCapExceeded {
            requested: n_modes,
            max: MAX_MODES,
        });
    }
    let enc = Encoding::new(kind, n_modes)?;
    let dense = |l| -> Result<Array2<Complex<f64>>> { enc.ladder::<f64>(l)?.to_dense() };
    let ann: Vec<_> = (0..n_modes).map(|i| dense(Ladder::annihilate(i))).collect::<Result<_>>()?;
    let cre: Vec<_> = (0..n_modes).map(|i| dense(Ladder::create(i))).collect::<Result<_>>()?;
    let dim = 1usize << n_modes;
    let mut worst = 0.0f64;
    for i in 0..n_modes {
        for j in 0..n_modes {
            let ac = ann[i].dot(&cre[j]) + cre[j].dot(&ann[i]);
            let aa = ann[i].dot(&ann[j]) + ann[j].dot(&ann[i]);
            for r in 0..dim {
                for c in 0..dim {
                    let target = if i == j && r == c { 1.0 } else { 0.0 };
                    worst = worst
                        .max((ac[[r, c]] - Complex::new(target, 0.0)).norm())
                        .max(aa[[r, c]].norm());
                }
            }
        }
    }
    Ok(CarReport {
        kind,
        n_modes,
        max_deviation: worst,
    })
}

/// Symmetry sector used by the parity two-qubit reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityReduction {
    pub n_alpha: usize,
    pub n_beta: usize,
}

/// A complete recipe from spin-orbital modes (interleaved α/β) to qubits.
///
/// With a parity reduction the modes are first relabelled to block order
/// (all α, then all β). Parity qubits n/2 − 1 and n − 1 then hold N_α and
/// N mod 2; both are fixed by the sector and removed.
#[derive(Debug, Clone)]
pub struct QubitMapping {
    pub kind: MappingKind,
    pub n_modes: usize,
    pub reduction: Option<ParityReduction>,
    encoding: Encoding,
}

impl QubitMapping {
    pub fn new(kind: MappingKind, n_modes: usize) -> Result<Self> {
        Ok(Self {
            kind,
            n_modes,
            reduction: None,
            encoding: Encoding::new(kind, n_modes)?,
        })
    }

    /// Parity mapping with the two sector qubits removed.
    pub fn parity_reduced(n_modes: usize, n_alpha: usize, n_beta: usize) -> Result<Self> {
        if n_modes < 4 || !n_modes.is_multiple_of(2) {
            return Err(Error::Reduction(format!(
                "two-qubit reduction needs an even number of at least 4 modes, got {n_modes}"
            )));
        }
        if n_alpha > n_modes / 2 || n_beta > n_modes / 2 {
            return Err(Error::Reduction(format!(
                "sector ({n_alpha}α, {n_beta}β) does not fit in {n_modes} modes"
            )));
        }
        Ok(Self {
            kind: MappingKind::Parity,
            n_modes,
            reduction: Some(ParityReduction { n_alpha, n_beta }),
            encoding: Encoding::new(MappingKind::Parity, n_modes)?,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_modes - if self.reduction.is_some() { 2 } else { 0 }
    }

    fn relabel(&self, mode: usize) -> usize {
        if self.reduction.is_some() {
            if mode.is_multiple_of(2) {
                mode / 2
            } else {
                self.n_modes / 2 + mode / 2
            }
        } else {
            mode
        }
    }

    fn removed_qubits(&self) -> [usize; 2] {
        [self.n_modes / 2 - 1, self.n_modes - 1]
    }

    pub fn map<T: Real>(&self, op: &FermionOperator<T>) -> Result<PauliSum<T>> {
        let full = map_with(op, &self.encoding, &|m| self.relabel(m))?;
        match self.reduction {
            None => Ok(full),
            Some(sector) => parity_two_qubit_reduction(&full, sector.n_alpha, sector.n_alpha + sector.n_beta),
        }
    }

    /// Qubit bitstring (bit q = qubit q) of the determinant occupying `modes`.
    pub fn encode_occupation(&self, modes: &[usize]) -> Result<u64> {
        let mut occ = 0u64;
        for &m in modes {
            if m >= self.n_modes {
                return Err(Error::ModeOutOfRange {
                    mode: m,
                    n_modes: self.n_modes,
                });
            }
            occ |= 1u64 << self.relabel(m);
        }
        let q = self.encoding.encode(occ);
        Ok(match self.reduction {
            None => q,
            Some(_) => {
                let [a, b] = self.removed_qubits();
                let mut out = 0u64;
                let mut k = 0;
                for j in 0..self.n_modes {
                    if j == a || j == b {
                        continue;
                    }
                    out |= (q >> j & 1) << k;
                    k += 1;
                }
                out
            }
        })
    }
}

/// Removes parity qubits n/2 − 1 (N_α mod 2) and n − 1 (N mod 2) from a
/// parity-encoded, block-ordered operator, substituting their Z eigenvalues.
/// Fails if any term acts on them with X or Y.
pub fn parity_two_qubit_reduction<T: Real>(
    sum: &PauliSum<T>,
    n_alpha: usize,
    n_electrons: usize,
) -> Result<PauliSum<T>> {
    let n = sum.n_qubits();
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::Reduction(format!("cannot reduce a {n}-qubit operator")));
    }
    let qa = n / 2 - 1;
    let qn = n - 1;
    let fixed = (1u64 << qa) | (1u64 << qn);
    let za = if n_alpha.is_multiple_of(2) { T::one() } else { -T::one() };
    let zn = if n_electrons.is_multiple_of(2) { T::one() } else { -T::one() };
    let mut out = PauliSum::zero(n - 2);
    for (w, c) in sum.terms() {
        if w.x_mask() & fixed != 0 {
            return Err(Error::Reduction(format!(
                "term {w} does not commute with the sector parities"
            )));
        }
        let mut sign = T::one();
        if w.z_mask() >> qa & 1 == 1 {
            sign *= za;
        }
        if w.z_mask() >> qn & 1 == 1 {
            sign *= zn;
        }
        out.add_term(w.remove_qubits(&[qa, qn]), *c * sign);
    }
    Ok(out.simplify(T::lit(super::DEFAULT_THRESHOLD)))
}
