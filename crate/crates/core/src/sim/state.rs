use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pauli::{phase, PauliWord};
use crate::scalar::Real;

/// Hard limit on register size (2²⁴ amplitudes).
pub const MAX_QUBITS: usize = 24;

/// Amplitude loops switch to rayon above this many amplitudes.
const PARALLEL_THRESHOLD: usize = 1 << 14;

/// Dense n-qubit state; amplitude index bit q is qubit q.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    n_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// Computational basis state |index⟩.
    pub fn basis(n_qubits: usize, index: u64) -> Result<Self> {
        if n_qubits > MAX_QUBITS {
            return Err(Error::QubitCapExceeded {
                requested: n_qubits,
                max: MAX_QUBITS,
            });
        }
        let dim = 1usize << n_qubits;
        if index as usize >= dim {
            return Err(Error::DimensionMismatch(format!(
                "basis index {index} outside a {n_qubits}-qubit register"
            )));
        }
        let mut amps = vec![Complex::default(); dim];
        amps[index as usize] = Complex::new(T::one(), T::zero());
        Ok(Self { n_qubits, amps })
    }

    /// Takes ownership of raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self> {
        let dim = amps.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::DimensionMismatch(format!("{dim} amplitudes is not a power of two")));
        }
        let n_qubits = dim.trailing_zeros() as usize;
        if n_qubits > MAX_QUBITS {
            return Err(Error::QubitCapExceeded {
                requested: n_qubits,
                max: MAX_QUBITS,
            });
        }
        Ok(Self { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn norm(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt()
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::default(), |acc, (a, b)| acc + a.conj() * b)
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    pub fn apply_x(&mut self, q: usize) -> Result<()> {
        self.check_qubit(q)?;
        let bit = 1usize << q;
        for b in 0..self.amps.len() {
            if b & bit == 0 {
                self.amps.swap(b, b | bit);
            }
        }
        Ok(())
    }

    pub fn apply_hadamard(&mut self, q: usize) -> Result<()> {
        self.check_qubit(q)?;
        let bit = 1usize << q;
        let r = T::FRAC_1_SQRT_2();
        for b in 0..self.amps.len() {
            if b & bit == 0 {
                let (a0, a1) = (self.amps[b], self.amps[b | bit]);
                self.amps[b] = (a0 + a1) * r;
                self.amps[b | bit] = (a0 - a1) * r;
            }
        }
        Ok(())
    }

    /// S† = diag(1, −i).
    pub fn apply_s_dagger(&mut self, q: usize) -> Result<()> {
        self.check_qubit(q)?;
        let bit = 1usize << q;
        let minus_i = Complex::new(T::zero(), -T::one());
        for (b, a) in self.amps.iter_mut().enumerate() {
            if b & bit != 0 {
                *a *= minus_i;
            }
        }
        Ok(())
    }

    /// ψ ← P ψ.
    pub fn apply_pauli(&mut self, p: &PauliWord) -> Result<()> {
        self.check_word(p)?;
        let (x, z) = (p.x_mask() as usize, p.z_mask() as usize);
        let ph = phase::<T>(p.y_count() as u8);
        let old = std::mem::take(&mut self.amps);
        let mut new = vec![Complex::default(); old.len()];
        for (b, a) in old.into_iter().enumerate() {
            let s = if (b & z).count_ones() % 2 == 1 { -ph } else { ph };
            new[b ^ x] = a * s;
        }
        self.amps = new;
        Ok(())
    }

    fn check_word(&self, p: &PauliWord) -> Result<()> {
        if p.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "{}-qubit Pauli word on a {}-qubit state",
                p.n_qubits(),
                self.n_qubits
            )));
        }
        Ok(())
    }

    /// ψ ← exp(−i θ/2 P) ψ = cos(θ/2) ψ − i sin(θ/2) P ψ, in place.
    pub fn apply_pauli_exponential(&mut self, p: &PauliWord, theta: T) -> Result<()> {
        self.check_word(p)?;
        let half = theta * T::lit(0.5);
        let (c, s) = (half.cos(), half.sin());
        let (x, z) = (p.x_mask() as usize, p.z_mask() as usize);
        // −i sin · i^y, folded into one complex factor
        let k = Complex::new(T::zero(), -s) * phase::<T>(p.y_count() as u8);
        let sign = |b: usize| (b & z).count_ones() % 2 == 1;
        if x == 0 {
            let plus = Complex::new(c, T::zero()) + k;
            let minus = Complex::new(c, T::zero()) - k;
            let f = |(b, a): (usize, &mut Complex<T>)| *a *= if sign(b) { minus } else { plus };
            if self.amps.len() >= PARALLEL_THRESHOLD {
                self.amps.par_iter_mut().enumerate().for_each(f);
            } else {
                self.amps.iter_mut().enumerate().for_each(f);
            }
            return Ok(());
        }
        // b with the highest bit of x clear pairs with b ^ x, which lies in
        // the upper half of the same 2·pivot block
        let pivot = 1usize << (63 - (x as u64).leading_zeros() as usize);
        let low_x = x & (pivot - 1);
        let block = |(n, chunk): (usize, &mut [Complex<T>])| {
            let base = n * 2 * pivot;
            let (lo, hi) = chunk.split_at_mut(pivot);
            for i in 0..pivot {
                let j = i ^ low_x;
                let (b, bp) = (base + i, base + pivot + j);
                let (a0, a1) = (lo[i], hi[j]);
                let kb = if sign(bp) { -k } else { k };
                let kbp = if sign(b) { -k } else { k };
                lo[i] = a0 * c + a1 * kb;
                hi[j] = a1 * c + a0 * kbp;
            }
        };
        if self.amps.len() >= PARALLEL_THRESHOLD && self.amps.len() / (2 * pivot) > 1 {
            self.amps.par_chunks_mut(2 * pivot).enumerate().for_each(block);
        } else {
            self.amps.chunks_mut(2 * pivot).enumerate().for_each(block);
        }
        Ok(())
    }

    /// Global phase and norm agnostic fidelity |⟨a|b⟩|² / (‖a‖²‖b‖²).
    pub fn fidelity(&self, other: &Self) -> T {
        let ov = self.inner(other).norm_sqr();
        ov / (self.norm().powi(2) * other.norm().powi(2))
    }
}

/// Computational basis state with each listed qubit set to 1.
pub fn reference_state<T: Real>(n_qubits: usize, occupied: &[usize]) -> Result<StateVector<T>> {
    let mut index = 0u64;
    for &q in occupied {
        if q >= n_qubits {
            return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
        }
        if index >> q & 1 == 1 {
            return Err(Error::InvalidConfig(format!("qubit {q} listed twice")));
        }
        index |= 1u64 << q;
    }
    StateVector::basis(n_qubits, index)
}

/// Free-function form of [`StateVector::apply_pauli_exponential`].
pub fn apply_pauli_exponential<T: Real>(state: &mut StateVector<T>, p: &PauliWord, theta: T) -> Result<()> {
    state.apply_pauli_exponential(p, theta)
}
