use std::collections::BTreeMap;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::state::StateVector;
use crate::error::{Error, Result};
use crate::pauli::{phase, Letter, PauliSum, PauliWord};
use crate::scalar::Real;

const HERMITIAN_TOL: f64 = 1e-10;

/// Imaginary residue tolerated, relative to ‖h‖₁ and loosened to a few
/// hundred ulps for single precision.
pub(crate) fn hermitian_tolerance<T: Real>(h: &PauliSum<T>) -> T {
    T::lit(HERMITIAN_TOL).max(T::epsilon() * T::lit(256.0)) * h.one_norm().max(T::one())
}

fn check<T: Real>(state: &StateVector<T>, h: &PauliSum<T>) -> Result<()> {
    if h.n_qubits() != state.n_qubits() {
        return Err(Error::DimensionMismatch(format!(
            "{}-qubit observable on a {}-qubit state",
            h.n_qubits(),
            state.n_qubits()
        )));
    }
    if !h.is_hermitian(hermitian_tolerance(h)) {
        return Err(Error::NonHermitian(format!(
            "observable has imaginary coefficient {:e}",
            h.max_imaginary()
        )));
    }
    Ok(())
}

fn finish<T: Real>(total: Complex<T>, h: &PauliSum<T>) -> Result<T> {
    if total.im.abs() > hermitian_tolerance(h) {
        return Err(Error::NonHermitian(format!("expectation has imaginary part {:e}", total.im)));
    }
    Ok(total.re)
}

/// ⟨ψ|H|ψ⟩ for a Hermitian Pauli sum.
pub fn expectation<T: Real>(state: &StateVector<T>, h: &PauliSum<T>) -> Result<T> {
    check(state, h)?;
    let amps = state.amplitudes();
    let mut groups: BTreeMap<u64, Vec<(usize, Complex<T>)>> = BTreeMap::new();
    for (w, c) in h.terms() {
        groups
            .entry(w.x_mask())
            .or_default()
            .push((w.z_mask() as usize, *c * phase(w.y_count() as u8)));
    }
    let mut total = Complex::default();
    for (x, terms) in groups {
        let x = x as usize;
        for (b, &a) in amps.iter().enumerate() {
            if a == Complex::default() {
                continue;
            }
            let d = terms.iter().fold(Complex::default(), |acc, &(z, c)| {
                if (b & z).count_ones() % 2 == 1 {
                    acc - c
                } else {
                    acc + c
                }
            });
            total += amps[b ^ x].conj() * a * d;
        }
    }
    finish(total, h)
}

/// A Hermitian observable prepared for repeated evaluation: terms sharing
/// an X mask are folded into one diagonal.
#[derive(Debug, Clone)]
pub struct CompiledObservable<T> {
    n_qubits: usize,
    groups: Vec<(usize, Vec<Complex<T>>)>,
    observable: PauliSum<T>,
}

impl<T: Real> CompiledObservable<T> {
    pub fn new(h: &PauliSum<T>) -> Result<Self> {
        let n = h.n_qubits();
        let probe = StateVector::basis(n, 0)?;
        check(&probe, h)?;
        let dim = 1usize << n;
        let mut by_x: BTreeMap<u64, Vec<Complex<T>>> = BTreeMap::new();
        for (w, c) in h.terms() {
            let c = *c * phase(w.y_count() as u8);
            let z = w.z_mask() as usize;
            let d = by_x
                .entry(w.x_mask())
                .or_insert_with(|| vec![Complex::default(); dim]);
            for (b, v) in d.iter_mut().enumerate() {
                if (b & z).count_ones() % 2 == 1 {
                    *v -= c;
                } else {
                    *v += c;
                }
            }
        }
        Ok(Self {
            n_qubits: n,
            groups: by_x.into_iter().map(|(x, d)| (x as usize, d)).collect(),
            observable: h.clone(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn observable(&self) -> &PauliSum<T> {
        &self.observable
    }

    pub fn expectation(&self, state: &StateVector<T>) -> Result<T> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "{}-qubit observable on a {}-qubit state",
                self.n_qubits,
                state.n_qubits()
            )));
        }
        let amps = state.amplitudes();
        let mut total = Complex::default();
        for (x, d) in &self.groups {
            let mut acc = Complex::default();
            for (b, (&a, &dv)) in amps.iter().zip(d).enumerate() {
                acc += amps[b ^ x].conj() * a * dv;
            }
            total += acc;
        }
        finish(total, &self.observable)
    }
}

/// Shot-based estimate of ⟨ψ|H|ψ⟩ and its standard error.
///
/// Terms are packed greedily (canonical order) into qubit-wise commuting
/// groups. Each group gets its own basis rotation and `shots` bitstrings
/// drawn from the exact outcome distribution; the group estimate is the
/// sample mean of Σ cₜ(±1) per shot, so shared-shot covariances are
/// included in the error. The identity coefficient is added exactly.
/// The unbiased sample variance is used (population variance for one shot).
pub fn sampled_expectation<T: Real>(
    state: &StateVector<T>,
    h: &PauliSum<T>,
    shots: usize,
    seed: u64,
) -> Result<(T, T)> {
    check(state, h)?;
    if shots == 0 {
        return Err(Error::InvalidConfig("at least one shot is required".into()));
    }
    let n = state.n_qubits();
    let mut mean = T::zero();
    let mut variance = T::zero();
    let mut groups: Vec<(PauliWord, Vec<(u64, T)>)> = Vec::new();
    for (w, c) in h.terms() {
        if w.is_identity() {
            mean += c.re;
            continue;
        }
        let slot = groups.iter_mut().find(|(basis, _)| {
            let overlap = basis.support() & w.support();
            (basis.x_mask() ^ w.x_mask()) & overlap == 0 && (basis.z_mask() ^ w.z_mask()) & overlap == 0
        });
        match slot {
            Some((basis, terms)) => {
                *basis = PauliWord::from_masks(n, basis.x_mask() | w.x_mask(), basis.z_mask() | w.z_mask())?;
                terms.push((w.support(), c.re));
            }
            None => groups.push((*w, vec![(w.support(), c.re)])),
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shots_t = T::from_usize_lossy(shots);
    for (basis, terms) in &groups {
        let mut rotated = state.clone();
        for q in 0..n {
            match basis.letter(q) {
                Letter::X => rotated.apply_hadamard(q)?,
                Letter::Y => {
                    rotated.apply_s_dagger(q)?;
                    rotated.apply_hadamard(q)?;
                }
                Letter::Z | Letter::I => {}
            }
        }
        let mut cumulative = Vec::with_capacity(1 << n);
        let mut run = 0.0f64;
        for p in rotated.probabilities() {
            run += p.as_f64();
            cumulative.push(run);
        }
        let total = run;
        // Welford accumulation of the per-shot estimator
        let mut m = 0.0f64;
        let mut m2 = 0.0f64;
        for s in 0..shots {
            let u = rng.gen::<f64>() * total;
            let b = cumulative.partition_point(|&c| c <= u).min(cumulative.len() - 1) as u64;
            let v: f64 = terms
                .iter()
                .map(|&(support, c)| {
                    if (b & support).count_ones() % 2 == 1 {
                        -c.as_f64()
                    } else {
                        c.as_f64()
                    }
                })
                .sum();
            let delta = v - m;
            m += delta / (s + 1) as f64;
            m2 += delta * (v - m);
        }
        let denom = if shots > 1 { shots - 1 } else { 1 };
        mean += T::lit(m);
        variance += T::lit(m2 / denom as f64) / shots_t;
    }
    Ok((mean, variance.sqrt()))
}
