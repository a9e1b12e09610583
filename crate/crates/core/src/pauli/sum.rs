use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use ndarray::Array2;
use num_complex::Complex;

use super::word::{PauliString, PauliWord};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default magnitude below which [`PauliSum::simplify`] drops a term.
pub const DEFAULT_THRESHOLD: f64 = 1e-12;

/// i^k as a complex number.
pub fn phase<T: Real>(k: u8) -> Complex<T> {
    match k % 4 {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    }
}

/// Σᵢ μᵢ Pᵢ with terms kept in canonical (lexicographic) order.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum<T> {
    n_qubits: usize,
    terms: BTreeMap<PauliWord, Complex<T>>,
}

impl<T: Real> PauliSum<T> {
    pub fn zero(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n_qubits: usize, c: Complex<T>) -> Self {
        let mut s = Self::zero(n_qubits);
        s.add_term(PauliWord::identity(n_qubits), c);
        s
    }

    pub fn from_string(p: &PauliString, c: Complex<T>) -> Self {
        let mut s = Self::zero(p.word.n_qubits());
        s.add_term(p.word, c * phase(p.phase));
        s
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: PauliWord, c: Complex<T>) {
        assert_eq!(word.n_qubits(), self.n_qubits, "word size differs from sum");
        *self.terms.entry(word).or_default() += c;
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&PauliWord, &Complex<T>)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &PauliWord) -> Complex<T> {
        self.terms.get(word).copied().unwrap_or_default()
    }

    pub fn scale(mut self, c: Complex<T>) -> Self {
        for v in self.terms.values_mut() {
            *v *= c;
        }
        self
    }

    /// Drops terms with |μ| ≤ `threshold`. Like terms are always merged
    /// on insertion, and iteration order is canonical.
    pub fn simplify(mut self, threshold: T) -> Self {
        self.terms.retain(|_, v| v.norm() > threshold);
        self
    }

    /// Largest imaginary part among the coefficients.
    pub fn max_imaginary(&self) -> T {
        self.terms.values().map(|c| c.im.abs()).fold(T::zero(), T::max)
    }

    /// A Pauli sum is Hermitian exactly when every coefficient is real.
    pub fn is_hermitian(&self, tol: T) -> bool {
        self.max_imaginary() <= tol
    }

    /// Zeroes imaginary parts after checking they are within `tol`.
    pub fn into_hermitian(mut self, tol: T) -> Result<Self> {
        let worst = self.max_imaginary();
        if worst > tol {
            return Err(Error::NonHermitian(format!(
                "imaginary coefficient of magnitude {worst:e}"
            )));
        }
        for v in self.terms.values_mut() {
            v.im = T::zero();
        }
        Ok(self)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|(w, c)| (*w, c.conj())).collect(),
        }
    }

    /// Σ |μᵢ|, an upper bound on the spectral radius.
    pub fn one_norm(&self) -> T {
        self.terms.values().map(|c| c.norm()).sum()
    }

    fn check_size(&self, other: &Self) {
        assert_eq!(self.n_qubits, other.n_qubits, "Pauli sums on different registers");
    }

    /// One term per line, `re im LETTERS`, in canonical order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (w, c) in &self.terms {
            let _ = writeln!(out, "{} {} {}", c.re, c.im, w);
        }
        out
    }

    /// Parses [`to_text`](Self::to_text) output. Blank lines and `#`
    /// comments are ignored; an empty text needs `n_qubits` to size the sum.
    pub fn from_text(text: &str, n_qubits: Option<usize>) -> Result<Self> {
        let mut sum: Option<Self> = n_qubits.map(Self::zero);
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |m: &str| Error::Parse {
                line: i + 1,
                message: m.to_string(),
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(err("expected `re im LETTERS`"));
            }
            let re: f64 = fields[0].parse().map_err(|_| err("bad real part"))?;
            let im: f64 = fields[1].parse().map_err(|_| err("bad imaginary part"))?;
            let word: PauliWord = fields[2].parse().map_err(|_| err("bad Pauli letters"))?;
            let s = sum.get_or_insert_with(|| Self::zero(word.n_qubits()));
            if word.n_qubits() != s.n_qubits {
                return Err(err("inconsistent register size"));
            }
            s.add_term(word, Complex::new(T::lit(re), T::lit(im)));
        }
        sum.ok_or_else(|| Error::Parse {
            line: 0,
            message: "empty Pauli sum without a register size".into(),
        })
    }

    /// Dense 2ⁿ×2ⁿ matrix, little-endian (qubit 0 is the lowest index bit).
    /// Intended for small registers.
    pub fn to_dense(&self) -> Result<Array2<Complex<T>>> {
        const MAX_DENSE: usize = 14;
        if self.n_qubits > MAX_DENSE {
            return Err(Error::QubitCapExceeded {
                requested: self.n_qubits,
                max: MAX_DENSE,
            });
        }
        let dim = 1usize << self.n_qubits;
        let mut m = Array2::from_elem((dim, dim), Complex::default());
        for (w, c) in &self.terms {
            let base = *c * phase(w.y_count() as u8 % 4);
            let (x, z) = (w.x_mask() as usize, w.z_mask() as usize);
            for b in 0..dim {
                let sign = if (b & z).count_ones() % 2 == 1 { -T::one() } else { T::one() };
                m[[b ^ x, b]] += base * sign;
            }
        }
        Ok(m)
    }
}

impl<T: Real> Add for PauliSum<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.check_size(&rhs);
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl<T: Real> Neg for PauliSum<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(Complex::new(-T::one(), T::zero()))
    }
}

impl<T: Real> Sub for PauliSum<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Real> Mul for &PauliSum<T> {
    type Output = PauliSum<T>;
    fn mul(self, rhs: Self) -> PauliSum<T> {
        self.check_size(rhs);
        let mut out = PauliSum::zero(self.n_qubits);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let (k, w) = a.mul(b);
                out.add_term(w, *ca * *cb * phase(k));
            }
        }
        out
    }
}
