use std::collections::{BTreeMap, HashMap};

use ndarray::Array2;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::pauli::{phase, PauliSum};
use crate::scalar::Real;

/// Largest register [`pauli_to_matrix`] accepts.
pub const MAX_SPARSE_QUBITS: usize = 14;

/// Compressed sparse row matrix with complex entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperatorMatrix<T> {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<Complex<T>>,
}

/// Terms sharing an X mask act as one permutation times a diagonal.
fn group_by_x<T: Real>(h: &PauliSum<T>) -> BTreeMap<u64, Vec<(u64, Complex<T>)>> {
    let mut groups: BTreeMap<u64, Vec<(u64, Complex<T>)>> = BTreeMap::new();
    for (w, c) in h.terms() {
        groups
            .entry(w.x_mask())
            .or_default()
            .push((w.z_mask(), *c * phase(w.y_count() as u8)));
    }
    groups
}

impl<T: Real> SparseOperatorMatrix<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, Complex<T>)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.cols[span.clone()].iter().copied().zip(self.values[span].iter().copied())
    }

    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        self.row(r).find(|&(col, _)| col == c).map(|(_, v)| v).unwrap_or_default()
    }

    pub fn matvec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.dim, "vector length differs from matrix");
        (0..self.dim)
            .map(|r| self.row(r).fold(Complex::default(), |acc, (c, a)| acc + a * v[c]))
            .collect()
    }

    /// max |A − A†| over stored entries.
    pub fn hermitian_deviation(&self) -> T {
        let mut worst = T::zero();
        for r in 0..self.dim {
            for (c, v) in self.row(r) {
                worst = worst.max((v - self.get(c, r).conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().map(|v| v.norm()).fold(T::zero(), T::max)
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == T::zero())
    }

    pub fn to_dense(&self) -> Array2<Complex<T>> {
        let mut m = Array2::from_elem((self.dim, self.dim), Complex::default());
        for r in 0..self.dim {
            for (c, v) in self.row(r) {
                m[[r, c]] += v;
            }
        }
        m
    }

    fn from_rows(rows: Vec<Vec<(usize, Complex<T>)>>) -> Self {
        let dim = rows.len();
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for mut row in rows {
            row.sort_by_key(|&(c, _)| c);
            for (c, v) in row {
                if v != Complex::default() {
                    cols.push(c);
                    values.push(v);
                }
            }
            row_ptr.push(cols.len());
        }
        Self {
            dim,
            row_ptr,
            cols,
            values,
        }
    }
}

/// Assembles Σ μᵢ Pᵢ as a sparse 2ⁿ × 2ⁿ matrix (little-endian indices).
pub fn pauli_to_matrix<T: Real>(h: &PauliSum<T>) -> Result<SparseOperatorMatrix<T>> {
    let n = h.n_qubits();
    if n > MAX_SPARSE_QUBITS {
        return Err(Error::QubitCapExceeded {
            requested: n,
            max: MAX_SPARSE_QUBITS,
        });
    }
    let dim = 1usize << n;
    let groups = group_by_x(h);
    let rows = (0..dim)
        .map(|r| {
            groups
                .iter()
                .map(|(&x, terms)| {
                    // ⟨r| P |r ⊕ x⟩ = i^y (−1)^{|(r ⊕ x) ∧ z|}
                    let col = r ^ x as usize;
                    let v = terms.iter().fold(Complex::default(), |acc, &(z, c)| {
                        if (col as u64 & z).count_ones() % 2 == 1 {
                            acc - c
                        } else {
                            acc + c
                        }
                    });
                    (col, v)
                })
                .collect()
        })
        .collect();
    Ok(SparseOperatorMatrix::from_rows(rows))
}

/// Matrix of `h` restricted to the span of the given computational basis
/// states (in the given order). Exact when the span is invariant under `h`.
pub fn pauli_to_matrix_in_subspace<T: Real>(h: &PauliSum<T>, states: &[u64]) -> Result<SparseOperatorMatrix<T>> {
    let index: HashMap<u64, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    if index.len() != states.len() {
        return Err(Error::InvalidConfig("repeated basis state in subspace".into()));
    }
    let groups = group_by_x(h);
    let rows = states
        .iter()
        .map(|&r| {
            groups
                .iter()
                .filter_map(|(&x, terms)| {
                    let col_state = r ^ x;
                    let col = *index.get(&col_state)?;
                    let v = terms.iter().fold(Complex::default(), |acc, &(z, c)| {
                        if (col_state & z).count_ones() % 2 == 1 {
                            acc - c
                        } else {
                            acc + c
                        }
                    });
                    Some((col, v))
                })
                .collect()
        })
        .collect();
    Ok(SparseOperatorMatrix::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliWord;

    type C = Complex<f64>;

    fn sum(terms: &[(&str, f64, f64)]) -> PauliSum<f64> {
        let n = terms[0].0.len();
        let mut s = PauliSum::zero(n);
        for &(w, re, im) in terms {
            s.add_term(w.parse::<PauliWord>().unwrap(), C::new(re, im));
        }
        s
    }

    #[test]
    fn z_and_identity() {
        let m = pauli_to_matrix(&sum(&[("Z", 1.0, 0.0)])).unwrap();
        assert_eq!(m.get(0, 0), C::new(1.0, 0.0));
        assert_eq!(m.get(1, 1), C::new(-1.0, 0.0));
        assert_eq!(m.nnz(), 2);
        let m = pauli_to_matrix(&sum(&[("II", 3.0, 0.0)])).unwrap();
        for i in 0..4 {
            assert_eq!(m.get(i, i), C::new(3.0, 0.0));
        }
        assert_eq!(m.nnz(), 4);
    }

    #[test]
    fn agrees_with_dense_construction() {
        let s = sum(&[("XYZ", 0.3, 0.0), ("YIX", -0.7, 0.0), ("ZZI", 0.2, 0.0), ("IYY", 0.1, 0.0)]);
        let a = pauli_to_matrix(&s).unwrap().to_dense();
        let b = s.to_dense().unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert!((x - y).norm() < 1e-15);
        }
        assert!(pauli_to_matrix(&s).unwrap().hermitian_deviation() < 1e-15);
    }

    #[test]
    fn subspace_block() {
        let s = sum(&[("XX", 0.5, 0.0), ("YY", 0.5, 0.0), ("ZI", 1.0, 0.0)]);
        // XX + YY swaps |01⟩ and |10⟩ with weight 1
        let m = pauli_to_matrix_in_subspace(&s, &[0b01, 0b10]).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.get(0, 1), C::new(1.0, 0.0));
        assert_eq!(m.get(0, 0), C::new(-1.0, 0.0));
        assert_eq!(m.get(1, 1), C::new(1.0, 0.0));
        assert!(pauli_to_matrix_in_subspace(&s, &[1, 1]).is_err());
    }

    #[test]
    fn cap_enforced() {
        let s = PauliSum::<f64>::zero(15);
        assert!(matches!(pauli_to_matrix(&s), Err(Error::QubitCapExceeded { .. })));
    }
}
