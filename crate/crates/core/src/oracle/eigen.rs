use ndarray::Array2;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sparse::SparseOperatorMatrix;
use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigenvalues, tridiagonal_eigen};
use crate::scalar::Real;

/// Matrices up to this dimension are diagonalised densely.
pub const DENSE_LIMIT: usize = 1024;

/// Ascending eigenvalues of a dense Hermitian matrix.
///
/// Real matrices go straight to the symmetric solver; complex ones through
/// the real embedding [[A, −B], [B, A]], whose spectrum is that of A + iB
/// with every eigenvalue doubled.
pub fn hermitian_eigenvalues<T: Real>(m: &Array2<Complex<T>>) -> Result<Vec<T>> {
    let n = m.nrows();
    if m.iter().all(|v| v.im == T::zero()) {
        let re = m.mapv(|v| v.re);
        return Ok(symmetric_eigenvalues(&re)?.to_vec());
    }
    let mut big = Array2::zeros((2 * n, 2 * n));
    for i in 0..n {
        for j in 0..n {
            let v = m[[i, j]];
            big[[i, j]] = v.re;
            big[[i + n, j + n]] = v.re;
            big[[i, j + n]] = -v.im;
            big[[i + n, j]] = v.im;
        }
    }
    let all = symmetric_eigenvalues(&big)?;
    Ok(all.iter().step_by(2).copied().collect())
}

fn dot<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter().zip(b).fold(Complex::default(), |acc, (x, y)| acc + x.conj() * y)
}

fn norm<T: Real>(a: &[Complex<T>]) -> T {
    a.iter().map(|v| v.norm_sqr()).sum::<T>().sqrt()
}

/// Lowest `k` distinct eigenvalues by Lanczos with full
/// reorthogonalisation. Degenerate eigenvalues are reported once.
pub fn lanczos<T: Real>(m: &SparseOperatorMatrix<T>, k: usize, tol: T) -> Result<Vec<T>> {
    let dim = m.dim();
    if k == 0 || dim == 0 {
        return Ok(Vec::new());
    }
    let max_steps = dim.min(600);
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a2c_205e);
    let mut v: Vec<Complex<T>> = (0..dim)
        .map(|_| Complex::new(T::lit(rng.gen_range(-1.0..1.0)), T::lit(rng.gen_range(-1.0..1.0))))
        .collect();
    let nv = norm(&v);
    v.iter_mut().for_each(|x| *x /= nv);

    let mut basis: Vec<Vec<Complex<T>>> = vec![v];
    let mut alpha: Vec<T> = Vec::new();
    let mut beta: Vec<T> = Vec::new();
    let scale = m.max_abs().max(T::one());
    loop {
        let j = basis.len() - 1;
        let mut w = m.matvec(&basis[j]);
        let a = dot(&basis[j], &w).re;
        alpha.push(a);
        // two passes of classical Gram-Schmidt against the whole basis
        for _ in 0..2 {
            for b in &basis {
                let c = dot(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let bnext = norm(&w);
        let steps = alpha.len();
        let exhausted = steps == max_steps || bnext <= T::epsilon() * scale * T::lit(10.0);
        if steps >= k.min(dim) && (steps.is_multiple_of(5) || exhausted) {
            let eig = tridiagonal_eigen(&alpha, &beta)?;
            let want = k.min(steps);
            let converged = (0..want).all(|i| (bnext * eig.vectors[[steps - 1, i]]).abs() <= tol);
            if converged || exhausted {
                if !converged && steps == max_steps {
                    return Err(Error::InvalidConfig(format!(
                        "Lanczos did not reach residual {tol:e} in {max_steps} steps"
                    )));
                }
                return Ok(eig.values.iter().take(want).copied().collect());
            }
        }
        beta.push(bnext);
        w.iter_mut().for_each(|x| *x /= bnext);
        basis.push(w);
    }
}

/// Lowest `k` eigenvalues, ascending. Dense for dimension ≤ 1024,
/// Lanczos beyond (where degenerate levels appear once).
pub fn exact_ground_energy<T: Real>(m: &SparseOperatorMatrix<T>, k: usize) -> Result<Vec<T>> {
    let dev = m.hermitian_deviation();
    let scale = m.max_abs().max(T::one());
    if dev > T::lit(1e-12) * scale {
        return Err(Error::NonHermitian(format!("max |A − A†| = {dev:e}")));
    }
    if m.dim() <= DENSE_LIMIT {
        let mut all = hermitian_eigenvalues(&m.to_dense())?;
        all.truncate(k);
        Ok(all)
    } else {
        let tol = T::lit(1e-9).max(T::epsilon() * scale * T::lit(100.0));
        lanczos(m, k, tol)
    }
}
