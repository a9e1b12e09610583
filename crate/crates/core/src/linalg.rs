//! Small dense linear-algebra kernels used by the SCF and the oracle.
//!
//! The symmetric eigensolver is Householder tridiagonalisation followed by
//! implicit QL iterations (the EISPACK `tred2`/`tql2` pair).

use ndarray::{Array1, Array2, ShapeBuilder};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Eigen-decomposition of a real symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen<T> {
    /// Ascending eigenvalues.
    pub values: Array1<T>,
    /// Orthonormal eigenvectors, one per column, in the order of `values`.
    pub vectors: Array2<T>,
}

/// Full eigen-decomposition; only the lower triangle of `a` is trusted.
pub fn symmetric_eigen<T: Real>(a: &Array2<T>) -> Result<SymmetricEigen<T>> {
    let (values, vectors) = decompose(a, true)?;
    Ok(SymmetricEigen {
        values,
        vectors: vectors.expect("vectors requested"),
    })
}

/// Eigenvalues only, ascending. Skips the vector accumulation.
pub fn symmetric_eigenvalues<T: Real>(a: &Array2<T>) -> Result<Array1<T>> {
    Ok(decompose(a, false)?.0)
}

fn decompose<T: Real>(a: &Array2<T>, want_vectors: bool) -> Result<(Array1<T>, Option<Array2<T>>)> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "eigensolver needs a square matrix, got {}x{}",
            n,
            a.ncols()
        )));
    }
    if n == 0 {
        return Ok((Array1::zeros(0), want_vectors.then(|| Array2::zeros((0, 0)))));
    }
    // column-major working copy: the reductions below walk columns
    let mut v = Array2::from_shape_fn((n, n).f(), |(i, j)| if i >= j { a[[i, j]] } else { a[[j, i]] });
    let mut d = Array1::zeros(n);
    let mut e = Array1::zeros(n);
    tridiagonalize(&mut v, &mut d, &mut e, want_vectors);
    tridiagonal_ql(&mut v, &mut d, &mut e, want_vectors)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).expect("finite eigenvalues"));
    let values = Array1::from_iter(order.iter().map(|&i| d[i]));
    let vectors = want_vectors.then(|| {
        let mut out = Array2::zeros((n, n));
        for (col, &src) in order.iter().enumerate() {
            out.column_mut(col).assign(&v.column(src));
        }
        out
    });
    Ok((values, vectors))
}

fn tridiagonalize<T: Real>(v: &mut Array2<T>, d: &mut Array1<T>, e: &mut Array1<T>, want_vectors: bool) {
    let n = d.len();
    let zero = T::zero();
    for j in 0..n {
        d[j] = v[[n - 1, j]];
    }
    for i in (1..n).rev() {
        let mut scale = zero;
        let mut h = zero;
        for k in 0..i {
            scale += d[k].abs();
        }
        if scale == zero {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[[i - 1, j]];
                v[[i, j]] = zero;
                v[[j, i]] = zero;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > zero {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for j in 0..i {
                e[j] = zero;
            }
            for j in 0..i {
                f = d[j];
                v[[j, i]] = f;
                g = e[j] + v[[j, j]] * f;
                for k in (j + 1)..i {
                    g += v[[k, j]] * d[k];
                    e[k] += v[[k, j]] * f;
                }
                e[j] = g;
            }
            f = zero;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    let upd = f * e[k] + g * d[k];
                    v[[k, j]] -= upd;
                }
                d[j] = v[[i - 1, j]];
                v[[i, j]] = zero;
            }
        }
        d[i] = h;
    }

    for i in 0..n.saturating_sub(1) {
        v[[n - 1, i]] = v[[i, i]];
        v[[i, i]] = T::one();
        let h = d[i + 1];
        if want_vectors && h != zero {
            for k in 0..=i {
                d[k] = v[[k, i + 1]] / h;
            }
            for j in 0..=i {
                let mut g = zero;
                for k in 0..=i {
                    g += v[[k, i + 1]] * v[[k, j]];
                }
                for k in 0..=i {
                    let upd = g * d[k];
                    v[[k, j]] -= upd;
                }
            }
        }
        for k in 0..=i {
            v[[k, i + 1]] = zero;
        }
    }
    for j in 0..n {
        d[j] = v[[n - 1, j]];
        v[[n - 1, j]] = zero;
    }
    v[[n - 1, n - 1]] = T::one();
    e[0] = zero;
}

fn tridiagonal_ql<T: Real>(
    v: &mut Array2<T>,
    d: &mut Array1<T>,
    e: &mut Array1<T>,
    want_vectors: bool,
) -> Result<()> {
    let n = d.len();
    let zero = T::zero();
    let one = T::one();
    let two = T::lit(2.0);
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = zero;

    let mut f = zero;
    let mut tst1 = zero;
    let eps = T::epsilon();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > 60 {
                    return Err(Error::InvalidConfig(
                        "symmetric eigensolver failed to converge".into(),
                    ));
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(one);
                if p < zero {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for i in (l + 2)..n {
                    d[i] -= h;
                }
                f += h;

                p = d[m];
                let mut c = one;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = zero;
                let mut s2 = zero;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if want_vectors {
                        for k in 0..n {
                            let hk = v[[k, i + 1]];
                            v[[k, i + 1]] = s * v[[k, i]] + c * hk;
                            v[[k, i]] = c * v[[k, i]] - s * hk;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = zero;
    }
    Ok(())
}

/// Eigenvalues of a symmetric tridiagonal matrix given its diagonal and
/// off-diagonal (`off.len() == diag.len() - 1`).
pub fn tridiagonal_eigenvalues<T: Real>(diag: &[T], off: &[T]) -> Result<Vec<T>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut d = Array1::from_vec(diag.to_vec());
    let mut e = Array1::zeros(n);
    for (i, &b) in off.iter().enumerate() {
        e[i + 1] = b;
    }
    let mut dummy = Array2::zeros((0, 0));
    tridiagonal_ql(&mut dummy, &mut d, &mut e, false)?;
    let mut out = d.to_vec();
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(out)
}

/// Tridiagonal eigenvalues together with the eigenvector components, used
/// for Lanczos Ritz pairs. Returns (values, vectors as columns), ascending.
pub fn tridiagonal_eigen<T: Real>(diag: &[T], off: &[T]) -> Result<SymmetricEigen<T>> {
    let n = diag.len();
    let mut t = Array2::zeros((n, n));
    for i in 0..n {
        t[[i, i]] = diag[i];
        if i + 1 < n {
            t[[i + 1, i]] = off[i];
            t[[i, i + 1]] = off[i];
        }
    }
    symmetric_eigen(&t)
}

/// Symmetric (Löwdin) inverse square root of a positive-definite matrix.
/// Fails when the smallest eigenvalue is at or below `min_eigenvalue`.
pub fn inverse_sqrt_spd<T: Real>(s: &Array2<T>, min_eigenvalue: T) -> Result<Array2<T>> {
    let eig = symmetric_eigen(s)?;
    let smallest = eig.values.iter().copied().fold(T::infinity(), T::min);
    if !(smallest > min_eigenvalue) {
        return Err(Error::SingularOverlap(smallest.as_f64()));
    }
    let n = s.nrows();
    let mut scaled = eig.vectors.clone();
    for (j, &lambda) in eig.values.iter().enumerate() {
        let w = T::one() / lambda.sqrt();
        scaled.column_mut(j).mapv_inplace(|x| x * w);
    }
    let mut out = Array2::zeros((n, n));
    ndarray::linalg::general_mat_mul(T::one(), &scaled, &eig.vectors.t(), T::zero(), &mut out);
    Ok(out)
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve<T: Real>(a: &Array2<T>, b: &Array1<T>) -> Result<Array1<T>> {
    let n = a.nrows();
    if a.ncols() != n || b.len() != n {
        return Err(Error::DimensionMismatch("solve needs square system".into()));
    }
    let mut m = a.clone();
    let mut x = b.clone();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[[i, col]].abs().partial_cmp(&m[[j, col]].abs()).unwrap())
            .unwrap();
        if m[[pivot, col]].abs() <= T::epsilon() * T::lit(1e-3) {
            return Err(Error::InvalidConfig("singular linear system".into()));
        }
        if pivot != col {
            for k in 0..n {
                m.swap([pivot, k], [col, k]);
            }
            x.swap(pivot, col);
        }
        for row in (col + 1)..n {
            let factor = m[[row, col]] / m[[col, col]];
            if factor == T::zero() {
                continue;
            }
            for k in col..n {
                let upd = factor * m[[col, k]];
                m[[row, k]] -= upd;
            }
            let upd = factor * x[col];
            x[row] -= upd;
        }
    }
    for row in (0..n).rev() {
        let mut acc = x[row];
        for k in (row + 1)..n {
            acc -= m[[row, k]] * x[k];
        }
        x[row] = acc / m[[row, row]];
    }
    Ok(x)
}
