//! Boys function F_m(x) = ∫₀¹ t^{2m} exp(−x t²) dt.

use crate::scalar::Real;

const SERIES_LIMIT: f64 = 35.0;

/// Fills `out[m]` with F_m(x) for m = 0..out.len().
///
/// Below x = 35 the highest order comes from the convergent series and the
/// rest from downward recursion. Above it, F_0 = ½√(π/x) (erf(√x) = 1 to
/// machine precision) seeds the upward recursion, which is stable there.
pub fn boys<T: Real>(x: T, out: &mut [T]) {
    let m_max = match out.len() {
        0 => return,
        n => n - 1,
    };
    let two = T::lit(2.0);
    let ex = (-x).exp();
    if x < T::lit(SERIES_LIMIT) {
        let mut term = T::one() / T::from_usize_lossy(2 * m_max + 1);
        let mut sum = term;
        let mut k = 1usize;
        while term > T::epsilon() * T::lit(1e-3) * sum {
            term = term * two * x / T::from_usize_lossy(2 * m_max + 2 * k + 1);
            sum += term;
            k += 1;
            if k > 1000 {
                break;
            }
        }
        out[m_max] = ex * sum;
        for m in (1..=m_max).rev() {
            out[m - 1] = (two * x * out[m] + ex) / T::from_usize_lossy(2 * m - 1);
        }
    } else {
        out[0] = T::lit(0.5) * (T::PI() / x).sqrt();
        for m in 0..m_max {
            out[m + 1] = (T::from_usize_lossy(2 * m + 1) * out[m] - ex) / (two * x);
        }
    }
}
