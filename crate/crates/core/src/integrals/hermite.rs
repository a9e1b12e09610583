//! McMurchie–Davidson machinery: Hermite expansion coefficients of Gaussian
//! products and Hermite Coulomb integrals R_{tuv}.

use crate::chem::ContractedGaussian;
use crate::scalar::Real;

use super::boys::boys;

/// E^{ij}_t for one Cartesian direction, 0 ≤ i ≤ i_max, 0 ≤ j ≤ j_max.
#[derive(Debug, Clone)]
pub(crate) struct HermiteTable<T> {
    nj: usize,
    nt: usize,
    data: Vec<T>,
}

impl<T: Real> HermiteTable<T> {
    /// `separation` is A − B along this direction.
    pub fn new(i_max: usize, j_max: usize, a: T, b: T, separation: T) -> Self {
        let ni = i_max + 1;
        let nj = j_max + 1;
        let nt = i_max + j_max + 2;
        let mut data = vec![T::zero(); ni * nj * nt];
        let p = a + b;
        let q = a * b / p;
        let half_p = T::one() / (T::lit(2.0) * p);
        let idx = |i: usize, j: usize, t: usize| (i * nj + j) * nt + t;
        data[idx(0, 0, 0)] = (-q * separation * separation).exp();

        let shift_a = -q * separation / a;
        let shift_b = q * separation / b;
        for i in 0..ni {
            if i > 0 {
                for t in 0..=(i) {
                    let lower = if t > 0 { data[idx(i - 1, 0, t - 1)] } else { T::zero() };
                    let upper = if t + 1 < nt { data[idx(i - 1, 0, t + 1)] } else { T::zero() };
                    data[idx(i, 0, t)] = half_p * lower
                        + shift_a * data[idx(i - 1, 0, t)]
                        + T::from_usize_lossy(t + 1) * upper;
                }
            }
            for j in 1..nj {
                for t in 0..=(i + j) {
                    let lower = if t > 0 { data[idx(i, j - 1, t - 1)] } else { T::zero() };
                    let upper = if t + 1 < nt { data[idx(i, j - 1, t + 1)] } else { T::zero() };
                    data[idx(i, j, t)] = half_p * lower
                        + shift_b * data[idx(i, j - 1, t)]
                        + T::from_usize_lossy(t + 1) * upper;
                }
            }
        }
        Self { nj, nt, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, t: usize) -> T {
        if t >= self.nt {
            return T::zero();
        }
        self.data[(i * self.nj + j) * self.nt + t]
    }
}

/// R_{tuv}(α, PC) for t + u + v ≤ l_max, order n = 0.
#[derive(Debug, Clone)]
pub(crate) struct CoulombTable<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Real> CoulombTable<T> {
    pub fn new(l_max: usize, alpha: T, pc: [T; 3]) -> Self {
        let dim = l_max + 1;
        let idx = |t: usize, u: usize, v: usize| (t * dim + u) * dim + v;
        let r2 = pc[0] * pc[0] + pc[1] * pc[1] + pc[2] * pc[2];
        let mut f = vec![T::zero(); dim];
        boys(alpha * r2, &mut f);

        let mut next = vec![T::zero(); dim * dim * dim];
        let mut cur = vec![T::zero(); dim * dim * dim];
        let minus_two_alpha = -T::lit(2.0) * alpha;
        for n in (0..=l_max).rev() {
            let budget = l_max - n;
            for t in 0..=budget {
                for u in 0..=(budget - t) {
                    for v in 0..=(budget - t - u) {
                        let value = if t == 0 && u == 0 && v == 0 {
                            minus_two_alpha.powi(n as i32) * f[n]
                        } else if t > 0 {
                            let a = if t > 1 {
                                T::from_usize_lossy(t - 1) * next[idx(t - 2, u, v)]
                            } else {
                                T::zero()
                            };
                            a + pc[0] * next[idx(t - 1, u, v)]
                        } else if u > 0 {
                            let a = if u > 1 {
                                T::from_usize_lossy(u - 1) * next[idx(t, u - 2, v)]
                            } else {
                                T::zero()
                            };
                            a + pc[1] * next[idx(t, u - 1, v)]
                        } else {
                            let a = if v > 1 {
                                T::from_usize_lossy(v - 1) * next[idx(t, u, v - 2)]
                            } else {
                                T::zero()
                            };
                            a + pc[2] * next[idx(t, u, v - 1)]
                        };
                        cur[idx(t, u, v)] = value;
                    }
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        Self { dim, data: next }
    }

    #[inline]
    pub fn get(&self, t: usize, u: usize, v: usize) -> T {
        self.data[(t * self.dim + u) * self.dim + v]
    }
}

fn separation<T: Real>(a: &[T; 3], b: &[T; 3]) -> [T; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn product_center<T: Real>(a: T, ra: &[T; 3], b: T, rb: &[T; 3]) -> [T; 3] {
    let p = a + b;
    [
        (a * ra[0] + b * rb[0]) / p,
        (a * ra[1] + b * rb[1]) / p,
        (a * ra[2] + b * rb[2]) / p,
    ]
}

fn tables<T: Real>(
    la: [u32; 3],
    lb: [u32; 3],
    extra_j: usize,
    a: T,
    b: T,
    ab: [T; 3],
) -> [HermiteTable<T>; 3] {
    std::array::from_fn(|d| {
        HermiteTable::new(la[d] as usize, lb[d] as usize + extra_j, a, b, ab[d])
    })
}

pub(crate) fn contracted_overlap<T: Real>(ga: &ContractedGaussian<T>, gb: &ContractedGaussian<T>) -> T {
    let ab = separation(&ga.center, &gb.center);
    let (la, lb) = (ga.angular_momentum, gb.angular_momentum);
    let mut s = T::zero();
    for (a, ca) in ga.primitives() {
        for (b, cb) in gb.primitives() {
            let e = tables(la, lb, 0, a, b, ab);
            let p = a + b;
            let mut prim = (T::PI() / p).powf(T::lit(1.5));
            for d in 0..3 {
                prim *= e[d].get(la[d] as usize, lb[d] as usize, 0);
            }
            s += ca * cb * prim;
        }
    }
    s
}

pub(crate) fn contracted_kinetic<T: Real>(ga: &ContractedGaussian<T>, gb: &ContractedGaussian<T>) -> T {
    let ab = separation(&ga.center, &gb.center);
    let (la, lb) = (ga.angular_momentum, gb.angular_momentum);
    let two = T::lit(2.0);
    let mut out = T::zero();
    for (a, ca) in ga.primitives() {
        for (b, cb) in gb.primitives() {
            let e = tables(la, lb, 2, a, b, ab);
            let root = (T::PI() / (a + b)).sqrt();
            // 1-D overlap with the ket power shifted by `shift`
            let s1 = |d: usize, shift: i32| -> T {
                let j = lb[d] as i32 + shift;
                if j < 0 {
                    T::zero()
                } else {
                    e[d].get(la[d] as usize, j as usize, 0) * root
                }
            };
            let base = [s1(0, 0), s1(1, 0), s1(2, 0)];
            let l_total = T::from_u32(lb.iter().sum::<u32>()).unwrap();
            let mut t = b * (two * l_total + T::lit(3.0)) * base[0] * base[1] * base[2];
            for d in 0..3 {
                let others = base[(d + 1) % 3] * base[(d + 2) % 3];
                t -= two * b * b * s1(d, 2) * others;
                let l = T::from_u32(lb[d]).unwrap();
                t -= T::lit(0.5) * l * (l - T::one()) * s1(d, -2) * others;
            }
            out += ca * cb * t;
        }
    }
    out
}

/// Attraction to point charges (Z, position): −Σ_C Z_C ⟨a|1/|r − C||b⟩.
pub(crate) fn contracted_nuclear<T: Real>(
    ga: &ContractedGaussian<T>,
    gb: &ContractedGaussian<T>,
    charges: &[(T, [T; 3])],
) -> T {
    let ab = separation(&ga.center, &gb.center);
    let (la, lb) = (ga.angular_momentum, gb.angular_momentum);
    let l_max = (ga.total_angular_momentum() + gb.total_angular_momentum()) as usize;
    let mut out = T::zero();
    for (a, ca) in ga.primitives() {
        for (b, cb) in gb.primitives() {
            let e = tables(la, lb, 0, a, b, ab);
            let p = a + b;
            let pc_center = product_center(a, &ga.center, b, &gb.center);
            let mut prim = T::zero();
            for &(z, c) in charges {
                let r = CoulombTable::new(l_max, p, separation(&pc_center, &c));
                let mut acc = T::zero();
                for t in 0..=(la[0] + lb[0]) as usize {
                    let ex = e[0].get(la[0] as usize, lb[0] as usize, t);
                    for u in 0..=(la[1] + lb[1]) as usize {
                        let ey = e[1].get(la[1] as usize, lb[1] as usize, u);
                        for v in 0..=(la[2] + lb[2]) as usize {
                            let ez = e[2].get(la[2] as usize, lb[2] as usize, v);
                            acc += ex * ey * ez * r.get(t, u, v);
                        }
                    }
                }
                prim -= z * acc;
            }
            out += ca * cb * T::lit(2.0) * T::PI() / p * prim;
        }
    }
    out
}

/// Precomputed primitive-pair data for one contracted bra or ket pair.
#[derive(Debug, Clone)]
pub(crate) struct PairData<T> {
    l_total: usize,
    prims: Vec<PrimitivePair<T>>,
}

#[derive(Debug, Clone)]
struct PrimitivePair<T> {
    p: T,
    center: [T; 3],
    coef: T,
    /// Nonzero Hermite products E_t E_u E_v.
    hermite: Vec<([usize; 3], T)>,
}

impl<T: Real> PairData<T> {
    pub fn new(ga: &ContractedGaussian<T>, gb: &ContractedGaussian<T>) -> Self {
        let ab = separation(&ga.center, &gb.center);
        let (la, lb) = (ga.angular_momentum, gb.angular_momentum);
        let mut prims = Vec::new();
        for (a, ca) in ga.primitives() {
            for (b, cb) in gb.primitives() {
                let e = tables(la, lb, 0, a, b, ab);
                let mut hermite = Vec::new();
                for t in 0..=(la[0] + lb[0]) as usize {
                    let ex = e[0].get(la[0] as usize, lb[0] as usize, t);
                    for u in 0..=(la[1] + lb[1]) as usize {
                        let ey = e[1].get(la[1] as usize, lb[1] as usize, u);
                        for v in 0..=(la[2] + lb[2]) as usize {
                            let ez = e[2].get(la[2] as usize, lb[2] as usize, v);
                            let val = ex * ey * ez;
                            if val != T::zero() {
                                hermite.push(([t, u, v], val));
                            }
                        }
                    }
                }
                prims.push(PrimitivePair {
                    p: a + b,
                    center: product_center(a, &ga.center, b, &gb.center),
                    coef: ca * cb,
                    hermite,
                });
            }
        }
        Self {
            l_total: (ga.total_angular_momentum() + gb.total_angular_momentum()) as usize,
            prims,
        }
    }
}

/// (ab|cd) in chemists' notation from precomputed bra and ket pairs.
pub(crate) fn contracted_eri<T: Real>(bra: &PairData<T>, ket: &PairData<T>) -> T {
    let l_max = bra.l_total + ket.l_total;
    let prefactor = T::lit(2.0) * T::PI().powf(T::lit(2.5));
    let mut out = T::zero();
    for left in &bra.prims {
        for right in &ket.prims {
            let p = left.p;
            let q = right.p;
            let alpha = p * q / (p + q);
            let r = CoulombTable::new(l_max, alpha, separation(&left.center, &right.center));
            let mut acc = T::zero();
            for &([t, u, v], el) in &left.hermite {
                for &([tau, nu, phi], er) in &right.hermite {
                    let sign = if (tau + nu + phi) % 2 == 0 { T::one() } else { -T::one() };
                    acc += el * er * sign * r.get(t + tau, u + nu, v + phi);
                }
            }
            out += left.coef * right.coef * prefactor / (p * q * (p + q).sqrt()) * acc;
        }
    }
    out
}
