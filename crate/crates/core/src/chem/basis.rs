//! Contracted Cartesian Gaussians and the built-in STO-3G basis (H–Ar).

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::Molecule;

#[derive(Debug, Clone, PartialEq)]
pub struct ContractedGaussian<T> {
    /// Center in Bohr.
    pub center: [T; 3],
    /// Cartesian powers (l, m, n) of x, y, z.
    pub angular_momentum: [u32; 3],
    pub exponents: Vec<T>,
    pub coefficients: Vec<T>,
    /// Per-primitive factor, including the contraction renormalisation, so
    /// that the contracted function has unit self-overlap.
    pub normalization: Vec<T>,
}

impl<T: Real> ContractedGaussian<T> {
    /// Builds and normalises a contracted function.
    pub fn new(
        center: [T; 3],
        angular_momentum: [u32; 3],
        exponents: Vec<T>,
        coefficients: Vec<T>,
    ) -> Result<Self> {
        if exponents.is_empty() || exponents.len() != coefficients.len() {
            return Err(Error::InvalidConfig(format!(
                "contraction needs matching nonempty exponent/coefficient lists ({} vs {})",
                exponents.len(),
                coefficients.len()
            )));
        }
        if exponents.iter().any(|&a| !(a > T::zero())) {
            return Err(Error::InvalidConfig("Gaussian exponents must be positive".into()));
        }
        let mut normalization: Vec<T> = exponents
            .iter()
            .map(|&a| primitive_norm(a, angular_momentum))
            .collect();
        let mut s = T::zero();
        for (i, (&a, &ca)) in exponents.iter().zip(&coefficients).enumerate() {
            for (j, (&b, &cb)) in exponents.iter().zip(&coefficients).enumerate() {
                s += ca * cb * normalization[i] * normalization[j]
                    * same_center_overlap(a, b, angular_momentum);
            }
        }
        let scale = T::one() / s.sqrt();
        for n in &mut normalization {
            *n *= scale;
        }
        Ok(Self {
            center,
            angular_momentum,
            exponents,
            coefficients,
            normalization,
        })
    }

    /// (exponent, coefficient × normalisation) pairs.
    pub fn primitives(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.exponents
            .iter()
            .zip(&self.coefficients)
            .zip(&self.normalization)
            .map(|((&a, &c), &n)| (a, c * n))
    }

    pub fn total_angular_momentum(&self) -> u32 {
        self.angular_momentum.iter().sum()
    }

    /// Value of the function at `r` (Bohr).
    pub fn value(&self, r: [T; 3]) -> T {
        let d = [r[0] - self.center[0], r[1] - self.center[1], r[2] - self.center[2]];
        let r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
        let mut angular = T::one();
        for k in 0..3 {
            angular *= d[k].powi(self.angular_momentum[k] as i32);
        }
        angular * self.primitives().map(|(a, c)| c * (-a * r2).exp()).sum::<T>()
    }
}

fn double_factorial(n: i64) -> f64 {
    let mut out = 1.0;
    let mut k = n;
    while k > 1 {
        out *= k as f64;
        k -= 2;
    }
    out
}

/// Normalisation of x^l y^m z^n exp(−α r²).
pub(crate) fn primitive_norm<T: Real>(alpha: T, lmn: [u32; 3]) -> T {
    let l = lmn.iter().sum::<u32>();
    let denom: f64 = lmn.iter().map(|&k| double_factorial(2 * k as i64 - 1)).product();
    let two_a_over_pi = T::lit(2.0) * alpha / T::PI();
    two_a_over_pi.powf(T::lit(0.75)) * (T::lit(4.0) * alpha).powf(T::lit(l as f64 / 2.0))
        / T::lit(denom.sqrt())
}

/// Overlap of two unnormalised primitives sharing center and powers.
fn same_center_overlap<T: Real>(a: T, b: T, lmn: [u32; 3]) -> T {
    let p = a + b;
    let mut s = (T::PI() / p).powf(T::lit(1.5));
    for &k in &lmn {
        s *= T::lit(double_factorial(2 * k as i64 - 1)) / (T::lit(2.0) * p).powi(k as i32);
    }
    s
}

#[derive(Debug, Clone, Copy)]
enum ShellKind {
    /// 1s shell.
    Core,
    /// 2sp shell.
    Second,
    /// 3sp shell.
    Third,
}

// Universal STO-3G least-squares expansions for unit Slater exponent; the
// per-element exponents are these scaled by ζ².
const EXP_1S: [f64; 3] = [2.227660584, 0.4057711562, 0.1098175104];
const COEF_1S: [f64; 3] = [0.1543289673, 0.5353281423, 0.4446345422];
const EXP_2SP: [f64; 3] = [0.9942027297, 0.2310313333, 0.07513856000];
const COEF_2S: [f64; 3] = [-0.09996722919, 0.3995128261, 0.7001154689];
const COEF_2P: [f64; 3] = [0.1559162750, 0.6076837186, 0.3919573931];
const EXP_3SP: [f64; 3] = [0.4828540805, 0.1347150629, 0.05272656259];
const COEF_3S: [f64; 3] = [-0.2196203690, 0.2255954336, 0.9003984260];
const COEF_3P: [f64; 3] = [0.01058760429, 0.5951670053, 0.4620010120];

/// Slater exponents ζ per shell, H through Ar.
const STO3G_ZETA: [&[(ShellKind, f64)]; 18] = [
    &[(ShellKind::Core, 1.24)],
    &[(ShellKind::Core, 1.69)],
    &[(ShellKind::Core, 2.69), (ShellKind::Second, 0.80)],
    &[(ShellKind::Core, 3.68), (ShellKind::Second, 1.15)],
    &[(ShellKind::Core, 4.68), (ShellKind::Second, 1.50)],
    &[(ShellKind::Core, 5.67), (ShellKind::Second, 1.72)],
    &[(ShellKind::Core, 6.67), (ShellKind::Second, 1.95)],
    &[(ShellKind::Core, 7.66), (ShellKind::Second, 2.25)],
    &[(ShellKind::Core, 8.65), (ShellKind::Second, 2.55)],
    &[(ShellKind::Core, 9.64), (ShellKind::Second, 2.88)],
    &[(ShellKind::Core, 10.61), (ShellKind::Second, 3.48), (ShellKind::Third, 1.75)],
    &[(ShellKind::Core, 11.59), (ShellKind::Second, 3.90), (ShellKind::Third, 1.70)],
    &[(ShellKind::Core, 12.56), (ShellKind::Second, 4.36), (ShellKind::Third, 1.70)],
    &[(ShellKind::Core, 13.53), (ShellKind::Second, 4.83), (ShellKind::Third, 1.75)],
    &[(ShellKind::Core, 14.50), (ShellKind::Second, 5.31), (ShellKind::Third, 1.90)],
    &[(ShellKind::Core, 15.47), (ShellKind::Second, 5.79), (ShellKind::Third, 2.05)],
    &[(ShellKind::Core, 16.43), (ShellKind::Second, 6.26), (ShellKind::Third, 2.10)],
    &[(ShellKind::Core, 17.40), (ShellKind::Second, 6.74), (ShellKind::Third, 2.33)],
];

const P_COMPONENTS: [[u32; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

/// Basis functions for `mol`. Order: atoms as given; per atom all s
/// functions, then all p functions (x, y, z within a shell).
pub fn load_basis<T: Real>(name: &str, mol: &Molecule<T>) -> Result<Vec<ContractedGaussian<T>>> {
    if !name.eq_ignore_ascii_case("sto-3g") {
        return Err(Error::UnsupportedBasis(name.to_string()));
    }
    let mut out = Vec::new();
    for atom in &mol.atoms {
        let shells = STO3G_ZETA
            .get(atom.atomic_number as usize - 1)
            .ok_or_else(|| Error::ElementNotInBasis {
                symbol: atom.symbol.clone(),
                basis: "sto-3g".into(),
            })?;
        let scaled = |base: &[f64; 3], zeta: f64| -> Vec<T> {
            base.iter().map(|&e| T::lit(e * zeta * zeta)).collect()
        };
        let lit = |c: &[f64; 3]| -> Vec<T> { c.iter().map(|&x| T::lit(x)).collect() };
        let mut p_shells = Vec::new();
        for &(kind, zeta) in shells.iter() {
            match kind {
                ShellKind::Core => out.push(ContractedGaussian::new(
                    atom.position,
                    [0, 0, 0],
                    scaled(&EXP_1S, zeta),
                    lit(&COEF_1S),
                )?),
                ShellKind::Second => {
                    out.push(ContractedGaussian::new(
                        atom.position,
                        [0, 0, 0],
                        scaled(&EXP_2SP, zeta),
                        lit(&COEF_2S),
                    )?);
                    p_shells.push((scaled(&EXP_2SP, zeta), lit(&COEF_2P)));
                }
                ShellKind::Third => {
                    out.push(ContractedGaussian::new(
                        atom.position,
                        [0, 0, 0],
                        scaled(&EXP_3SP, zeta),
                        lit(&COEF_3S),
                    )?);
                    p_shells.push((scaled(&EXP_3SP, zeta), lit(&COEF_3P)));
                }
            }
        }
        for (exps, coefs) in p_shells {
            for lmn in P_COMPONENTS {
                out.push(ContractedGaussian::new(atom.position, lmn, exps.clone(), coefs.clone())?);
            }
        }
    }
    Ok(out)
}
