//! Closed-shell restricted Hartree-Fock.

use std::collections::VecDeque;

use ndarray::{s, Array1, Array2, Array4};

use crate::error::{Error, Result};
use crate::integrals::IntegralSet;
use crate::linalg::{inverse_sqrt_spd, solve, symmetric_eigen};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScfConfig {
    pub max_iterations: usize,
    pub energy_tol: f64,
    pub density_tol: f64,
    /// Number of stored Fock/error pairs; 0 turns DIIS off.
    pub diis_depth: usize,
}

impl Default for ScfConfig {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            energy_tol: 1e-10,
            density_tol: 1e-8,
            diis_depth: 8,
        }
    }
}

impl ScfConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be at least 1".into()));
        }
        if !(self.energy_tol > 0.0 && self.density_tol > 0.0) {
            return Err(Error::InvalidConfig("SCF tolerances must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct ScfResult<T> {
    /// Orbitals as columns, ascending in energy.
    pub mo_coefficients: Array2<T>,
    pub orbital_energies: Array1<T>,
    pub density: Array2<T>,
    pub e_electronic: T,
    pub e_total: T,
    pub iterations: usize,
    pub converged: bool,
    /// Total energy at each iteration.
    pub history: Vec<T>,
    pub n_occupied: usize,
}

/// P = 2 Σ_{i < n_occ} C[:, i] C[:, i]ᵀ.
pub fn density_matrix<T: Real>(c: &Array2<T>, n_occ: usize) -> Result<Array2<T>> {
    let n = c.ncols();
    if n_occ == 0 || n_occ > n {
        return Err(Error::InvalidElectronCount(format!(
            "{n_occ} occupied orbitals requested from {n}"
        )));
    }
    let occ = c.slice(s![.., ..n_occ]);
    Ok(occ.dot(&occ.t()) * T::lit(2.0))
}

fn fock<T: Real>(h: &Array2<T>, eri: &Array4<T>, p: &Array2<T>) -> Array2<T> {
    let n = h.nrows();
    let half = T::lit(0.5);
    let mut f = h.clone();
    for m in 0..n {
        for v in 0..=m {
            let mut g = T::zero();
            for l in 0..n {
                for s in 0..n {
                    g += p[[l, s]] * (eri[[m, v, l, s]] - half * eri[[m, l, v, s]]);
                }
            }
            f[[m, v]] += g;
            if v != m {
                f[[v, m]] += g;
            }
        }
    }
    f
}

fn electronic_energy<T: Real>(p: &Array2<T>, h: &Array2<T>, f: &Array2<T>) -> T {
    let mut e = T::zero();
    for ((&pv, &hv), &fv) in p.iter().zip(h.iter()).zip(f.iter()) {
        e += pv * (hv + fv);
    }
    e * T::lit(0.5)
}

/// Diagonalises `f` in the orthogonal basis defined by `x = S^{-1/2}`.
fn roothaan_step<T: Real>(f: &Array2<T>, x: &Array2<T>) -> Result<(Array2<T>, Array1<T>)> {
    let fp = x.t().dot(f).dot(x);
    let eig = symmetric_eigen(&fp)?;
    Ok((x.dot(&eig.vectors), eig.values))
}

fn rms<T: Real>(a: &Array2<T>) -> T {
    let sq: T = a.iter().map(|&v| v * v).sum();
    (sq / T::from_usize_lossy(a.len().max(1))).sqrt()
}

struct Diis<T> {
    depth: usize,
    focks: VecDeque<Array2<T>>,
    errors: VecDeque<Array2<T>>,
}

impl<T: Real> Diis<T> {
    fn new(depth: usize) -> Self {
        Self {
            depth,
            focks: VecDeque::new(),
            errors: VecDeque::new(),
        }
    }

    fn extrapolate(&mut self, f: Array2<T>, err: Array2<T>) -> Array2<T> {
        if self.depth == 0 {
            return f;
        }
        if self.focks.len() == self.depth {
            self.focks.pop_front();
            self.errors.pop_front();
        }
        self.focks.push_back(f);
        self.errors.push_back(err);
        let m = self.focks.len();
        if m < 2 {
            return self.focks[m - 1].clone();
        }
        let mut b = Array2::zeros((m + 1, m + 1));
        for i in 0..m {
            for j in 0..=i {
                let dot: T = self.errors[i]
                    .iter()
                    .zip(self.errors[j].iter())
                    .map(|(&a, &b)| a * b)
                    .sum();
                b[[i, j]] = dot;
                b[[j, i]] = dot;
            }
            b[[i, m]] = -T::one();
            b[[m, i]] = -T::one();
        }
        let mut rhs = Array1::zeros(m + 1);
        rhs[m] = -T::one();
        match solve(&b, &rhs) {
            Ok(w) if w.iter().all(|v| v.is_finite()) => {
                let mut out = Array2::zeros(self.focks[0].raw_dim());
                for (wi, fi) in w.iter().zip(self.focks.iter()) {
                    out.scaled_add(*wi, fi);
                }
                out
            }
            // ill-conditioned subspace: restart from the newest pair
            _ => {
                let f = self.focks.pop_back().expect("nonempty");
                let e = self.errors.pop_back().expect("nonempty");
                self.focks.clear();
                self.errors.clear();
                self.focks.push_back(f.clone());
                self.errors.push_back(e);
                f
            }
        }
    }
}

/// Runs RHF from the core-Hamiltonian guess.
///
/// Non-convergence is not an error: the last iterate is returned with
/// `converged = false`.
pub fn run_rhf<T: Real>(ints: &IntegralSet<T>, n_electrons: usize, cfg: &ScfConfig) -> Result<ScfResult<T>> {
    cfg.validate()?;
    let n = ints.n_basis;
    if !n_electrons.is_multiple_of(2) {
        return Err(Error::InvalidElectronCount(format!(
            "restricted Hartree-Fock needs an even electron count, got {n_electrons}"
        )));
    }
    if n_electrons == 0 || n_electrons > 2 * n {
        return Err(Error::InvalidElectronCount(format!(
            "{n_electrons} electrons do not fit in {n} spatial orbitals"
        )));
    }
    let n_occ = n_electrons / 2;
    let x = inverse_sqrt_spd(&ints.overlap, T::lit(1e-10))?;
    let h = ints.core_hamiltonian();
    let eri = ints.eri.to_dense();
    let s_mat = &ints.overlap;

    let (mut c, mut eps) = roothaan_step(&h, &x)?;
    let mut p = density_matrix(&c, n_occ)?;
    let mut diis = Diis::new(cfg.diis_depth);
    let mut history = Vec::new();
    let mut e_prev: Option<T> = None;
    let mut converged = false;
    let mut iterations = 0;

    let e_tol = T::lit(cfg.energy_tol);
    let d_tol = T::lit(cfg.density_tol);
    while iterations < cfg.max_iterations {
        iterations += 1;
        let f = fock(&h, &eri, &p);
        let e = electronic_energy(&p, &h, &f);
        history.push(e + ints.h0);

        let fps = f.dot(&p).dot(s_mat);
        let err = x.t().dot(&(&fps - &fps.t())).dot(&x);
        let f_used = diis.extrapolate(f, err);
        let (c_new, eps_new) = roothaan_step(&f_used, &x)?;
        let p_new = density_matrix(&c_new, n_occ)?;
        let d_rms = rms(&(&p_new - &p));
        let de = e_prev.map(|ep| (e - ep).abs());
        c = c_new;
        eps = eps_new;
        p = p_new;
        e_prev = Some(e);
        if matches!(de, Some(de) if de < e_tol) && d_rms < d_tol {
            converged = true;
            break;
        }
    }

    let f = fock(&h, &eri, &p);
    let e_electronic = electronic_energy(&p, &h, &f);
    Ok(ScfResult {
        mo_coefficients: c,
        orbital_energies: eps,
        density: p,
        e_electronic,
        e_total: e_electronic + ints.h0,
        iterations,
        converged,
        history,
        n_occupied: n_occ,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chem::{library, load_basis, Molecule};
    use crate::integrals::compute_integrals;

    fn integrals(mol: &Molecule<f64>) -> IntegralSet<f64> {
        compute_integrals(&load_basis("sto-3g", mol).unwrap(), mol).unwrap()
    }

    #[test]
    fn density_from_identity() {
        let c = Array2::<f64>::eye(2);
        let p = density_matrix(&c, 1).unwrap();
        assert_eq!(p, ndarray::array![[2.0, 0.0], [0.0, 0.0]]);
        assert!(density_matrix(&c, 0).is_err());
        assert!(density_matrix(&c, 3).is_err());
    }

    #[test]
    fn hydrogen_energy_and_symmetry() {
        let ints = integrals(&library::hydrogen());
        let r = run_rhf(&ints, 2, &ScfConfig::default()).unwrap();
        assert!(r.converged);
        assert!((r.e_total - (-1.117001)).abs() < 2e-6, "{}", r.e_total);
        assert!((r.density[[0, 0]] - r.density[[1, 1]]).abs() < 1e-8);
        assert!((r.e_total - r.e_electronic - ints.h0).abs() < 1e-14);
    }

    #[test]
    fn two_basis_hand_solution() {
        // In a two-function homonuclear basis the occupied orbital is fixed by
        // symmetry: σ = (χ₀ + χ₁)/√(2 + 2S). The energy is then closed form.
        let ints = integrals(&library::hydrogen());
        let s = ints.overlap[[0, 1]];
        let h = ints.core_hamiltonian();
        let e = &ints.eri;
        let c2 = 1.0 / (2.0 + 2.0 * s);
        let h_ss = c2 * (h[[0, 0]] + h[[1, 1]] + 2.0 * h[[0, 1]]);
        let mut j = 0.0;
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        j += e.get(a, b, c, d);
                    }
                }
            }
        }
        let hand = 2.0 * h_ss + c2 * c2 * j + ints.h0;
        let r = run_rhf(&ints, 2, &ScfConfig::default()).unwrap();
        assert!((r.e_total - hand).abs() < 1e-10);
    }

    #[test]
    fn published_minimal_basis_hydrogen() {
        // Szabo & Ostlund, H2 at 1.4 bohr: −1.1167 hartree
        let mol = Molecule::<f64>::new(
            vec![
                crate::chem::Atom::new("H", [0.0; 3]).unwrap(),
                crate::chem::Atom::new("H", [0.0, 0.0, 1.4]).unwrap(),
            ],
            0,
            1,
        )
        .unwrap();
        let r = run_rhf(&integrals(&mol), 2, &ScfConfig::default()).unwrap();
        assert!((r.e_total + 1.1167).abs() < 5e-5, "{}", r.e_total);
    }

    #[test]
    fn helium_atom() {
        let ints = integrals(&library::helium());
        let r = run_rhf(&ints, 2, &ScfConfig::default()).unwrap();
        assert!(r.converged && r.iterations <= 10 && r.e_total < 0.0);
    }

    #[test]
    fn odd_electron_count_rejected() {
        let ints = integrals(&library::hydrogen());
        assert!(matches!(
            run_rhf(&ints, 3, &ScfConfig::default()),
            Err(Error::InvalidElectronCount(_))
        ));
        assert!(run_rhf(&ints, 6, &ScfConfig::default()).is_err());
    }

    #[test]
    fn orthonormal_idempotent_water() {
        let mol = library::water::<f64>();
        let ints = integrals(&mol);
        let r = run_rhf(&ints, mol.n_electrons().unwrap(), &ScfConfig::default()).unwrap();
        assert!(r.converged);
        let c = &r.mo_coefficients;
        let ctsc = c.t().dot(&ints.overlap).dot(c);
        for i in 0..ints.n_basis {
            for j in 0..ints.n_basis {
                let id = if i == j { 1.0 } else { 0.0 };
                assert!((ctsc[[i, j]] - id).abs() < 1e-8);
            }
        }
        let psp = r.density.dot(&ints.overlap).dot(&r.density);
        for (a, b) in psp.iter().zip(r.density.iter()) {
            assert!((a - 2.0 * b).abs() < 1e-6);
        }
        let tr: f64 = r.density.dot(&ints.overlap).diag().sum();
        assert!((tr - 10.0).abs() < 1e-9);
    }

    #[test]
    fn plain_roothaan_is_monotone() {
        let cfg = ScfConfig {
            diis_depth: 0,
            ..ScfConfig::default()
        };
        for mol in [library::hydrogen::<f64>(), library::helium_hydride_cation()] {
            let ints = integrals(&mol);
            let r = run_rhf(&ints, 2, &cfg).unwrap();
            assert!(r.converged);
            for w in r.history.windows(2) {
                assert!(w[1] <= w[0] + 1e-12, "{:?}", r.history);
            }
        }
    }

    #[test]
    fn rotation_invariance() {
        let mol = library::ammonia::<f64>();
        let (a, b) = (0.7f64, -1.3f64);
        let rot = [
            [a.cos(), -a.sin(), 0.0],
            [a.sin() * b.cos(), a.cos() * b.cos(), -b.sin()],
            [a.sin() * b.sin(), a.cos() * b.sin(), b.cos()],
        ];
        let moved = mol.transformed(&rot, [0.3, -2.0, 1.1]);
        let ne = mol.n_electrons().unwrap();
        let e1 = run_rhf(&integrals(&mol), ne, &ScfConfig::default()).unwrap().e_total;
        let e2 = run_rhf(&integrals(&moved), ne, &ScfConfig::default()).unwrap().e_total;
        assert!((e1 - e2).abs() < 1e-8);
    }

    #[test]
    fn iteration_cap_reports_unconverged() {
        let ints = integrals(&library::water());
        let cfg = ScfConfig {
            max_iterations: 2,
            ..ScfConfig::default()
        };
        let r = run_rhf(&ints, 10, &cfg).unwrap();
        assert!(!r.converged && r.iterations == 2 && r.history.len() == 2);
    }

    #[test]
    fn single_precision_hydrogen() {
        let mol = library::hydrogen::<f32>();
        let ints = compute_integrals(&load_basis("sto-3g", &mol).unwrap(), &mol).unwrap();
        let cfg = ScfConfig {
            energy_tol: 1e-6,
            density_tol: 1e-5,
            ..ScfConfig::default()
        };
        let r = run_rhf(&ints, 2, &cfg).unwrap();
        assert!(r.converged && (r.e_total + 1.117001).abs() < 1e-4, "{}", r.e_total);
    }
}
