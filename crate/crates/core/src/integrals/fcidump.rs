//! Molecular-orbital integrals and their FCIDUMP text form.
//!
//! Layout: a `&FCI NORB=…,NELEC=…,MS2=…,` namelist header closed by `&END`,
//! then one `value i j k l` record per line with 1-based orbital indices in
//! chemists' notation. One-body records have k = l = 0 and the core energy
//! is the record with all indices 0.

use std::fmt::Write as _;

use ndarray::{Array2, Array4};

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::IntegralSet;

/// Spatial MO integrals: h_pq and (pq|rs).
#[derive(Debug, Clone, PartialEq)]
pub struct MoIntegrals<T> {
    pub n_orbitals: usize,
    pub n_electrons: usize,
    /// 2·S_z, zero for closed shells.
    pub ms2: i32,
    /// Nuclear repulsion plus any frozen-core contribution.
    pub core_energy: T,
    pub one_body: Array2<T>,
    /// (pq|rs), chemists' notation.
    pub two_body: Array4<T>,
}

/// Rotates AO integrals into the MO basis defined by the columns of `c`.
/// The quartic transform runs as four sequential one-index contractions.
pub fn mo_integrals<T: Real>(ints: &IntegralSet<T>, c: &Array2<T>, n_electrons: usize) -> Result<MoIntegrals<T>> {
    let n_ao = ints.n_basis;
    if c.nrows() != n_ao {
        return Err(Error::DimensionMismatch(format!(
            "coefficient matrix has {} rows for {} basis functions",
            c.nrows(),
            n_ao
        )));
    }
    let n_mo = c.ncols();
    let one_body = c.t().dot(&ints.core_hamiltonian()).dot(c);

    let ao = ints.eri.to_dense();
    // (μν|λσ) → (pν|λσ) → (pq|λσ) → (pq|rσ) → (pq|rs)
    let mut t1 = Array4::<T>::zeros((n_mo, n_ao, n_ao, n_ao));
    for p in 0..n_mo {
        for mu in 0..n_ao {
            let cmp = c[[mu, p]];
            if cmp == T::zero() {
                continue;
            }
            for nu in 0..n_ao {
                for la in 0..n_ao {
                    for si in 0..n_ao {
                        t1[[p, nu, la, si]] += cmp * ao[[mu, nu, la, si]];
                    }
                }
            }
        }
    }
    let mut t2 = Array4::<T>::zeros((n_mo, n_mo, n_ao, n_ao));
    for p in 0..n_mo {
        for q in 0..n_mo {
            for nu in 0..n_ao {
                let cnq = c[[nu, q]];
                for la in 0..n_ao {
                    for si in 0..n_ao {
                        t2[[p, q, la, si]] += cnq * t1[[p, nu, la, si]];
                    }
                }
            }
        }
    }
    drop(t1);
    let mut t3 = Array4::<T>::zeros((n_mo, n_mo, n_mo, n_ao));
    for p in 0..n_mo {
        for q in 0..n_mo {
            for r in 0..n_mo {
                for la in 0..n_ao {
                    let clr = c[[la, r]];
                    for si in 0..n_ao {
                        t3[[p, q, r, si]] += clr * t2[[p, q, la, si]];
                    }
                }
            }
        }
    }
    drop(t2);
    let mut two_body = Array4::<T>::zeros((n_mo, n_mo, n_mo, n_mo));
    for p in 0..n_mo {
        for q in 0..n_mo {
            for r in 0..n_mo {
                for s in 0..n_mo {
                    let mut acc = T::zero();
                    for si in 0..n_ao {
                        acc += c[[si, s]] * t3[[p, q, r, si]];
                    }
                    two_body[[p, q, r, s]] = acc;
                }
            }
        }
    }

    Ok(MoIntegrals {
        n_orbitals: n_mo,
        n_electrons,
        ms2: 0,
        core_energy: ints.h0,
        one_body,
        two_body,
    })
}

impl<T: Real> MoIntegrals<T> {
    /// FCIDUMP text. Values below `threshold` in magnitude are skipped,
    /// except the core-energy record which is always written.
    pub fn to_fcidump(&self, threshold: f64) -> String {
        let n = self.n_orbitals;
        let mut out = String::new();
        let _ = writeln!(out, " &FCI NORB={},NELEC={},MS2={},", n, self.n_electrons, self.ms2);
        let _ = writeln!(out, "  ORBSYM={}", "1,".repeat(n));
        let _ = writeln!(out, "  ISYM=1,");
        let _ = writeln!(out, " &END");
        let keep = |v: T| v.as_f64().abs() > threshold;
        for i in 0..n {
            for j in 0..=i {
                for k in 0..n {
                    for l in 0..=k {
                        if i * (i + 1) / 2 + j < k * (k + 1) / 2 + l {
                            continue;
                        }
                        let v = self.two_body[[i, j, k, l]];
                        if keep(v) {
                            let _ = writeln!(out, "{:>24.16e} {:>4} {:>4} {:>4} {:>4}", v.as_f64(), i + 1, j + 1, k + 1, l + 1);
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..=i {
                let v = self.one_body[[i, j]];
                if keep(v) {
                    let _ = writeln!(out, "{:>24.16e} {:>4} {:>4} {:>4} {:>4}", v.as_f64(), i + 1, j + 1, 0, 0);
                }
            }
        }
        let _ = writeln!(out, "{:>24.16e} {:>4} {:>4} {:>4} {:>4}", self.core_energy.as_f64(), 0, 0, 0, 0);
        out
    }

    /// Parses FCIDUMP text, expanding the 8-fold (two-body) and 2-fold
    /// (one-body) permutational symmetry of real orbitals.
    pub fn from_fcidump(text: &str) -> Result<Self> {
        let upper = text.to_ascii_uppercase();
        let start = upper
            .find("&FCI")
            .ok_or_else(|| Error::Fcidump("missing &FCI header".into()))?;
        let (end, end_len) = ["&END", "/"]
            .iter()
            .filter_map(|tag| upper[start..].find(tag).map(|p| (start + p, tag.len())))
            .min_by_key(|&(p, _)| p)
            .ok_or_else(|| Error::Fcidump("unterminated header".into()))?;
        let header = &upper[start + 4..end];
        let field = |name: &str| -> Result<Option<i64>> {
            let Some(pos) = header.find(&format!("{name}=")) else {
                return Ok(None);
            };
            let rest = header[pos + name.len() + 1..].trim_start();
            let digits: String = rest
                .chars()
                .take_while(|ch| ch.is_ascii_digit() || *ch == '-')
                .collect();
            digits
                .parse()
                .map(Some)
                .map_err(|_| Error::Fcidump(format!("bad {name} value")))
        };
        let n = field("NORB")?.ok_or_else(|| Error::Fcidump("NORB missing".into()))? as usize;
        let nelec = field("NELEC")?.ok_or_else(|| Error::Fcidump("NELEC missing".into()))?;
        let ms2 = field("MS2")?.unwrap_or(0) as i32;
        if nelec < 0 {
            return Err(Error::Fcidump("negative NELEC".into()));
        }

        let mut one_body = Array2::zeros((n, n));
        let mut two_body = Array4::zeros((n, n, n, n));
        let mut core = T::zero();
        let body = &text[end + end_len..];
        for (lineno, line) in body.lines().enumerate() {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            if fields.len() != 5 {
                return Err(Error::Fcidump(format!("record {}: expected 5 fields", lineno + 1)));
            }
            let value: f64 = fields[0]
                .replace(['D', 'd'], "e")
                .parse()
                .map_err(|_| Error::Fcidump(format!("record {}: bad value", lineno + 1)))?;
            let mut idx = [0usize; 4];
            for (k, f) in fields[1..].iter().enumerate() {
                idx[k] = f
                    .parse()
                    .map_err(|_| Error::Fcidump(format!("record {}: bad index", lineno + 1)))?;
                if idx[k] > n {
                    return Err(Error::Fcidump(format!("record {}: index exceeds NORB", lineno + 1)));
                }
            }
            let v = T::lit(value);
            match idx {
                [0, 0, 0, 0] => core = v,
                [i, j, 0, 0] if i > 0 && j > 0 => {
                    one_body[[i - 1, j - 1]] = v;
                    one_body[[j - 1, i - 1]] = v;
                }
                [i, j, k, l] if i > 0 && j > 0 && k > 0 && l > 0 => {
                    let (i, j, k, l) = (i - 1, j - 1, k - 1, l - 1);
                    for (a, b, c, d) in [
                        (i, j, k, l),
                        (j, i, k, l),
                        (i, j, l, k),
                        (j, i, l, k),
                        (k, l, i, j),
                        (l, k, i, j),
                        (k, l, j, i),
                        (l, k, j, i),
                    ] {
                        two_body[[a, b, c, d]] = v;
                    }
                }
                // orbital-energy records (i 0 0 0) carry no Hamiltonian data
                [_, 0, 0, 0] => {}
                _ => return Err(Error::Fcidump(format!("record {}: unsupported index pattern", lineno + 1))),
            }
        }
        Ok(Self {
            n_orbitals: n,
            n_electrons: nelec as usize,
            ms2,
            core_energy: core,
            one_body,
            two_body,
        })
    }
}
