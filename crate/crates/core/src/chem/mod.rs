//! Molecular geometry, element data and basis-set construction.
//!
//! Everything is in atomic units: lengths in Bohr, energies in Hartree.

pub mod basis;
pub mod elements;
pub mod library;

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use basis::{load_basis, ContractedGaussian};

/// Bohr radius in Ångström (CODATA 2018).
pub const BOHR_RADIUS_ANGSTROM: f64 = 0.529177210903;

#[derive(Debug, Clone, PartialEq)]
pub struct Atom<T> {
    pub symbol: String,
    pub atomic_number: u32,
    /// Position in Bohr.
    pub position: [T; 3],
}

impl<T: Real> Atom<T> {
    /// Builds an atom from its symbol, checking it against the element table.
    pub fn new(symbol: &str, position: [T; 3]) -> Result<Self> {
        let z = elements::atomic_number(symbol)
            .ok_or_else(|| Error::UnknownElement(symbol.to_string()))?;
        Ok(Self {
            symbol: elements::symbol(z).unwrap().to_string(),
            atomic_number: z,
            position,
        })
    }

    pub fn charge(&self) -> T {
        T::from_u32(self.atomic_number).unwrap()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Molecule<T> {
    pub atoms: Vec<Atom<T>>,
    pub charge: i32,
    pub multiplicity: u32,
}

impl<T: Real> Molecule<T> {
    pub fn new(atoms: Vec<Atom<T>>, charge: i32, multiplicity: u32) -> Result<Self> {
        let mol = Self {
            atoms,
            charge,
            multiplicity,
        };
        mol.validate()?;
        Ok(mol)
    }

    /// Checks electron count, multiplicity and distinct positions.
    pub fn validate(&self) -> Result<()> {
        if self.multiplicity < 1 {
            return Err(Error::InvalidMolecule("multiplicity must be at least 1".into()));
        }
        self.n_electrons()?;
        for i in 0..self.atoms.len() {
            for j in (i + 1)..self.atoms.len() {
                if distance(&self.atoms[i].position, &self.atoms[j].position) == T::zero() {
                    return Err(Error::CoincidentAtoms(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn with_charge(mut self, charge: i32) -> Result<Self> {
        self.charge = charge;
        self.validate()?;
        Ok(self)
    }

    pub fn with_multiplicity(mut self, multiplicity: u32) -> Result<Self> {
        self.multiplicity = multiplicity;
        self.validate()?;
        Ok(self)
    }

    /// Σ Z − charge.
    pub fn n_electrons(&self) -> Result<usize> {
        let nuclear: i64 = self.atoms.iter().map(|a| a.atomic_number as i64).sum();
        let n = nuclear - self.charge as i64;
        usize::try_from(n)
            .map_err(|_| Error::InvalidMolecule(format!("negative electron count {n}")))
    }

    /// Hill-order formula, e.g. `CH4`, `H2O`, `LiH`.
    pub fn formula(&self) -> String {
        let mut counts: std::collections::BTreeMap<&str, usize> = Default::default();
        for a in &self.atoms {
            *counts.entry(a.symbol.as_str()).or_default() += 1;
        }
        let mut out = String::new();
        let mut push = |sym: &str, n: usize| {
            out.push_str(sym);
            if n > 1 {
                out.push_str(&n.to_string());
            }
        };
        if let Some(&c) = counts.get("C") {
            push("C", c);
            if let Some(&h) = counts.get("H") {
                push("H", h);
            }
            for (sym, &n) in &counts {
                if *sym != "C" && *sym != "H" {
                    push(sym, n);
                }
            }
        } else {
            for (sym, &n) in &counts {
                push(sym, n);
            }
        }
        out
    }

    /// Applies `r -> rotation·r + shift` to every atom.
    pub fn transformed(&self, rotation: &[[T; 3]; 3], shift: [T; 3]) -> Self {
        let mut out = self.clone();
        for atom in &mut out.atoms {
            let p = atom.position;
            for (i, row) in rotation.iter().enumerate() {
                atom.position[i] = row[0] * p[0] + row[1] * p[1] + row[2] * p[2] + shift[i];
            }
        }
        out
    }
}

pub(crate) fn distance<T: Real>(a: &[T; 3], b: &[T; 3]) -> T {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// Parses XYZ text (coordinates in Ångström) into a neutral singlet.
pub fn parse_xyz<T: Real>(text: &str) -> Result<Molecule<T>> {
    let mut lines = text.lines().enumerate();
    let (_, count_line) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let count: usize = count_line.trim().parse().map_err(|_| Error::Parse {
        line: 1,
        message: format!("expected atom count, found `{}`", count_line.trim()),
    })?;
    // comment line; may be absent when count is zero
    let _ = lines.next();

    let to_bohr = T::lit(1.0 / BOHR_RADIUS_ANGSTROM);
    let mut atoms = Vec::with_capacity(count);
    for (idx, line) in lines {
        if atoms.len() == count {
            if line.trim().is_empty() {
                continue;
            }
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("more atom lines than the declared count {count}"),
            });
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 4 {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected `symbol x y z`, found `{}`", line.trim()),
            });
        }
        let mut pos = [T::zero(); 3];
        for (k, field) in fields[1..4].iter().enumerate() {
            let x: f64 = field.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                message: format!("invalid coordinate `{field}`"),
            })?;
            pos[k] = T::lit(x) * to_bohr;
        }
        atoms.push(Atom::new(fields[0], pos)?);
    }
    if atoms.len() != count {
        return Err(Error::Parse {
            line: count + 2,
            message: format!("declared {count} atoms, found {}", atoms.len()),
        });
    }
    Molecule::new(atoms, 0, 1)
}

/// Nuclear repulsion energy Σ_{i<j} Z_i Z_j / |r_i − r_j| in Hartree.
pub fn nuclear_repulsion<T: Real>(mol: &Molecule<T>) -> Result<T> {
    let mut e = T::zero();
    for (i, a) in mol.atoms.iter().enumerate() {
        for (j, b) in mol.atoms.iter().enumerate().skip(i + 1) {
            let r = distance(&a.position, &b.position);
            if r == T::zero() {
                return Err(Error::CoincidentAtoms(i, j));
            }
            e += a.charge() * b.charge() / r;
        }
    }
    Ok(e)
}
