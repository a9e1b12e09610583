//! Geometries shipped with the toolkit, with their default active spaces.
//!
//! Positions are experimental equilibrium structures; each XYZ file in the
//! workspace `molecules/` directory states its source values on the
//! comment line.

use crate::scalar::Real;

use super::{parse_xyz, Atom, Molecule};

pub const H2_XYZ: &str = include_str!("../../../../molecules/h2.xyz");
pub const HEH_CATION_XYZ: &str = include_str!("../../../../molecules/heh+.xyz");
pub const LIH_XYZ: &str = include_str!("../../../../molecules/lih.xyz");
pub const H2O_XYZ: &str = include_str!("../../../../molecules/h2o.xyz");
pub const NH3_XYZ: &str = include_str!("../../../../molecules/nh3.xyz");
pub const CH4_XYZ: &str = include_str!("../../../../molecules/ch4.xyz");
pub const CO2_XYZ: &str = include_str!("../../../../molecules/co2.xyz");

/// Bond length (Bohr) of the reference H₂ test system.
pub const H2_BOND_BOHR: f64 = 1.388861;
/// Bond length (Bohr) of the reference HeH⁺ test system.
pub const HEH_BOND_BOHR: f64 = 1.4632;

fn diatomic<T: Real>(a: &str, b: &str, r_bohr: f64, charge: i32) -> Molecule<T> {
    Molecule::new(
        vec![
            Atom::new(a, [T::zero(); 3]).unwrap(),
            Atom::new(b, [T::zero(), T::zero(), T::lit(r_bohr)]).unwrap(),
        ],
        charge,
        1,
    )
    .unwrap()
}

/// H₂ at 1.388861 Bohr.
pub fn hydrogen<T: Real>() -> Molecule<T> {
    diatomic("H", "H", H2_BOND_BOHR, 0)
}

/// HeH⁺ at 1.4632 Bohr.
pub fn helium_hydride_cation<T: Real>() -> Molecule<T> {
    diatomic("He", "H", HEH_BOND_BOHR, 1)
}

pub fn helium<T: Real>() -> Molecule<T> {
    Molecule::new(vec![Atom::new("He", [T::zero(); 3]).unwrap()], 0, 1).unwrap()
}

pub fn lithium_hydride<T: Real>() -> Molecule<T> {
    parse_xyz(LIH_XYZ).unwrap()
}

pub fn water<T: Real>() -> Molecule<T> {
    parse_xyz(H2O_XYZ).unwrap()
}

pub fn ammonia<T: Real>() -> Molecule<T> {
    parse_xyz(NH3_XYZ).unwrap()
}

pub fn methane<T: Real>() -> Molecule<T> {
    parse_xyz(CH4_XYZ).unwrap()
}

pub fn carbon_dioxide<T: Real>() -> Molecule<T> {
    parse_xyz(CO2_XYZ).unwrap()
}

/// Default (active electrons, active spatial orbitals) by formula, for the
/// molecules whose full spin-orbital space would exceed a desk-scale
/// register. `None` means "use the full space".
pub fn default_active_space(formula: &str) -> Option<(usize, usize)> {
    match formula {
        "H2" => Some((2, 2)),
        "HLi" => Some((2, 5)),
        "H2O" | "H3N" | "CH4" | "CO2" => Some((8, 6)),
        _ => None,
    }
}

/// A named molecule with its default active space.
#[derive(Debug, Clone)]
pub struct ShippedSystem<T> {
    pub name: &'static str,
    pub molecule: Molecule<T>,
    pub active_space: Option<(usize, usize)>,
}

/// The molecules the end-to-end comparisons run on.
pub fn shipped_systems<T: Real>() -> Vec<ShippedSystem<T>> {
    let entry = |name, molecule: Molecule<T>| {
        let active_space = default_active_space(&molecule.formula());
        ShippedSystem {
            name,
            molecule,
            active_space,
        }
    };
    vec![
        entry("H2", hydrogen()),
        entry("LiH", lithium_hydride()),
        entry("H2O", water()),
        entry("NH3", ammonia()),
        entry("CH4", methane()),
        entry("CO2", carbon_dioxide()),
    ]
}
