use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::reference::ReferenceEnergies;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActiveSpaceInfo {
    pub electrons: usize,
    pub orbitals: usize,
    pub frozen_orbitals: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodRow {
    pub method: String,
    /// Hartree.
    pub energy: f64,
    pub iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub evaluations: Option<usize>,
    pub converged: bool,
    /// Lowest shot-based estimate seen during a sampled VQE run. `energy`
    /// is then the exact expectation at the final parameters.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sampled_energy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExcitedEstimate {
    /// Marks these as a heuristic, not a computed spectrum.
    pub heuristic: bool,
    pub lambda: f64,
    /// E_k for k = 1..=K.
    pub energies: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub molecule: String,
    pub formula: String,
    pub basis: String,
    pub charge: i32,
    pub n_electrons: usize,
    pub n_basis: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub active_space: Option<ActiveSpaceInfo>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mapping: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n_qubits: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub optimizer: Option<String>,
    pub backend: String,
    pub seed: u64,
    pub rows: Vec<MethodRow>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub excited: Option<ExcitedEstimate>,
}

impl RunReport {
    pub fn row(&self, method: &str) -> Option<&MethodRow> {
        self.rows.iter().find(|r| r.method == method)
    }

    pub fn all_converged(&self) -> bool {
        self.rows.iter().all(|r| r.converged)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("method,energy,iterations,evaluations,converged\n");
        for r in &self.rows {
            let evals = r.evaluations.map(|e| e.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{},{},{},{},{}", r.method, r.energy, r.iterations, evals, r.converged);
        }
        out
    }
}

/// One energy at one bond length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub r_bohr: f64,
    pub method: String,
    pub energy: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub molecule: String,
    pub basis: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mapping: Option<String>,
    pub seed: u64,
    pub points: Vec<ScanPoint>,
}

impl ScanReport {
    pub fn all_converged(&self) -> bool {
        self.points.iter().all(|p| p.converged)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("r_bohr,method,energy\n");
        for p in &self.points {
            let _ = writeln!(out, "{},{},{}", p.r_bohr, p.method, p.energy);
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("{} bond scan ({})\n\n", self.molecule, self.basis);
        let _ = writeln!(out, "{:>10}  {:<6}  {:>16}", "r (Bohr)", "method", "energy (Ha)");
        for p in &self.points {
            let flag = if p.converged { "" } else { "  (not converged)" };
            let _ = writeln!(out, "{:>10.4}  {:<6}  {:>16.8}{flag}", p.r_bohr, p.method, p.energy);
        }
        out
    }
}

const METHOD_ORDER: [&str; 4] = ["hf", "dft", "vqe", "fci"];

fn reference_value(r: &ReferenceEnergies, method: &str) -> Option<f64> {
    match method {
        "hf" => Some(r.hf),
        "dft" => Some(r.dft),
        "vqe" => Some(r.vqe),
        _ => None,
    }
}

/// Aligned text table. With `reference`, a column of published values is
/// added, and methods this tool does not compute appear as reference-only
/// rows.
pub fn render_table(report: &RunReport, reference: Option<&ReferenceEnergies>) -> String {
    let mut out = String::new();
    let _ = write!(out, "{}  basis {}  charge {}", report.molecule, report.basis, report.charge);
    if let Some(a) = &report.active_space {
        let _ = write!(out, "  active space ({}e, {}o)", a.electrons, a.orbitals);
    }
    if let (Some(m), Some(q)) = (&report.mapping, report.n_qubits) {
        let _ = write!(out, "  {m} mapping, {q} qubits");
    }
    out.push('\n');
    out.push('\n');

    let mut header = format!("{:<8}{:>18}{:>12}{:>13}{:>11}", "method", "energy (Ha)", "iterations", "evaluations", "converged");
    if reference.is_some() {
        let _ = write!(header, "{:>17}", "reference (Ha)*");
    }
    out.push_str(header.trim_end());
    out.push('\n');

    for method in METHOD_ORDER {
        let ours = report.row(method);
        let theirs = reference.and_then(|r| reference_value(r, method));
        if ours.is_none() && theirs.is_none() {
            continue;
        }
        let mut line = format!("{:<8}", method.to_uppercase());
        match ours {
            Some(r) => {
                let evals = r.evaluations.map_or("-".to_string(), |e| e.to_string());
                let conv = if r.converged { "yes" } else { "no" };
                let _ = write!(line, "{:>18.8}{:>12}{:>13}{:>11}", r.energy, r.iterations, evals, conv);
            }
            None => {
                let _ = write!(line, "{:>18}{:>12}{:>13}{:>11}", "-", "-", "-", "-");
            }
        }
        if reference.is_some() {
            match theirs {
                Some(v) => {
                    let _ = write!(line, "{v:>17.4}");
                }
                None => {
                    let _ = write!(line, "{:>17}", "-");
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }

    if let Some(s) = report.row("vqe").and_then(|r| r.sampled_energy) {
        out.push('\n');
        let _ = writeln!(
            out,
            "VQE energy is the exact expectation at the optimised parameters; lowest sampled estimate {s:.8}."
        );
    }
    if let Some(x) = &report.excited {
        out.push('\n');
        let _ = writeln!(out, "Excited-state estimates E_k = E_0 + k*{} (heuristic, not computed states):", x.lambda);
        for (k, e) in x.energies.iter().enumerate() {
            let _ = writeln!(out, "  E_{} = {e:.8}", k + 1);
        }
    }
    if reference.is_some() {
        out.push('\n');
        out.push_str(
            "* Published energies for comparison, quoted in Hartree. Their basis set is not stated,\n  \
             so they are not expected to match these STO-3G values.\n",
        );
    }
    if report.rows.iter().any(|r| r.wall_time_s.is_some()) {
        out.push('\n');
        for r in &report.rows {
            if let Some(t) = r.wall_time_s {
                let _ = writeln!(out, "{:<8}{t:.3} s", r.method.to_uppercase());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunReport {
        RunReport {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.into(),
            molecule: "H2O".into(),
            formula: "H2O".into(),
            basis: "sto-3g".into(),
            charge: 0,
            n_electrons: 10,
            n_basis: 7,
            active_space: Some(ActiveSpaceInfo {
                electrons: 8,
                orbitals: 6,
                frozen_orbitals: 1,
            }),
            mapping: Some("parity".into()),
            n_qubits: Some(10),
            optimizer: Some("gd".into()),
            backend: "exact".into(),
            seed: 0,
            rows: vec![
                MethodRow {
                    method: "hf".into(),
                    energy: -74.963,
                    iterations: 12,
                    evaluations: None,
                    converged: true,
                    sampled_energy: None,
                    wall_time_s: None,
                },
                MethodRow {
                    method: "vqe".into(),
                    energy: -75.0124,
                    iterations: 40,
                    evaluations: Some(3000),
                    converged: true,
                    sampled_energy: None,
                    wall_time_s: None,
                },
            ],
            excited: None,
        }
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let back: RunReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().contains("\"schema_version\": 1"));
        assert!(!r.to_json().contains("wall_time_s"));
    }

    #[test]
    fn csv_rows() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "method,energy,iterations,evaluations,converged");
        assert_eq!(lines[1], "hf,-74.963,12,,true");
        assert_eq!(lines[2], "vqe,-75.0124,40,3000,true");
    }

    #[test]
    fn table_with_and_without_reference() {
        let r = sample();
        let plain = render_table(&r, None);
        assert!(!plain.contains("reference"));
        assert!(!plain.contains("DFT"));
        let refs = crate::reference::lookup("H2O").unwrap();
        let with = render_table(&r, Some(&refs));
        assert!(with.contains("-76.0268"));
        assert!(with.contains("-76.3334"));
        assert!(with.contains("-76.0266"));
        let dft = with.lines().find(|l| l.starts_with("DFT")).unwrap();
        assert!(dft.contains("-76.3334") && dft.contains(" - "));
        assert!(with.contains("not expected to match"));
    }
}
