use std::fmt;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use qelectra::pauli::MappingKind;
use qelectra::vqe::OptimizerKind;

#[derive(Parser, Debug, Clone)]
#[command(name = "qelectra", version, about = "Hartree-Fock, VQE and exact ground-state energies for small molecules")]
pub struct Cli {
    /// Geometry in XYZ format (Ångström).
    #[arg(long, value_name = "PATH")]
    pub molecule: PathBuf,

    #[arg(long, default_value = "sto-3g")]
    pub basis: String,

    /// Comma-separated methods.
    #[arg(long, value_delimiter = ',', default_value = "hf,vqe,fci")]
    pub method: Vec<Method>,

    #[arg(long, value_enum, default_value_t = MappingArg::Parity)]
    pub mapping: MappingArg,

    /// Keep both parity sector qubits instead of removing them.
    #[arg(long)]
    pub no_reduction: bool,

    /// Active electrons and spatial orbitals; defaults per molecule.
    #[arg(long, value_name = "ELECTRONS,ORBITALS", value_parser = parse_active_space)]
    pub active_space: Option<(usize, usize)>,

    #[arg(long, value_enum, default_value_t = OptimizerArg::Gd)]
    pub optimizer: OptimizerArg,

    #[arg(long, value_name = "N|exact", default_value = "exact", value_parser = parse_shots)]
    pub shots: Shots,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long)]
    pub max_iterations: Option<usize>,

    #[arg(long, default_value_t = 1)]
    pub trotter_steps: usize,

    /// Bond scan for a diatomic, distances in Bohr.
    #[arg(long, value_name = "START,STOP,STEPS", value_parser = parse_scan)]
    pub scan: Option<ScanRange>,

    /// Defaults to `table` for single runs and `csv` for scans.
    #[arg(long, value_enum)]
    pub output: Option<OutputFormat>,

    /// Write active-space integrals in FCIDUMP format.
    #[arg(long, value_name = "PATH")]
    pub fcidump: Option<PathBuf>,

    /// Write the VQE energy history as CSV.
    #[arg(long, value_name = "PATH")]
    pub history: Option<PathBuf>,

    /// Append published reference energies where available.
    #[arg(long)]
    pub reference_table: bool,

    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub charge: i32,

    /// Report E_k = E_0 + kλ for k = 1..=K after a VQE run.
    #[arg(long, value_name = "K", default_value_t = 0)]
    pub excited: usize,

    #[arg(long, default_value_t = 0.1)]
    pub lambda: f64,

    /// Include wall-clock times (output is then no longer reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Hf,
    Dft,
    Vqe,
    Fci,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Hf => "hf",
            Method::Dft => "dft",
            Method::Vqe => "vqe",
            Method::Fci => "fci",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum MappingArg {
    Jw,
    Parity,
    Bk,
}

impl From<MappingArg> for MappingKind {
    fn from(m: MappingArg) -> Self {
        match m {
            MappingArg::Jw => MappingKind::JordanWigner,
            MappingArg::Parity => MappingKind::Parity,
            MappingArg::Bk => MappingKind::BravyiKitaev,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimizerArg {
    Spsa,
    Gd,
}

impl From<OptimizerArg> for OptimizerKind {
    fn from(o: OptimizerArg) -> Self {
        match o {
            OptimizerArg::Spsa => OptimizerKind::Spsa,
            OptimizerArg::Gd => OptimizerKind::GradientDescent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shots {
    Exact,
    Count(usize),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRange {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl ScanRange {
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let span = self.stop - self.start;
        // trim representation noise so grid points print as typed
        (0..self.steps)
            .map(|k| self.start + span * k as f64 / (self.steps - 1) as f64)
            .map(|r| (r * 1e12).round() / 1e12)
            .collect()
    }
}

fn parse_active_space(s: &str) -> Result<(usize, usize), String> {
    let (e, o) = s
        .split_once(',')
        .ok_or_else(|| format!("expected ELECTRONS,ORBITALS, got `{s}`"))?;
    let e = e.trim().parse().map_err(|_| format!("invalid electron count `{e}`"))?;
    let o = o.trim().parse().map_err(|_| format!("invalid orbital count `{o}`"))?;
    Ok((e, o))
}

fn parse_shots(s: &str) -> Result<Shots, String> {
    if s.eq_ignore_ascii_case("exact") {
        return Ok(Shots::Exact);
    }
    match s.parse::<usize>() {
        Ok(0) => Err("shot count must be positive".into()),
        Ok(n) => Ok(Shots::Count(n)),
        Err(_) => Err(format!("expected a shot count or `exact`, got `{s}`")),
    }
}

fn parse_scan(s: &str) -> Result<ScanRange, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [start, stop, steps] = parts[..] else {
        return Err(format!("expected START,STOP,STEPS, got `{s}`"));
    };
    let start: f64 = start.parse().map_err(|_| format!("invalid start `{start}`"))?;
    let stop: f64 = stop.parse().map_err(|_| format!("invalid stop `{stop}`"))?;
    let steps: usize = steps.parse().map_err(|_| format!("invalid step count `{steps}`"))?;
    if !(start > 0.0 && stop > 0.0 && start.is_finite() && stop.is_finite()) {
        return Err("scan distances must be positive".into());
    }
    if steps == 0 {
        return Err("a scan needs at least one step".into());
    }
    Ok(ScanRange { start, stop, steps })
}
