use std::fs;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use qelectra::chem::{library::default_active_space, parse_xyz};
use qelectra::fermion::{apply_active_space, ActiveSpaceSpec, SpinOrbitalIntegrals};
use qelectra::pipeline::{qubit_problem, scf_stage, ProblemSpec, ScfStage};
use qelectra::vqe::{excited_estimate, run_vqe, Backend, OptimizerConfig, UccsdAnsatz, VqeObjective};
use qelectra::{Error, Molecule};

use crate::args::{Cli, MappingArg, Method, OptimizerArg, OutputFormat, Shots};
use crate::reference;
use crate::report::{
    render_table, ActiveSpaceInfo, ExcitedEstimate, MethodRow, RunReport, ScanPoint, ScanReport, SCHEMA_VERSION,
    TOOL_VERSION,
};
use crate::CliError;

/// Rendered output plus whether every iterative stage converged.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub converged: bool,
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let methods = resolve_methods(&cli.method)?;
    let molecule = load_molecule(&cli.molecule, cli.charge)?;
    match cli.scan {
        Some(range) => {
            for (set, flag) in [
                (cli.fcidump.is_some(), "--fcidump"),
                (cli.history.is_some(), "--history"),
                (cli.reference_table, "--reference-table"),
                (cli.excited > 0, "--excited"),
            ] {
                if set {
                    return Err(CliError::input(format!("{flag} cannot be combined with --scan")));
                }
            }
            let report = scan(cli, &molecule, &methods, &range.points())?;
            let stdout = match cli.output.unwrap_or(OutputFormat::Csv) {
                OutputFormat::Csv => report.to_csv(),
                OutputFormat::Json => report.to_json(),
                OutputFormat::Table => report.to_table(),
            };
            Ok(Outcome {
                stdout,
                converged: report.all_converged(),
            })
        }
        None => {
            let report = evaluate(cli, &molecule, &methods, true)?;
            let stdout = match cli.output.unwrap_or(OutputFormat::Table) {
                OutputFormat::Csv => report.to_csv(),
                OutputFormat::Json => report.to_json(),
                OutputFormat::Table => {
                    let refs = if cli.reference_table {
                        reference::lookup(&report.formula)
                    } else {
                        None
                    };
                    let mut out = render_table(&report, refs.as_ref());
                    if cli.reference_table && refs.is_none() {
                        out.push_str(&format!("\nNo published reference energies for {}.\n", report.molecule));
                    }
                    out
                }
            };
            Ok(Outcome {
                stdout,
                converged: report.all_converged(),
            })
        }
    }
}

fn resolve_methods(requested: &[Method]) -> Result<Vec<Method>, CliError> {
    if requested.contains(&Method::Dft) {
        return Err(CliError::input(
            "DFT is out of scope for this tool (see the Scope section of the README); \
             use --method hf,vqe,fci",
        ));
    }
    let mut methods = requested.to_vec();
    methods.sort();
    methods.dedup();
    if methods.is_empty() {
        return Err(CliError::input("no method requested"));
    }
    Ok(methods)
}

fn load_molecule(path: &Path, charge: i32) -> Result<Molecule, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let mol: Molecule = parse_xyz(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Ok(mol.with_charge(charge)?)
}

fn mapping_label(m: MappingArg) -> &'static str {
    match m {
        MappingArg::Jw => "jw",
        MappingArg::Parity => "parity",
        MappingArg::Bk => "bk",
    }
}

fn optimizer_config(cli: &Cli) -> OptimizerConfig<f64> {
    let mut cfg = match cli.optimizer {
        OptimizerArg::Gd => OptimizerConfig::gradient_descent(),
        OptimizerArg::Spsa => OptimizerConfig::spsa(cli.max_iterations.unwrap_or(500), cli.seed),
    };
    if let Some(n) = cli.max_iterations {
        cfg.max_iterations = n;
    }
    cfg.seed = cli.seed;
    cfg
}

fn backend(shots: Shots) -> Backend {
    match shots {
        Shots::Exact => Backend::Exact,
        Shots::Count(shots) => Backend::Sampled { shots },
    }
}

fn backend_label(shots: Shots) -> String {
    match shots {
        Shots::Exact => "exact".into(),
        Shots::Count(n) => format!("sampled:{n}"),
    }
}

fn elapsed(start: Instant, timings: bool) -> Option<f64> {
    timings.then(|| start.elapsed().as_secs_f64())
}

fn resolve_active_space(cli: &Cli, stage: &ScfStage<f64>) -> Result<ActiveSpaceSpec, CliError> {
    let (ne, no) = cli
        .active_space
        .or_else(|| default_active_space(&stage.molecule.formula()))
        .unwrap_or((stage.n_electrons, stage.n_basis));
    let spec = ActiveSpaceSpec::from_counts(stage.n_electrons, ne, no)?;
    spec.validate(stage.n_basis, stage.n_electrons)?;
    Ok(spec)
}

/// One geometry, every requested method. `side_outputs` enables the
/// FCIDUMP, history and excited-state extras.
fn evaluate(cli: &Cli, molecule: &Molecule, methods: &[Method], side_outputs: bool) -> Result<RunReport, CliError> {
    let spec = ProblemSpec {
        basis: cli.basis.to_lowercase(),
        active_space: None,
        mapping: cli.mapping.into(),
        two_qubit_reduction: !cli.no_reduction,
        ..ProblemSpec::default()
    };
    let start = Instant::now();
    let stage = scf_stage(molecule, &spec)?;
    let scf_time = elapsed(start, cli.timings);
    let active = resolve_active_space(cli, &stage)?;
    let spec = ProblemSpec {
        active_space: Some((active.n_active_electrons, active.n_active_spatial)),
        ..spec
    };

    if side_outputs {
        if let Some(path) = &cli.fcidump {
            let soi = apply_active_space(&SpinOrbitalIntegrals::from_spatial(&stage.mo), &active)?;
            write_file(path, &soi.to_spatial()?.to_fcidump(1e-12))?;
        }
    }

    let formula = stage.molecule.formula();
    let mut report = RunReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.into(),
        molecule: reference::display_name(&formula),
        formula,
        basis: spec.basis.clone(),
        charge: molecule.charge,
        n_electrons: stage.n_electrons,
        n_basis: stage.n_basis,
        active_space: Some(ActiveSpaceInfo {
            electrons: active.n_active_electrons,
            orbitals: active.n_active_spatial,
            frozen_orbitals: active.n_frozen_spatial,
        }),
        mapping: None,
        n_qubits: None,
        optimizer: None,
        backend: backend_label(cli.shots),
        seed: cli.seed,
        rows: Vec::new(),
        excited: None,
    };
    if methods.contains(&Method::Hf) {
        report.rows.push(MethodRow {
            method: "hf".into(),
            energy: stage.scf.e_total,
            iterations: stage.scf.iterations,
            evaluations: None,
            converged: stage.scf.converged,
            sampled_energy: None,
            wall_time_s: scf_time,
        });
    }
    if !methods.iter().any(|m| matches!(m, Method::Vqe | Method::Fci)) {
        return Ok(report);
    }

    let problem = qubit_problem(stage, &spec).map_err(|e| match e {
        Error::QubitCapExceeded { requested, max } => CliError::input(format!(
            "active space needs {requested} qubits, above the limit of {max}; \
             choose a smaller one with --active-space ELECTRONS,ORBITALS"
        )),
        other => other.into(),
    })?;
    report.mapping = Some(mapping_label(cli.mapping).into());
    report.n_qubits = Some(problem.n_qubits());

    if methods.contains(&Method::Vqe) {
        let start = Instant::now();
        let ansatz = match problem.uccsd(cli.trotter_steps) {
            Err(Error::DegenerateAnsatz(_)) => UccsdAnsatz::with_excitations(
                problem.integrals.n_spin_orbitals,
                problem.integrals.n_electrons,
                Vec::new(),
                cli.trotter_steps,
            )?,
            other => other?,
        };
        let opt = optimizer_config(cli);
        report.optimizer = Some(
            match cli.optimizer {
                OptimizerArg::Gd => "gd",
                OptimizerArg::Spsa => "spsa",
            }
            .into(),
        );
        let result = run_vqe(&problem.hamiltonian, &ansatz, &problem.mapping, &opt, backend(cli.shots))?;
        // the minimum of noisy estimates is biased low, so a sampled run
        // reports the exact energy of its final parameters
        let (energy, sampled_energy) = match cli.shots {
            Shots::Exact => (result.e_min, None),
            Shots::Count(_) => {
                let exact = VqeObjective::new(&problem.hamiltonian, &ansatz, &problem.mapping, Backend::Exact, 0)?;
                (exact.energy(&result.theta_star)?, Some(result.e_min))
            }
        };
        if side_outputs && cli.excited > 0 {
            let energies = (1..=cli.excited)
                .map(|k| excited_estimate(energy, k, cli.lambda))
                .collect::<Result<_, _>>()?;
            report.excited = Some(ExcitedEstimate {
                heuristic: true,
                lambda: cli.lambda,
                energies,
            });
        }
        if side_outputs {
            if let Some(path) = &cli.history {
                write_file(path, &result.history_csv())?;
            }
        }
        report.rows.push(MethodRow {
            method: "vqe".into(),
            energy,
            sampled_energy,
            iterations: result.iterations,
            evaluations: Some(result.evaluations),
            converged: result.converged,
            wall_time_s: elapsed(start, cli.timings),
        });
    }
    if methods.contains(&Method::Fci) {
        let start = Instant::now();
        let energy = problem.fci_energy()?;
        report.rows.push(MethodRow {
            method: "fci".into(),
            energy,
            iterations: 0,
            evaluations: None,
            converged: true,
            sampled_energy: None,
            wall_time_s: elapsed(start, cli.timings),
        });
    }
    Ok(report)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
}

/// Moves the second atom of a diatomic along the bond axis; points run in
/// parallel and come back ordered by distance.
fn scan(cli: &Cli, molecule: &Molecule, methods: &[Method], distances: &[f64]) -> Result<ScanReport, CliError> {
    let [a, b] = &molecule.atoms[..] else {
        return Err(CliError::input(format!(
            "--scan needs a diatomic molecule, got {} atoms",
            molecule.atoms.len()
        )));
    };
    let d: [f64; 3] = std::array::from_fn(|k| b.position[k] - a.position[k]);
    let len = d.iter().map(|x| x * x).sum::<f64>().sqrt();

    let reports: Vec<RunReport> = distances
        .par_iter()
        .map(|&r| {
            let mut m = molecule.clone();
            m.atoms[1].position = std::array::from_fn(|k| a.position[k] + d[k] / len * r);
            evaluate(cli, &m, methods, false)
        })
        .collect::<Result<_, _>>()?;

    let mut points = Vec::new();
    for (&r, report) in distances.iter().zip(&reports) {
        for row in &report.rows {
            points.push(ScanPoint {
                r_bohr: r,
                method: row.method.clone(),
                energy: row.energy,
                converged: row.converged,
            });
        }
    }
    Ok(ScanReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.into(),
        molecule: reports
            .first()
            .map_or_else(|| molecule.formula(), |r| r.molecule.clone()),
        basis: cli.basis.to_lowercase(),
        mapping: reports.first().and_then(|r| r.mapping.clone()),
        seed: cli.seed,
        points,
    })
}
