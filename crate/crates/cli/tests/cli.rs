use std::path::PathBuf;
use std::process::{Command, Output};

use qelectra_cli::report::{RunReport, ScanReport};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../molecules").join(name)
}

fn qelectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qelectra"))
        .args(args)
        .env("QELECTRA_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_run(args: &[&str]) -> RunReport {
    let mut all = args.to_vec();
    all.extend(["--output", "json"]);
    let o = qelectra(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn hydrogen_vqe_meets_fci() {
    let h2 = data("h2.xyz");
    let r = json_run(&["--molecule", h2.to_str().unwrap(), "--method", "hf,vqe,fci", "--mapping", "jw"]);
    assert_eq!(r.schema_version, 1);
    let (hf, vqe, fci) = (r.row("hf").unwrap(), r.row("vqe").unwrap(), r.row("fci").unwrap());
    assert!((vqe.energy - fci.energy).abs() < 1e-6);
    assert!(hf.energy > vqe.energy);
    assert_eq!(r.n_qubits, Some(4));
}

#[test]
fn water_hartree_fock_only() {
    let h2o = data("h2o.xyz");
    let r = json_run(&["--molecule", h2o.to_str().unwrap(), "--method", "hf"]);
    assert_eq!(r.rows.len(), 1);
    assert!(r.rows[0].converged);
    assert!((r.rows[0].energy - -74.963).abs() < 1e-2);
    assert!(r.mapping.is_none() && r.n_qubits.is_none());
}

#[test]
fn input_errors_exit_one() {
    let o = qelectra(&["--molecule", "/definitely/missing.xyz"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot read"));

    let h2 = data("h2.xyz");
    let o = qelectra(&["--molecule", h2.to_str().unwrap(), "--method", "dft"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("out of scope"));

    let o = qelectra(&["--molecule", h2.to_str().unwrap(), "--no-such-flag"]);
    assert_eq!(o.status.code(), Some(1));

    let o = qelectra(&["--molecule", h2.to_str().unwrap(), "--basis", "cc-pvdz"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn oversized_active_space_suggests_a_smaller_one() {
    let co2 = data("co2.xyz");
    let o = qelectra(&["--molecule", co2.to_str().unwrap(), "--method", "fci", "--active-space", "20,14"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--active-space"));
}

#[test]
fn non_convergence_exits_two_with_report() {
    let h2 = data("h2.xyz");
    let o = qelectra(&[
        "--molecule",
        h2.to_str().unwrap(),
        "--method",
        "vqe",
        "--max-iterations",
        "2",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let r: RunReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!r.rows[0].converged);
}

#[test]
fn hydrogen_scan_has_a_minimum_near_equilibrium() {
    let h2 = data("h2.xyz");
    let o = qelectra(&["--molecule", h2.to_str().unwrap(), "--method", "fci", "--scan", "0.9,3.5,14"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r_bohr,method,energy"));
    let pts: Vec<(f64, f64)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            assert_eq!(f[1], "fci");
            (f[0].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect();
    assert_eq!(pts.len(), 14);
    assert!(pts.windows(2).all(|w| w[0].0 < w[1].0));
    let best = pts.iter().min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
    assert!((best.0 - 1.39).abs() <= 0.2, "minimum at {}", best.0);
}

#[test]
fn single_point_scan_equals_plain_run() {
    let h2 = data("h2.xyz");
    // the shipped file has the bond along z from the origin
    let r_bohr = 0.735 / 0.529177210903;
    let o = qelectra(&[
        "--molecule",
        h2.to_str().unwrap(),
        "--method",
        "hf,fci",
        "--scan",
        &format!("{r_bohr},{r_bohr},1"),
        "--output",
        "json",
    ]);
    let scan: ScanReport = serde_json::from_str(&stdout(&o)).unwrap();
    let run = json_run(&["--molecule", h2.to_str().unwrap(), "--method", "hf,fci"]);
    for p in &scan.points {
        let e = run.row(&p.method).unwrap().energy;
        assert!((p.energy - e).abs() < 1e-9, "{}: {} vs {e}", p.method, p.energy);
    }
}

#[test]
fn scanned_vqe_never_undercuts_fci() {
    let h2 = data("h2.xyz");
    let o = qelectra(&[
        "--molecule",
        h2.to_str().unwrap(),
        "--method",
        "vqe,fci",
        "--scan",
        "1.0,3.0,5",
        "--output",
        "json",
    ]);
    let scan: ScanReport = serde_json::from_str(&stdout(&o)).unwrap();
    for pair in scan.points.chunks(2) {
        assert_eq!((pair[0].method.as_str(), pair[1].method.as_str()), ("vqe", "fci"));
        assert!(pair[0].energy >= pair[1].energy - 1e-9);
        assert!(pair[0].energy - pair[1].energy < 1e-5);
    }
}

#[test]
fn outputs_are_byte_stable() {
    let lih = data("lih.xyz");
    for fmt in ["json", "table", "csv"] {
        let args = ["--molecule", lih.to_str().unwrap(), "--method", "hf,fci", "--output", fmt];
        assert_eq!(qelectra(&args).stdout, qelectra(&args).stdout, "{fmt}");
    }
}

#[test]
fn reference_table_is_opt_in() {
    let h2o = data("h2o.xyz");
    let plain = stdout(&qelectra(&["--molecule", h2o.to_str().unwrap(), "--method", "hf"]));
    assert!(!plain.contains("reference"));
    let with = stdout(&qelectra(&["--molecule", h2o.to_str().unwrap(), "--method", "hf", "--reference-table"]));
    for v in ["-76.0268", "-76.3334", "-76.0266"] {
        assert!(with.contains(v), "{v} missing from\n{with}");
    }
    assert!(with.contains("not expected to match"));
}

#[test]
fn side_outputs_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("h2.fcidump");
    let hist = dir.path().join("history.csv");
    let h2 = data("h2.xyz");
    let o = qelectra(&[
        "--molecule",
        h2.to_str().unwrap(),
        "--method",
        "vqe",
        "--fcidump",
        dump.to_str().unwrap(),
        "--history",
        hist.to_str().unwrap(),
        "--excited",
        "2",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r: RunReport = serde_json::from_str(&stdout(&o)).unwrap();
    let x = r.excited.unwrap();
    assert!(x.heuristic);
    assert!((x.energies[1] - r.rows[0].energy - 0.2).abs() < 1e-12);

    let fcidump = std::fs::read_to_string(&dump).unwrap();
    assert!(fcidump.contains("NORB=2,NELEC=2"));
    let history = std::fs::read_to_string(&hist).unwrap();
    assert!(history.starts_with("iteration,energy,evaluations\n"));
    assert!(history.lines().count() > 2);
}

#[test]
fn seeded_sampled_runs_repeat() {
    let h2 = data("h2.xyz");
    let args = [
        "--molecule",
        h2.to_str().unwrap(),
        "--method",
        "vqe,fci",
        "--optimizer",
        "spsa",
        "--shots",
        "500",
        "--max-iterations",
        "30",
        "--seed",
        "11",
        "--output",
        "json",
    ];
    let (a, b) = (qelectra(&args), qelectra(&args));
    assert_eq!(a.stdout, b.stdout);
    let r: RunReport = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(r.backend, "sampled:500");
    // reported energy is exact at the final parameters, so it stays variational
    let (vqe, fci) = (r.row("vqe").unwrap(), r.row("fci").unwrap());
    assert!(vqe.sampled_energy.is_some());
    assert!(vqe.energy >= fci.energy - 1e-9);
}
