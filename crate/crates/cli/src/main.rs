//! `ergogap`: ergotropy, local ergotropy and ergotropic gap of multi-party
//! states from a JSON description.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse error,
//! 3 validation error, 4 numerical failure.

mod error;
mod input;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ergogap::correlation::{is_classically_correlated, CC_TOL};
use ergogap::ergotropy::{ergotropic_gap, WorkReport};
use ergogap::oracle::{min_energy_product_unitaries, OracleReport, SearchConfig};
use ergogap::thermal::{thermal_report, ThermalConfig, ThermalReport};
use ergogap::{CompositeHamiltonian, DensityMatrix, Error};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::input::{
    build_hamiltonian, build_state, read_document, resolve_seeds, HamiltonianSpec, InputDoc,
};
use crate::output::{emit, number, to_csv, to_json};

#[derive(Parser)]
#[command(
    name = "ergogap",
    version,
    about = "Global and local ergotropy of multi-party quantum states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Work report plus product-basis classification.
    Compute(ClassifyArgs),
    /// Work report only.
    Gap(IoArgs),
    /// Work report plus bath-assisted work bounds at inverse temperature --beta.
    Thermal(ThermalArgs),
    /// Decide whether the state is diagonal in a product basis.
    Classify(ClassifyArgs),
    /// Compare the local optimum with a brute-force search over product unitaries.
    Verify(VerifyArgs),
    /// Tabulate global, local and gap over a one-parameter family.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct IoArgs {
    /// Input document (JSON).
    #[arg(long)]
    input: PathBuf,
    /// Report destination; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized state families that do not carry their own.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ThermalArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Inverse temperature of the bath.
    #[arg(long, allow_hyphen_values = true)]
    beta: f64,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Residual below which the state counts as product-basis diagonal.
    #[arg(long, default_value_t = CC_TOL)]
    tolerance: f64,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    io: IoArgs,
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    /// Largest accepted |oracle - exact|.
    #[arg(long, default_value_t = 1e-5)]
    tolerance: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SweepFamily {
    /// p|ψ⁻><ψ⁻| + (1-p) I/4.
    Werner,
    /// (1-p)|00><00| + p|11><11|.
    CcPair,
}

#[derive(Args)]
struct SweepArgs {
    /// Optional document supplying `dims` and `hamiltonian`; unit-gap qubits otherwise.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum)]
    family: SweepFamily,
    /// `start:stop:step`, inclusive of `stop`.
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
enum Classification {
    IsCc(bool),
    Inconclusive(String),
}

#[derive(Serialize)]
struct OracleBlock {
    restarts: usize,
    seed: u64,
    tolerance: f64,
    exact_local_passive_energy: f64,
    deviation: f64,
    passed: bool,
    search: OracleReport,
}

#[derive(Serialize)]
struct Report {
    command: &'static str,
    input_echo: InputDoc,
    work_report: WorkReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    thermal: Option<ThermalReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classification: Option<Classification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleBlock>,
}

impl Report {
    fn csv(&self) -> Result<String, CliError> {
        let w = &self.work_report;
        let mut rows = vec![
            ("global_ergotropy", number(w.global_ergotropy)),
            ("local_ergotropy", number(w.local_ergotropy)),
            ("ergotropic_gap", number(w.ergotropic_gap)),
            ("initial_energy", number(w.initial_energy)),
            ("passive_energy", number(w.passive_energy)),
        ];
        if let Some(t) = &self.thermal {
            rows.extend([
                ("beta", number(t.beta)),
                ("free_energy", number(t.free_energy)),
                ("thermal_free_energy", number(t.thermal_free_energy)),
                ("global_work_bound", number(t.global_work_bound)),
                ("local_work_bound", number(t.local_work_bound)),
                ("gap_free_energy_path", number(t.gap_free_energy_path)),
                ("thermal_gap", number(t.thermal_gap)),
                ("total_correlation_nats", number(t.total_correlation_nats)),
            ]);
        }
        match &self.classification {
            Some(Classification::IsCc(b)) => rows.push(("is_cc", b.to_string())),
            Some(Classification::Inconclusive(m)) => rows.push(("inconclusive", m.clone())),
            None => {}
        }
        if let Some(o) = &self.oracle {
            rows.extend([
                ("oracle_best_value", number(o.search.best_value)),
                (
                    "exact_local_passive_energy",
                    number(o.exact_local_passive_energy),
                ),
                ("deviation", number(o.deviation)),
                ("converged", o.search.converged.to_string()),
                ("passed", o.passed.to_string()),
            ]);
        }
        let rows: Vec<Vec<String>> = rows
            .into_iter()
            .map(|(k, v)| vec![k.to_string(), v])
            .collect();
        to_csv(&["field", "value"], &rows)
    }
}

fn core(field: &'static str) -> impl Fn(Error) -> CliError {
    move |e| CliError::from_core(field, e)
}

fn load(io: &IoArgs) -> Result<(InputDoc, DensityMatrix, CompositeHamiltonian), CliError> {
    let mut doc = read_document(&io.input)?;
    resolve_seeds(&mut doc, io.seed);
    let h = build_hamiltonian(&doc)?;
    let rho = build_state(&doc)?;
    Ok((doc, rho, h))
}

fn classify(rho: &DensityMatrix, tol: f64) -> Result<Classification, CliError> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(CliError::Validation(format!(
            "tolerance: must be positive, got {tol}"
        )));
    }
    match is_classically_correlated(rho, tol) {
        Ok(w) => Ok(Classification::IsCc(w.is_cc)),
        Err(Error::Inconclusive(m)) => Ok(Classification::Inconclusive(m)),
        Err(e) => Err(CliError::from_core("classification", e)),
    }
}

fn finish(report: &Report, io: &IoArgs) -> Result<(), CliError> {
    let text = match io.format {
        Format::Json => to_json(report)?,
        Format::Csv => report.csv()?,
    };
    emit(&text, io.output.as_deref())
}

fn run_report(command: &Command) -> Result<i32, CliError> {
    let (name, io) = match command {
        Command::Compute(a) => ("compute", &a.io),
        Command::Gap(a) => ("gap", a),
        Command::Thermal(a) => ("thermal", &a.io),
        Command::Classify(a) => ("classify", &a.io),
        Command::Verify(a) => ("verify", &a.io),
        Command::Sweep(_) => unreachable!("sweep has its own runner"),
    };
    if let Command::Thermal(a) = command {
        ThermalConfig::new(a.beta).map_err(core("beta"))?;
    }
    let (doc, rho, h) = load(io)?;
    let work_report = ergotropic_gap(&rho, &h).map_err(core("work_report"))?;
    let mut report = Report {
        command: name,
        input_echo: doc,
        work_report,
        thermal: None,
        classification: None,
        oracle: None,
    };
    let mut code = 0;
    match command {
        Command::Thermal(a) => {
            report.thermal = Some(thermal_report(&rho, &h, a.beta).map_err(core("thermal"))?);
        }
        Command::Compute(a) | Command::Classify(a) => {
            report.classification = Some(classify(&rho, a.tolerance)?);
        }
        Command::Verify(a) => {
            if !a.tolerance.is_finite() || a.tolerance <= 0.0 {
                return Err(CliError::Validation(format!(
                    "tolerance: must be positive, got {}",
                    a.tolerance
                )));
            }
            let cfg = SearchConfig {
                restarts: a.restarts,
                seed: io.seed,
                ..SearchConfig::default()
            };
            let search = min_energy_product_unitaries(&rho, &h, &cfg).map_err(core("oracle"))?;
            let exact: f64 = report.work_report.local_passive_energies.iter().sum();
            let deviation = search.best_value - exact;
            let passed = deviation.abs() <= a.tolerance && search.best_value >= exact - 1e-12;
            if !passed {
                code = 1;
            }
            report.oracle = Some(OracleBlock {
                restarts: a.restarts,
                seed: io.seed,
                tolerance: a.tolerance,
                exact_local_passive_energy: exact,
                deviation,
                passed,
                search,
            });
        }
        _ => {}
    }
    finish(&report, io)?;
    Ok(code)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
struct Grid {
    start: f64,
    stop: f64,
    step: f64,
}

impl Grid {
    fn parse(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Parse(format!("grid: expected start:stop:step, got `{s}`"));
        let parts: Vec<f64> = s
            .split(':')
            .map(|x| x.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        let [start, stop, step] = parts[..] else {
            return Err(bad());
        };
        if !(start.is_finite()
            && stop.is_finite()
            && step > 0.0
            && step.is_finite()
            && stop >= start)
        {
            return Err(CliError::Parse(format!(
                "grid: need finite start <= stop and step > 0, got `{s}`"
            )));
        }
        Ok(Grid { start, stop, step })
    }

    fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n)
            .map(|k| (self.start + k as f64 * self.step).min(self.stop))
            .collect()
    }
}

#[derive(Serialize)]
struct SweepRow {
    p: f64,
    global: f64,
    local: f64,
    gap: f64,
}

#[derive(Serialize)]
struct SweepReport {
    family: SweepFamily,
    grid: Grid,
    dims: Vec<usize>,
    hamiltonian: Option<HamiltonianSpec>,
    rows: Vec<SweepRow>,
}

fn sweep_state(family: SweepFamily, p: f64) -> ergogap::Result<DensityMatrix> {
    match family {
        SweepFamily::Werner => DensityMatrix::werner(p),
        SweepFamily::CcPair => DensityMatrix::cc_diagonal(&[2, 2], &[1.0 - p, 0.0, 0.0, p]),
    }
}

fn run_sweep(a: &SweepArgs) -> Result<i32, CliError> {
    let grid = Grid::parse(&a.grid)?;
    let (h, spec) = match &a.input {
        Some(path) => {
            let doc = read_document(path)?;
            if doc.dims != [2, 2] {
                return Err(CliError::Parse(format!(
                    "dims: sweep families need [2, 2], got {:?}",
                    doc.dims
                )));
            }
            (build_hamiltonian(&doc)?, Some(doc.hamiltonian))
        }
        None => (
            CompositeHamiltonian::unit_gap_qubits(2).map_err(core("hamiltonian"))?,
            None,
        ),
    };
    let rows = grid
        .points()
        .into_par_iter()
        .map(|p| {
            let field = "grid";
            let rho = sweep_state(a.family, p).map_err(core(field))?;
            let w = ergotropic_gap(&rho, &h).map_err(core(field))?;
            Ok(SweepRow {
                p,
                global: w.global_ergotropy,
                local: w.local_ergotropy,
                gap: w.ergotropic_gap,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let text = match a.format {
        Format::Csv => to_csv(
            &["p", "global", "local", "gap"],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        number(r.p),
                        number(r.global),
                        number(r.local),
                        number(r.gap),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
        Format::Json => to_json(&SweepReport {
            family: a.family,
            grid,
            dims: vec![2, 2],
            hamiltonian: spec,
            rows,
        })?,
    };
    emit(&text, a.output.as_deref())?;
    Ok(0)
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    match &cli.command {
        Command::Sweep(a) => run_sweep(a),
        other => run_report(other),
    }
}

fn main() {
    let cli = Cli::parse();
    let code = run(&cli).unwrap_or_else(|e| {
        eprintln!("{}", e.to_json());
        e.exit_code()
    });
    std::process::exit(code);
}
