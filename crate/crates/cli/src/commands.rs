//! Subcommand implementations. Each returns what it wrote or printed so the
//! binary and the tests share one code path.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use reefopt_core::antenna::{antenna_fitness, AntennaProblem, Resonator};
use reefopt_core::bsop::{Bill, BsopProblem};
use reefopt_core::substrates::substrate_names;
use reefopt_core::telemetry::format_sig;
use reefopt_core::tmd::{to_db, TmdDesign};
use reefopt_core::{run, RunParams};

use crate::config::{BuiltProblem, LoadedConfig};
use crate::error::CliError;

pub const FULL_VARIANT: &str = "CRO-SL";
pub const SUMMARY_FILE: &str = "summary.json";
pub const TIMING_FILE: &str = "timing.json";
pub const TELEMETRY_FILE: &str = "telemetry.csv";
pub const COMPARISON_FILE: &str = "comparison.csv";

/// Deterministic run record; wall time lives in `timing.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub problem: String,
    pub variant: String,
    pub substrates: Vec<String>,
    pub seed: u64,
    pub iterations: usize,
    pub reef_size: usize,
    /// Cost on the objective the engine minimized.
    pub best_fitness: f64,
    /// Cost re-evaluated on the report grid (equal to `best_fitness` except for TMD).
    pub report_fitness: f64,
    pub best_genome: Vec<f64>,
    pub evaluations: u64,
    pub regenerations: Vec<usize>,
    pub params_digest: String,
    pub rng: String,
    pub details: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub variant: String,
    pub min: f64,
    pub mean: f64,
    pub evaluations_mean: f64,
    pub runs: usize,
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Other(format!("{}: {e}", path.display()))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        }
    }
    fs::write(path, text).map_err(|e| io_err(path, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| io_err(path, e))?;
    text.push('\n');
    write_text(path, &text)
}

/// Run the engine once and write summary, timing and telemetry into `dir`.
pub fn execute(
    loaded: &LoadedConfig,
    built: &BuiltProblem,
    params: &RunParams,
    variant: &str,
    dir: &Path,
) -> Result<Summary, CliError> {
    let result = run(params, built.as_problem())?;
    let genome = result.best.genome.clone();
    let meta = &result.telemetry.meta;
    let summary = Summary {
        problem: loaded.config.problem.kind().to_string(),
        variant: variant.to_string(),
        substrates: substrate_names(&params.substrates),
        seed: params.seed,
        iterations: params.iterations,
        reef_size: params.reef_size,
        best_fitness: result.best.fitness,
        report_fitness: built.report_cost(&genome),
        best_genome: genome.clone(),
        evaluations: meta.evaluations,
        regenerations: meta.regenerations.clone(),
        params_digest: meta.params_digest.clone(),
        rng: meta.rng.clone(),
        details: details(built, &genome),
    };
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    write_json(&dir.join(SUMMARY_FILE), &summary)?;
    write_json(&dir.join(TIMING_FILE), &Timing { seconds: result.seconds })?;
    result.telemetry.write_csv(&dir.join(TELEMETRY_FILE))?;
    Ok(summary)
}

fn details(built: &BuiltProblem, genome: &[f64]) -> Value {
    match built {
        BuiltProblem::Tmd { report, .. } => {
            let design = TmdDesign::decode(genome);
            let peak = report.fitness(&design);
            json!({ "design": design, "peak_db": to_db(peak) })
        }
        BuiltProblem::Bsop(p) => {
            let bill = p.bill(genome);
            let none = p.no_battery();
            let det = p.bill(&p.deterministic());
            json!({
                "bill": bill,
                "no_battery_total": none.total,
                "deterministic_total": det.total,
                "improvement_pct": improvement_pct(&none, &bill),
            })
        }
        BuiltProblem::Antenna { problem, .. } => {
            let resonator = AntennaProblem::decode(genome);
            json!({ "resonator": resonator, "score": problem.score(&resonator) })
        }
        BuiltProblem::Sphere(_) => Value::Null,
    }
}

fn improvement_pct(reference: &Bill, bill: &Bill) -> f64 {
    100.0 * (reference.total - bill.total) / reference.total
}

fn output_dir(loaded: &LoadedConfig, out: Option<&Path>) -> PathBuf {
    match out {
        Some(p) => p.to_path_buf(),
        None => loaded.resolve(&loaded.config.output_dir),
    }
}

pub fn cmd_run(config: &Path, seed: Option<u64>, out: Option<&Path>) -> Result<Summary, CliError> {
    let loaded = LoadedConfig::load(config)?;
    let built = loaded.build()?;
    let mut params = loaded.run_params();
    if let Some(s) = seed {
        params.seed = s;
    }
    execute(&loaded, &built, &params, FULL_VARIANT, &output_dir(&loaded, out))
}

/// Directory-safe variant name: `CRO-SL` becomes `cro-sl`, `2Px#1` becomes `2px-1`.
pub fn slug(variant: &str) -> String {
    variant.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c.to_ascii_lowercase() } else { '-' }).collect()
}

/// The full reef plus every substrate on its own, each over `seeds` consecutive seeds.
pub fn cmd_compare(
    config: &Path,
    seed: Option<u64>,
    seeds: usize,
    out: Option<&Path>,
) -> Result<Vec<ComparisonRow>, CliError> {
    if seeds == 0 {
        return Err(CliError::Config("--seeds must be at least 1".into()));
    }
    let loaded = LoadedConfig::load(config)?;
    let built = loaded.build()?;
    let base = loaded.run_params();
    let first = seed.unwrap_or(base.seed);
    let dir = output_dir(&loaded, out);

    let mut variants = vec![(FULL_VARIANT.to_string(), base.clone())];
    for (i, name) in substrate_names(&base.substrates).into_iter().enumerate() {
        let single = base.single_substrate(i);
        single.validate(built.as_problem().encoding())?;
        variants.push((name, single));
    }

    let jobs: Vec<(usize, u64)> =
        (0..variants.len()).flat_map(|v| (0..seeds as u64).map(move |k| (v, first + k))).collect();
    let summaries: Vec<Summary> = jobs
        .par_iter()
        .map(|&(v, s)| {
            let (name, params) = &variants[v];
            let params = RunParams { seed: s, ..params.clone() };
            let run_dir = dir.join(slug(name)).join(format!("seed-{s}"));
            execute(&loaded, &built, &params, name, &run_dir)
        })
        .collect::<Result<_, _>>()?;

    let rows: Vec<ComparisonRow> = variants
        .iter()
        .enumerate()
        .map(|(v, (name, _))| {
            let runs = &summaries[v * seeds..(v + 1) * seeds];
            let costs: Vec<f64> = runs.iter().map(|s| s.report_fitness).collect();
            ComparisonRow {
                variant: name.clone(),
                min: costs.iter().copied().fold(f64::INFINITY, f64::min),
                mean: costs.iter().sum::<f64>() / seeds as f64,
                evaluations_mean: runs.iter().map(|s| s.evaluations as f64).sum::<f64>() / seeds as f64,
                runs: seeds,
            }
        })
        .collect();
    write_text(&dir.join(COMPARISON_FILE), &comparison_csv(&rows))?;
    Ok(rows)
}

pub fn comparison_csv(rows: &[ComparisonRow]) -> String {
    let mut text = String::from("variant,min,mean,evaluations_mean,runs\n");
    for r in rows {
        text.push_str(&format!("{},{:?},{:?},{:?},{}\n", r.variant, r.min, r.mean, r.evaluations_mean, r.runs));
    }
    text
}

pub fn parse_comparison_csv(text: &str) -> Result<Vec<ComparisonRow>, CliError> {
    let bad = |line: usize| CliError::Data(format!("comparison.csv:{line}: malformed row"));
    text.lines()
        .enumerate()
        .skip(1)
        .map(|(i, line)| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 5 {
                return Err(bad(i + 1));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|_| bad(i + 1));
            Ok(ComparisonRow {
                variant: f[0].to_string(),
                min: num(f[1])?,
                mean: num(f[2])?,
                evaluations_mean: num(f[3])?,
                runs: f[4].parse().map_err(|_| bad(i + 1))?,
            })
        })
        .collect()
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum SolutionFile {
    Tmd(TmdDesign),
    Resonator(Resonator),
    Genome { genome: Vec<f64> },
    Summary { best_genome: Vec<f64> },
    Values(Vec<f64>),
}

fn read_solution(path: &Path) -> Result<SolutionFile, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::Data(format!(
            "{}:{}:{}: not a recognised solution (design, resonator, genome or list of values)",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn genome_of(solution: SolutionFile, path: &Path) -> Result<Vec<f64>, CliError> {
    let genome = match solution {
        SolutionFile::Genome { genome }
        | SolutionFile::Summary { best_genome: genome }
        | SolutionFile::Values(genome) => genome,
        SolutionFile::Resonator(r) => vec![r.f0_mhz, r.q, r.r_ohm],
        SolutionFile::Tmd(d) => d.encode(),
    };
    if genome.iter().all(|x| x.is_finite()) {
        Ok(genome)
    } else {
        Err(CliError::Data(format!("{}: solution has non-finite values", path.display())))
    }
}

fn check_len(genome: &[f64], expected: usize, path: &Path) -> Result<(), CliError> {
    if genome.len() == expected {
        Ok(())
    } else {
        Err(CliError::Data(format!("{}: solution has {} values, expected {expected}", path.display(), genome.len())))
    }
}

fn tmd_design(solution: Option<&Path>, floors: usize) -> Result<TmdDesign, CliError> {
    let design = match solution {
        None => TmdDesign::none(),
        Some(path) => match read_solution(path)? {
            SolutionFile::Tmd(d) => d,
            other => {
                let g = genome_of(other, path)?;
                if g.len() % 4 != 0 {
                    return Err(CliError::Data(format!(
                        "{}: a TMD genome needs 4 values per damper, got {}",
                        path.display(),
                        g.len()
                    )));
                }
                TmdDesign::decode(&g)
            }
        },
    };
    design.validate(floors)?;
    Ok(design)
}

/// Cost of a stored solution. TMD designs may carry any number of dampers
/// (none when `solution` is absent); an antenna trace config without a
/// solution scores its own trace.
pub fn cmd_eval(config: &Path, solution: Option<&Path>) -> Result<f64, CliError> {
    let loaded = LoadedConfig::load(config)?;
    let built = loaded.build()?;
    match &built {
        BuiltProblem::Tmd { report, .. } => {
            let design = tmd_design(solution, report.building().floors())?;
            Ok(report.fitness(&design))
        }
        BuiltProblem::Antenna { trace, window, problem } => match (solution, trace) {
            (Some(path), _) => {
                let g = genome_of(read_solution(path)?, path)?;
                check_len(&g, 3, path)?;
                Ok(-problem.score(&AntennaProblem::decode(&g)))
            }
            (None, Some(trace)) => Ok(-antenna_fitness(trace, *window)?),
            (None, None) => Err(CliError::Config("eval needs a solution file or a trace in the config".into())),
        },
        BuiltProblem::Bsop(_) | BuiltProblem::Sphere(_) => {
            let path = solution.ok_or_else(|| CliError::Config("eval needs --solution for this problem".into()))?;
            let g = genome_of(read_solution(path)?, path)?;
            check_len(&g, built.as_problem().encoding().len(), path)?;
            Ok(built.report_cost(&g))
        }
    }
}

/// Per-floor FRF magnitudes in dB on the report grid.
pub fn cmd_frf(config: &Path, solution: Option<&Path>) -> Result<String, CliError> {
    let loaded = LoadedConfig::load(config)?;
    let built = loaded.build()?;
    let BuiltProblem::Tmd { report, .. } = &built else {
        return Err(CliError::Config("frf needs a tmd problem".into()));
    };
    let design = tmd_design(solution, report.building().floors())?;
    let curves = report.frf(&design);
    let db = curves.db();
    let mut text = String::from("omega_rad_s");
    for f in 1..=db.len() {
        text.push_str(&format!(",floor_{f}_db"));
    }
    text.push('\n');
    for (i, w) in curves.omega.iter().enumerate() {
        text.push_str(&format_sig(*w, 9));
        for curve in &db {
            text.push(',');
            text.push_str(&format_sig(curve[i], 9));
        }
        text.push('\n');
    }
    Ok(text)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BsopReport {
    pub mode: String,
    pub bill: Bill,
    pub improvement_pct: f64,
}

impl BsopReport {
    pub fn to_csv(&self) -> String {
        format!(
            "mode,pt,et,total,improvement_pct\n{},{:.4},{:.4},{:.4},{:.2}\n",
            self.mode, self.bill.pt, self.bill.et, self.bill.total, self.improvement_pct
        )
    }
}

/// Bill breakdown for `none`, `deterministic` or a schedule file.
pub fn cmd_bsop_report(config: &Path, mode: &str) -> Result<BsopReport, CliError> {
    let loaded = LoadedConfig::load(config)?;
    let built = loaded.build()?;
    let BuiltProblem::Bsop(p) = &built else {
        return Err(CliError::Config("bsop-report needs a bsop problem".into()));
    };
    let none = p.no_battery();
    let bill = match mode {
        "none" => none,
        "deterministic" => p.bill(&p.deterministic()),
        file => schedule_bill(p, Path::new(file))?,
    };
    Ok(BsopReport { mode: mode.to_string(), bill, improvement_pct: improvement_pct(&none, &bill) })
}

fn schedule_bill(p: &BsopProblem, path: &Path) -> Result<Bill, CliError> {
    let g = genome_of(read_solution(path)?, path)?;
    check_len(&g, reefopt_core::bsop::HORIZON, path)?;
    Ok(p.bill(&g))
}
