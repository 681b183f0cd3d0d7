//! Seeded training-table harness.
//!
//! For every (function, architecture) cell, `runs_per_cell` networks are
//! trained from seeds `base_seed, base_seed + 1, …` and summarised by mean
//! epoch count and success rate (MSE below threshold within the epoch
//! budget). Each converged network is additionally checked bit for bit
//! against `F_f`; that rate is reported separately and does not change
//! what counts as a training success.

use std::io::Write;

use rayon::prelude::*;

use crate::certify::certify_devaney_chaos;
use crate::dynamics::BooleanMap;
use crate::error::Result;
use crate::nn::{
    train, verify_exact_equivalence, Encoding, MlpArchitecture, TrainingConfig, TrainingReport,
};

#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub functions: Vec<BooleanMap>,
    pub architectures: Vec<Vec<usize>>,
    pub encoding: Encoding,
    pub runs_per_cell: usize,
    pub training: TrainingConfig,
    pub base_seed: u64,
}

impl ExperimentSpec {
    /// `f0_2`, `f1_1`, `g1` against hidden layouts `[8]`, `[10]`, `[8, 4]`,
    /// 25 runs per cell.
    pub fn table() -> Self {
        Self {
            functions: ["f0_2", "f1_1", "g1"]
                .iter()
                .map(|n| BooleanMap::builtin(n).expect("builtin"))
                .collect(),
            architectures: vec![vec![8], vec![10], vec![8, 4]],
            encoding: Encoding::OneHot,
            runs_per_cell: 25,
            training: TrainingConfig::default(),
            base_seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub seed: u64,
    pub report: TrainingReport,
    /// The trained network matches `F_f` on every input after thresholding.
    pub exact_equivalent: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellResult {
    pub function: String,
    pub hidden: Vec<usize>,
    pub chaotic: bool,
    pub runs: Vec<RunRecord>,
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    (count > 0).then(|| sum / count as f64)
}

impl CellResult {
    pub fn success_count(&self) -> usize {
        self.runs.iter().filter(|r| r.report.converged).count()
    }

    pub fn success_rate(&self) -> f64 {
        if self.runs.is_empty() {
            return 0.0;
        }
        self.success_count() as f64 / self.runs.len() as f64
    }

    /// Mean epochs over converged runs only.
    pub fn mean_epochs_successful(&self) -> Option<f64> {
        mean(
            self.runs
                .iter()
                .filter(|r| r.report.converged)
                .map(|r| r.report.epochs_used as f64),
        )
    }

    /// Mean epochs over every run, failed ones counted at their stopping
    /// epoch.
    pub fn mean_epochs_all(&self) -> Option<f64> {
        mean(self.runs.iter().map(|r| r.report.epochs_used as f64))
    }

    /// Fraction of converged runs that realize `F_f` exactly.
    pub fn exact_equivalence_rate(&self) -> Option<f64> {
        mean(self.runs.iter().filter(|r| r.report.converged).map(|r| {
            if r.exact_equivalent {
                1.0
            } else {
                0.0
            }
        }))
    }

    pub fn hidden_label(&self) -> String {
        self.hidden
            .iter()
            .map(|h| h.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ExperimentResult {
    pub cells: Vec<CellResult>,
}

impl ExperimentResult {
    pub fn cell(&self, function: &str, hidden: &[usize]) -> Option<&CellResult> {
        self.cells
            .iter()
            .find(|c| c.function == function && c.hidden == hidden)
    }
}

/// Trains every cell of `spec`. Runs execute in parallel; results are
/// ordered by (function, architecture, seed) as listed in `spec`.
pub fn reproduce_table(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    let archs = spec
        .functions
        .iter()
        .flat_map(|f| {
            spec.architectures
                .iter()
                .map(move |h| MlpArchitecture::new(f.n_cells(), spec.encoding, h.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    spec.training.validate()?;

    let jobs: Vec<(usize, u64)> = (0..archs.len())
        .flat_map(|cell| (0..spec.runs_per_cell as u64).map(move |r| (cell, spec.base_seed + r)))
        .collect();
    let n_archs = spec.architectures.len();

    let records = jobs
        .par_iter()
        .map(|&(cell, seed)| {
            let f = &spec.functions[cell / n_archs];
            let arch = &archs[cell];
            let (params, report) = train(arch, f, &spec.training.with_seed(seed))?;
            let exact_equivalent = verify_exact_equivalence(arch, &params, f)?.exact;
            Ok(RunRecord {
                seed,
                report,
                exact_equivalent,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut records = records.into_iter();
    let cells = archs
        .iter()
        .enumerate()
        .map(|(cell, arch)| {
            let f = &spec.functions[cell / n_archs];
            CellResult {
                function: f.label(),
                hidden: arch.hidden.clone(),
                chaotic: certify_devaney_chaos(f).strongly_connected,
                runs: records.by_ref().take(spec.runs_per_cell).collect(),
            }
        })
        .collect();
    Ok(ExperimentResult { cells })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Csv,
}

/// Writes `result` as an aligned text table (one row per cell) or as CSV
/// (one row per run).
pub fn emit_report<W: Write>(
    result: &ExperimentResult,
    format: ReportFormat,
    out: W,
) -> Result<()> {
    match format {
        ReportFormat::Text => write_text(result, out),
        ReportFormat::Csv => write_csv(result, out),
    }
}

fn fmt_opt(v: Option<f64>, scale: f64, suffix: &str) -> String {
    v.map(|v| format!("{:.2}{suffix}", v * scale))
        .unwrap_or_else(|| "-".into())
}

fn write_text<W: Write>(result: &ExperimentResult, mut out: W) -> Result<()> {
    writeln!(
        out,
        "{:<10} {:<11} {:<8} {:>14} {:>15} {:>9} {:>9}",
        "function", "chaos", "hidden", "mean_epoch_ok", "mean_epoch_all", "success", "exact_eq"
    )?;
    for c in &result.cells {
        writeln!(
            out,
            "{:<10} {:<11} {:<8} {:>14} {:>15} {:>8.0}% {:>9}",
            c.function,
            if c.chaotic { "CHAOTIC" } else { "NOT CHAOTIC" },
            c.hidden_label(),
            fmt_opt(c.mean_epochs_successful(), 1.0, ""),
            fmt_opt(c.mean_epochs_all(), 1.0, ""),
            c.success_rate() * 100.0,
            fmt_opt(c.exact_equivalence_rate(), 100.0, "%"),
        )?;
    }
    Ok(())
}

pub const CSV_HEADER: [&str; 9] = [
    "function",
    "hidden",
    "chaotic",
    "seed",
    "converged",
    "epochs",
    "final_mse",
    "exact_equivalent",
    "failure",
];

fn write_csv<W: Write>(result: &ExperimentResult, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for c in &result.cells {
        for r in &c.runs {
            w.write_record([
                c.function.clone(),
                c.hidden_label(),
                c.chaotic.to_string(),
                r.seed.to_string(),
                r.report.converged.to_string(),
                r.report.epochs_used.to_string(),
                format!("{:?}", r.report.final_mse),
                r.exact_equivalent.to_string(),
                r.report.failure.clone().unwrap_or_default(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}
