use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use chaosnet::certify::{strongly_connected, IterationGraph};
use chaosnet::dynamics::{chaotic_iterate, BooleanMap, Configuration, PhasePoint, Strategy};
use chaosnet::experiment::{emit_report, reproduce_table, ExperimentSpec, ReportFormat};
use chaosnet::metric::{phase_distance_parts, TruncationPolicy};
use chaosnet::nn::{
    load_model, save_model, train, verify_exact_equivalence, Encoding, MlpArchitecture,
    TrainingConfig,
};

/// Chaotic iterations, chaos certificates and recurrent MLPs.
///
/// Functions are builtin names (f0_1, f0_2, f1_1, g0, g1, f0:<N>, f1:<N>)
/// or paths to truth-table files.
#[derive(Parser)]
#[command(name = "chaosnet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether G_f is chaotic via strong connectivity of its graph of iterations.
    Certify {
        function: String,
        /// Write the arcs of the graph, one `x -i-> y` per line.
        #[arg(long)]
        emit_graph: Option<PathBuf>,
    },
    /// Print the chaotic iterations of a function.
    Iterate {
        function: String,
        #[arg(long)]
        x0: String,
        /// `periodic:1,2,3`, `random:<seed>`, optionally preceded by `prefix:…;`.
        #[arg(long)]
        strategy: String,
        #[arg(long)]
        steps: usize,
    },
    /// Distance between two phase points.
    Distance {
        #[arg(long)]
        x1: String,
        #[arg(long)]
        s1: String,
        #[arg(long)]
        x2: String,
        #[arg(long)]
        s2: String,
        #[arg(long, default_value_t = TruncationPolicy::DEFAULT_DEPTH)]
        trunc_depth: u32,
    },
    /// Train a perceptron on F_f and save it.
    Train {
        function: String,
        /// Hidden layer sizes, e.g. `10` or `8,4`.
        #[arg(long, default_value = "10", value_delimiter = ',')]
        hidden: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "one_hot")]
        enc: String,
        #[arg(long, default_value_t = 1000)]
        max_epochs: usize,
        #[arg(long, default_value_t = 1e-2)]
        threshold: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a saved model against F_f on every input.
    Verify {
        function: String,
        #[arg(long)]
        model: PathBuf,
    },
    /// Train every (function, architecture) cell of the table.
    ReproduceTable {
        #[arg(long, default_value_t = 25)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> chaosnet::Result<ExitCode> {
    match cli.command {
        Command::Certify {
            function,
            emit_graph,
        } => {
            let f = BooleanMap::resolve(&function)?;
            let graph = IterationGraph::build(&f);
            if let Some(path) = emit_graph {
                graph.write_arcs(BufWriter::new(File::create(path)?))?;
            }
            let cert = strongly_connected(&graph);
            println!(
                "function: {} (N={}, sha256 {})",
                cert.function,
                cert.n_cells,
                &cert.table_hash[..16]
            );
            println!("arcs: {}", graph.arc_count());
            println!("scc_count: {}", cert.scc_count);
            if cert.strongly_connected {
                println!("CHAOTIC (Devaney, via Theorem: strongly connected)");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("NOT CHAOTIC");
                if let Some((u, v)) = cert.witness {
                    println!("witness: no path from {u} to {v}");
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Iterate {
            function,
            x0,
            strategy,
            steps,
        } => {
            let f = BooleanMap::resolve(&function)?;
            let x0: Configuration = x0.parse()?;
            let s = Strategy::parse(&strategy, f.n_cells())?;
            for (n, (k, x)) in s
                .terms()
                .zip(chaotic_iterate(&f, x0, &s, steps)?)
                .enumerate()
            {
                println!("{:>6}  S={k:<2} {x}", n + 1);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Distance {
            x1,
            s1,
            x2,
            s2,
            trunc_depth,
        } => {
            let x1: Configuration = x1.parse()?;
            let x2: Configuration = x2.parse()?;
            let p1 = PhasePoint::new(Strategy::parse(&s1, x1.n_cells())?, x1)?;
            let p2 = PhasePoint::new(Strategy::parse(&s2, x2.n_cells())?, x2)?;
            let trunc = TruncationPolicy::new(trunc_depth)?;
            let d = phase_distance_parts(&p1, &p2, trunc)?;
            println!("d_e = {}", d.config);
            println!("d_s = {:.*}", trunc.depth() as usize, d.strategy());
            println!("d   = {:.*}", trunc.depth() as usize, d.value());
            Ok(ExitCode::SUCCESS)
        }
        Command::Train {
            function,
            hidden,
            seed,
            enc,
            max_epochs,
            threshold,
            out,
        } => {
            let f = BooleanMap::resolve(&function)?;
            let arch = MlpArchitecture::new(f.n_cells(), Encoding::parse(&enc)?, hidden)?;
            let cfg = TrainingConfig {
                max_epochs,
                mse_threshold: threshold,
                seed,
                ..Default::default()
            };
            let (params, report) = train(&arch, &f, &cfg)?;
            save_model(&out, &arch, &params)?;
            println!("architecture: {}", report.architecture);
            println!("converged: {}", report.converged);
            println!("epochs: {}", report.epochs_used);
            println!("final_mse: {:e}", report.final_mse);
            if let Some(why) = &report.failure {
                println!("stopped: {why}");
            }
            let eq = verify_exact_equivalence(&arch, &params, &f)?;
            println!(
                "exact_equivalence: {} ({} mismatches of {})",
                eq.exact,
                eq.failures.len(),
                eq.checked
            );
            Ok(if report.converged {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Verify { function, model } => {
            let f = BooleanMap::resolve(&function)?;
            let (arch, params) = load_model(model)?;
            let eq = verify_exact_equivalence(&arch, &params, &f)?;
            for m in &eq.failures {
                println!(
                    "mismatch: k={} x={} expected {} got {}",
                    m.cell, m.input, m.expected, m.actual
                );
            }
            if eq.exact {
                println!("EXACT ({} inputs)", eq.checked);
                Ok(ExitCode::SUCCESS)
            } else {
                println!(
                    "NOT EXACT ({} of {} inputs differ)",
                    eq.failures.len(),
                    eq.checked
                );
                Ok(ExitCode::from(1))
            }
        }
        Command::ReproduceTable { runs, seed, csv } => {
            let spec = ExperimentSpec {
                runs_per_cell: runs,
                base_seed: seed,
                ..ExperimentSpec::table()
            };
            let result = reproduce_table(&spec)?;
            emit_report(&result, ReportFormat::Text, io::stdout().lock())?;
            if let Some(path) = csv {
                emit_report(
                    &result,
                    ReportFormat::Csv,
                    BufWriter::new(File::create(path)?),
                )?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
