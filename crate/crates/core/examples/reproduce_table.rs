// Trains every (function, architecture) cell of the benchmark table and
// prints the summary. Pass a run count to shrink or grow the table.
//
//     cargo run --release --example reproduce_table -- 25

use std::io;

use chaosnet::experiment::{emit_report, reproduce_table, ExperimentSpec, ReportFormat};

pub fn main() {
    let runs = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(25);
    let spec = ExperimentSpec {
        runs_per_cell: runs,
        ..ExperimentSpec::table()
    };
    let result = reproduce_table(&spec).expect("experiment");
    emit_report(&result, ReportFormat::Text, io::stdout().lock()).expect("report");
}
