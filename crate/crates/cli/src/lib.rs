//! Library side of the `frix` binary, so tests can drive the same code paths.

pub mod commands;
pub mod engine;
pub mod error;
pub mod io;

pub use commands::{run, Cli};
pub use engine::{bench_csv, build_index, loglog_slope, oracle, run_bench, run_queries, BenchConfig, BenchKind, Dataset, Kind};
pub use error::CliError;
