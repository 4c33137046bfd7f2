//! File I/O, reports and the benchmark harness behind the `mtensor` binary.

pub mod bench;
pub mod format;
pub mod report;

pub use bench::{run_bench, BenchConfig, BenchOutcome, BenchRow, TrialRecord};
pub use format::{parse_tensor, read_tensor, render_tensor, write_tensor, FormatError, Storage};
