//! Experiment driver: schemes, training runs, sweeps and output files.

pub mod baseline;
pub mod checkpoint;
pub mod cli;
pub mod error;
pub mod output;
pub mod run;
pub mod scheme;
pub mod sweep;

pub use error::{HarnessError, Result};
pub use output::{emit_plot_data, PlotKind};
pub use run::{evaluate, run_parallel, run_scheme, run_scheme_with, Profile, RunConfig, RunRecord, SimEnv};
pub use scheme::Scheme;
pub use sweep::{sweep, SweepParam};
