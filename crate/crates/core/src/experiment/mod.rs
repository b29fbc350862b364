//! Scenario files, Monte-Carlo runs and parameter sweeps.

mod run;
mod scenario;
pub mod stats;
mod sweep;

pub use run::{
    coefficient_variances, files, run_scenario, simulate, write_outputs, ModeSummary, RunData,
    RunSummary, TrialOutcome, CODE_VERSION,
};
pub use scenario::{symmetric_grid, Diagnostic, Diagnostics, ObjectSpec, Scenario};
pub use sweep::{sweep, sweep_run_dir, SweepAxis, SweepRow, SweepTable};
