//! Monte Carlo power studies, file formats and the command-line front end for
//! the monotone-hazard test in [`monohazard_core`].

pub mod data;
pub mod exec;
pub mod harness;
pub mod output;
pub mod study;

pub use crate::exec::RayonExecutor;
pub use crate::harness::{run_power_study, ExperimentSpec, PowerStudyResult, TestSelection};
pub use crate::output::{emit_results, read_csv, Format};
pub use crate::study::{Preset, StudyFile};
