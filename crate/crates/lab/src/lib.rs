//! Experiment harness for the `sumprod` library: JSON configs, set builders,
//! rayon-parallel drivers for the expensive set operations, and CSV/JSON
//! reports. The `lab` binary is a thin command-line wrapper over [`run`].

pub mod config;
pub mod error;
pub mod experiments;
pub mod json;
pub mod par;
pub mod report;

pub use config::{Experiment, ExperimentConfig, Format};
pub use error::{LabError, LabResult};
pub use experiments::run;
pub use report::ReportRow;
