//! Configuration-driven verification harness behind the `tensorval` binary.

pub mod config;
pub mod experiments;
pub mod report;

pub use config::{Config, ConfigError, Experiment, Shape};
pub use experiments::{preset_config, run_config, run_experiment, HarnessError, RunDefaults};
pub use report::{ExperimentResult, Report};
