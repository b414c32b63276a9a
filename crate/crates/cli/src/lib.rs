//! Config-driven runs of the `ncgeom` verifications with JSON reports.

pub mod config;
pub mod report;
pub mod tasks;

pub use config::{ConfigError, Job, JobConfig, Task, FORMAT_VERSION};
pub use report::{Cell, Report, Table, Verdict};
pub use tasks::{run, TaskError};
