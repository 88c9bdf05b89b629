//! Channel-spec ingestion, manifest runs and report emission behind the CLI.

pub mod report;
pub mod run;
pub mod spec;

pub use report::{render_table, report, ReportOutputs};
pub use run::{execute, run, Protocol, ResultDocument, RunManifest, RunOutputs, RunResult};
pub use spec::{load_channel, load_channel_document, save_channel, ChannelSpecDocument, Layer, LoadedChannel};

use crate::error::Error;

/// Process exit code for an error: 3 for capacity, 1 for I/O, 2 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Capacity { .. } => 3,
        Error::Io(_) => 1,
        _ => 2,
    }
}
