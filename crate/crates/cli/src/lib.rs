//! Library side of the `reebseq` command: file formats, reports and dispatch.

pub mod commands;
pub mod files;
pub mod report;

pub use commands::{execute, Cli, CliError, Outcome};
pub use files::{load_e1, load_instance, parse_e1, parse_instance, AbstractE1File, InputError, InstanceFile, LoadedInstance};
pub use report::Report;
