//! Census files, JSON reports and the `vknot` command line on top of
//! `vknot-core`.

pub mod census;
pub mod cli;
pub mod emit;
pub mod report;

pub use census::{CensusEntry, CensusError, CensusShell};
pub use emit::{CensusDocument, Format, UnknownFormat};
pub use report::{compute_report, InvariantReport, ReportConfig};
