//! File formats, SMART export and the command-line front end for
//! [`tilecheck_core`].
//!
//! - [`ingest`]: ISU-TAS tile and seed files, and the native `TASV1` format
//! - [`smart`]: export of the guarded Petri net as a SMART model
//! - [`report`]: the versioned key/value output format and its parser
//! - [`cli`]: the `tilecheck` command

pub mod cli;
pub mod ingest;
pub mod report;
pub mod smart;

pub use tilecheck_core as core;
