//! Record logs, parallel scans, verification suites and the command-line
//! front end built on [`cyclomock_core`].

pub mod cli;
pub mod records;
pub mod scan;
pub mod suites;
