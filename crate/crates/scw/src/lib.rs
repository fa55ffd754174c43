//! Text formats, verification suites and the command-line front end for
//! `scw-core`.

pub mod cli;
pub mod format;
pub mod verify;
