//! File formats, report rendering, and subcommand implementations behind the
//! `dfvs` binary. Kept as a library so tests can drive parsing and command
//! logic directly.

pub mod commands;
pub mod io;
pub mod report;
