//! File formats, subcommands and the reproduction suite for `monotoric`.

pub mod brute;
pub mod commands;
pub mod schema;
pub mod verify;
