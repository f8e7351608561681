//! Command-line front end for `dampwalk`: edge-list files, a rayon trial
//! runner, the oracle cross-checks and the `dampwalk` binary's commands.

pub mod commands;
pub mod io;
pub mod runner;
pub mod verify;

pub use commands::run;
