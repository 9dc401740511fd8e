//! Batch front end: scenario files, subcommands and the verification matrix.

pub mod commands;
pub mod reference;
pub mod scenario;
pub mod verify;
