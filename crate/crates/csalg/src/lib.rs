//! File formats and the command line for `csalg-core`.

pub mod cli;
pub mod formats;
