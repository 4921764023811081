//! Command-line front end for the `symarray` library.

pub mod commands;
pub mod output;
pub mod tables;
