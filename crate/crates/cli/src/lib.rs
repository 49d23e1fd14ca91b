//! Command-line front end for the `pairahedra` engine: text and JSON
//! serialization of generators, fixture files, DOT export and the acceptance
//! suite.

pub mod commands;
pub mod dot;
pub mod fixture;
pub mod format;
pub mod suite;
