//! File formats, reports and the command-line pipeline around
//! `lfqas-core`.

pub mod circuit_file;
pub mod cli;
pub mod deadline;
pub mod hamiltonian_file;
pub mod oracle;
pub mod pipeline;
pub mod tables;
