pub mod classify;
pub mod cli;
pub mod cohomology;
pub mod crossed;
pub mod extension;
pub mod fixtures;
pub mod group;
pub mod io;
pub(crate) mod linalg;
pub mod obstruction;
pub mod report;
