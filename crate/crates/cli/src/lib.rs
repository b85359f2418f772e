//! Loading, checking and generating structure files for the `hopfcat` tool.

pub mod fixtures;
pub mod format;
pub mod gen;
pub mod suite;
