//! Library surface of the CLI: the structure-file format and the command
//! implementations, kept out of `main` so they can be tested directly.

pub mod commands;
pub mod file;

pub use file::{emit_structure, load_structure, parse_structure, FileError, StructureFile};
