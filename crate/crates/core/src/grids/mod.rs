//! 3-uniform tripartite grids: triple systems over disjoint row, column, and
//! label universes, configurations inside them, and their interchange format.

mod config;
mod csv;
mod iso;
mod system;

pub use config::{Configuration, Span};
pub use csv::{read_csv, write_csv};
pub use iso::{is_isomorphic, GridIsomorphism, DEFAULT_ISO_BUDGET};
pub use system::{check_linear, Triple, TripleSystem};
