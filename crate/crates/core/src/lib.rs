//! Finite-group multiplication tables viewed as 3-uniform tripartite grids.
//!
//! A group of order `n` induces a grid of `n²` triples `(a, b, a∘b)` whose
//! row, column, and label vertices live in disjoint namespaces. This crate
//! builds those grids for a family of concretely representable groups,
//! constructs dense sub-configurations with exactly counted faces and small
//! vertex spans, provides brute-force oracles that certify optimality at desk
//! scale, and searches subsets of a table for structured subgrids (arithmetic
//! progression grids, combinatorial subspaces, coset grids), assembling
//! machine-checkable certificates along the way.
//!
//! Module map:
//!
//! * [`group`] — group expressions, multiplication tables, axiom checks,
//!   abelian subgroup search, primary decomposition, coset blocks.
//! * [`grids`] — triple systems, configurations and their spans, linearity,
//!   labelled-grid isomorphism, CSV interchange.
//! * [`constructions`] — interval and block-product configurations, the
//!   two chain constructions, and the vertex-budget bound they induce.
//! * [`oracle`] — exhaustive max-faces / min-span searches with explicit
//!   budgets and exhaustiveness reporting.
//! * [`finders`] — desk-scale structure searches and the certificate
//!   pipeline that combines them.

pub mod constructions;
pub mod error;
pub mod finders;
pub mod grids;
pub mod group;
pub mod oracle;

pub(crate) mod arith;

pub use error::{Error, PipelineStage, Result};
