use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Stages of the structure pipeline, used to report where a search stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PipelineStage {
    AbelianSubgroup,
    DensestBlock,
    Decomposition,
    BranchSelection,
    ApSearch,
    SubspaceSearch,
    Isomorphism,
}

#[derive(Debug, Error)]
pub enum Error {
    /// A group expression failed to parse or named an unsupported group.
    #[error("invalid group expression: {0}")]
    InvalidSpec(String),

    /// The requested group's order exceeds the configured cap.
    #[error("group order {order} exceeds the cap of {cap}")]
    SpecTooLarge { order: u64, cap: u64 },

    /// A multiplication table or triple list violates a structural rule.
    #[error("malformed table: {0}")]
    InvalidTable(String),

    /// A search for a subobject came up empty.
    #[error("not found: {0}")]
    NotFound(String),

    /// A subgroup expected to be abelian has a non-commuting pair.
    #[error("subgroup is not abelian: elements {a} and {b} do not commute")]
    NotAbelian { a: usize, b: usize },

    /// A claimed subgroup fails closure, identity, or membership checks.
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),

    /// A vertex lies outside the universe of the grid that hosts it.
    #[error("out of universe: {0}")]
    OutOfUniverse(String),

    /// A numeric argument violates a documented precondition.
    #[error("argument out of range: {0}")]
    OutOfRange(String),

    /// The vertex budget is too small for any configuration of this shape.
    #[error("vertex budget too small: {0}")]
    BudgetTooSmall(String),

    /// The ambient grid is too small to host the requested configuration.
    #[error("ambient grid too small: {0}")]
    GridTooSmall(String),

    /// The ambient group's dimension is too small for the requested shape.
    #[error("ambient dimension too small: {0}")]
    DimensionTooSmall(String),

    /// The request is satisfiable by no object at all (not a budget issue).
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A search was refused up front because its enumeration would be too
    /// large; the message states the estimate and the cap.
    #[error("search cap exceeded: {0}")]
    CapExceeded(String),

    /// A search ran out of its node budget before reaching a verdict.
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    /// The structure pipeline could not complete; `stage` names the step.
    #[error("structure search failed at {stage:?}: {detail}")]
    SearchFailed {
        stage: PipelineStage,
        detail: String,
    },

    /// Text input (CSV, words file, certificate JSON) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
