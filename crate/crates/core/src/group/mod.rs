//! Concrete finite groups: naming, multiplication tables, and the
//! subgroup/coset machinery the structure pipeline runs on.

mod axioms;
mod cosets;
mod decomposition;
mod spec;
mod subgroup;
mod table;

pub use axioms::{verify_group_axioms, AxiomReport};
pub use cosets::{coset_blocks, densest_block, CosetBlock, DensestBlock, Density};
pub use decomposition::{primary_decomposition, PrimaryDecomposition, PrimaryFactor};
pub use spec::{GroupSpec, DEFAULT_ORDER_CAP};
pub use subgroup::{find_abelian_subgroup, Subgroup};
pub use table::{build_group, GroupTable};
