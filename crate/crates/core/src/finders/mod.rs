//! Desk-scale structure finders and the certificate machinery around them.
//!
//! Three exhaustive searches — progression grids in `Z_n × Z_n`,
//! combinatorial subspaces in words, and affine coset grids in
//! `(Z_p)^n × (Z_p)^n` — plus [`structure_pipeline`], which chains the
//! group machinery to one of them and wraps the outcome in a certificate
//! that [`verify_certificate`] can re-check from the raw input data alone.

mod ap_grid;
mod certificates;
mod coset_grid;
pub(crate) mod gf;
mod pipeline;
mod subspace;

pub use ap_grid::find_ap_grid;
pub use certificates::{
    verify_certificate, ApGridCert, BlockSlice, Certificate, CosetGridCert, InnerCert, IsoPairs,
    PipelineCase, PipelineCert, SubspaceCert, VerifyData,
};
pub use coset_grid::{find_coset_grid, DEFAULT_COSET_WORK_CAP};
pub use pipeline::{structure_pipeline, PipelineParams};
pub use subspace::{find_combinatorial_subspace, DEFAULT_SUBSPACE_CAP};
