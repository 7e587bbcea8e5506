//! Deformation families, finite differences, and end-to-end checks of the
//! volume derivative formulas.

pub mod fd;
mod family;
mod files;
mod main_finite;
mod report;
pub mod scenarios;
mod suite;
mod verify;

pub use fd::{fd_derivative, unwrap_near, FdEstimate, FdOptions, DEFAULT_STEP};
pub use family::{DeformationFamily, PolyPath};
pub use report::{emit_report, ReportFormat, SubCheck, Tolerance, VerificationReport, EXACT_TOL, FD_ABS_TOL, FD_REL_TOL};
pub use verify::{verify_corollary2, verify_schlafli, Corruption, EDGE_SUM_TOL};
pub use main_finite::{
    gram_tetrahedron, single_leaf_family, verify_main_finite, verify_single_leaf, MainFiniteReport, SINGLE_LEAF_ANGLE,
    SURROGATE_NOTE,
};
pub use files::{PolyhedronFamilyFile, RunSettings, SurfaceFamilyFile};
pub use suite::{run_jobs, Job, run_suite, suite_seed, SEED_VAR};
