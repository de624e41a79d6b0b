//! Verification engine for left-invariant hypercomplex geometry on
//! four-dimensional Lie groups.
//!
//! The crate has two halves that check each other:
//!
//! - an exact layer ([`exalg`], [`liealg`], [`quatstruct`], [`catalog`])
//!   working in rational arithmetic: exterior algebra over the dual of a
//!   Lie algebra, the Chevalley-Eilenberg differential, quaternionic
//!   structure checks, the Lee-form solver and Levi-Civita curvature;
//! - a numeric layer ([`coordgeom`]) realizing the same geometries in
//!   global coordinates, with finite-difference oracles for exterior
//!   derivatives and curvature that cross-validate the exact results.
//!
//! All values are immutable and all operations are pure functions, so
//! everything can be evaluated concurrently and shared across threads.

pub mod catalog;
pub mod coordgeom;
pub mod error;
pub mod exalg;
pub mod ingest;
pub mod liealg;
pub mod matrix;
pub mod quatstruct;

pub use catalog::{all_cases, get_case, induce_structure, CaseId, CatalogCase};
pub use error::{Error, Result};
pub use exalg::{IndexTuple, KForm, Scalar};
pub use liealg::{
    curvature_exact, levi_civita, Connection, ExactCurvature, JacobiVerdict, LieAlgebra,
    MetricOnAlgebra,
};
pub use quatstruct::{
    conformal_class_verdict, fundamental_form, hermitian_check, integrability_check,
    lee_form, nijenhuis, quaternion_check, ConformalClass, Endo, HypercomplexStructure,
    HyperHermitianData, LeeFormResult,
};
