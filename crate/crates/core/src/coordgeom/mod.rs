//! Numeric realization of the four geometries in global coordinates:
//! group products, left-invariant coframes, the hyper-Hermitian and
//! rescaled hyper-Kähler metrics, finite-difference exterior calculus and
//! a finite-difference curvature oracle.
//!
//! All operations are pure functions of `(model, point, step)`; sample
//! points may be processed concurrently with no coordination.

mod curvature;
mod fd;
mod models;
mod sampling;

pub use curvature::{
    cross_validate_curvature, numeric_curvature, orthonormalize_plane, sectional_curvature,
    CrossValidation, CurvatureReport, SectionalSample, CURVATURE_STEP, FIRST_ORDER_STEP,
};
pub use fd::{
    fd_exterior_derivative, frame_form_to_coords, hyperkahler_closedness_check,
    left_invariance_check, structure_equation_check, unrescaled_closedness_defect,
    DeviationVerdict, NumericForm,
};
pub use models::{group_mul, metric_at, model_space, MetricKind, ModelSpace, Point};
pub use sampling::{
    seeded_pairs, seeded_planes, seeded_points, seeded_triples, DEFAULT_SEED,
};
