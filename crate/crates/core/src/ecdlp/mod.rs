//! Index calculus on elliptic curves with a QSP factor base, a BSGS baseline
//! and the β-driven complexity model.

mod complexity;
mod curve;
mod index_calculus;
mod semaev;

pub use complexity::{
    complexity_estimate, exponent_at, exponent_limit, exponent_table, generic_threshold, optimal_m,
    published_exponents, ComplexityEstimate, DEFAULT_C, TABLE_BETAS,
};
pub use curve::{bsgs, demo_curve, Curve, CurveInfo, CurvePoint, POINT_COUNT_CAP};
pub use index_calculus::{
    count_decompositions, decompose, gather_relations, lambda_linearized, run_demo, solve_dlog,
    DecompMode, DemoConfig, DemoInstance, DemoReport, FactorBase, Relation, RelationRun,
    DIRECT_CAP,
};
pub use semaev::{phi_map, s3_eval, s3_in_x3, semaev_s3, validate_s3, MPoly, S3Report};
