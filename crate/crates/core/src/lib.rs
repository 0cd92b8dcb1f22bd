//! Invisible fractal bodies: construction, billiard tracing and numerical
//! certification of invisibility.

// `!(a < b)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod construct2d;
pub mod construct3d;
pub mod export;
pub mod geom;
pub mod io;
pub mod tracer;
pub mod verify;

pub use construct2d::{
    build_rhombus_body, build_thin_orthogonal, generate_sequences, Body2D, ConstructError, Policy,
    RhombusFrame, SequencePair,
};
pub use construct3d::{build_body3, Body3D};
pub use geom::{Ray2, Ray3, Vec2, Vec3, Vector};
pub use tracer::{nearest_hit, trace, Scene, TraceRecord, TraceStatus};
pub use verify::{
    audit_homothety, audit_sequences, resistance, verify_invisibility, verify_shading, verify_case_analysis,
    FlowSpec, Sampling, VerificationReport, VerifyError,
};
