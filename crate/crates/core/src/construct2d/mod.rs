//! Planar bodies: the thin orthogonal fractal and the solid rhombus body.

mod body;
mod frame;
mod rhombus;
mod sequence;
mod thin;

pub use body::{
    BaseLevel, Body2D, BodyKind, CornerBlock, Image, Mirror2, Shape2, SolidPiece2, Wall2,
};
pub use frame::RhombusFrame;
pub use rhombus::build_rhombus_body;
pub use sequence::{generate_sequences, Inequality, Policy, SequencePair};
pub use thin::build_thin_orthogonal;


use crate::geom::GeomError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConstructError {
    #[error("invalid seed: need 0 < c1 < c, got c = {c}, c1 = {c1}")]
    InvalidSeed { c: f64, c1: f64 },
    #[error("invalid depth {0}: need N >= 1")]
    InvalidDepth(usize),
    #[error("invalid fraction {0}: need 0 < gamma < 1")]
    InvalidFraction(f64),
    #[error("explicit focus list too short: need {needed}, got {given}")]
    ExplicitTooShort { needed: usize, given: usize },
    #[error("a_{index} violates {inequality}")]
    ConstraintViolation { index: usize, inequality: Inequality },
    #[error("level {index} underflows the floating-point range")]
    Underflow { index: usize },
    #[error("invisibility directions are parallel")]
    ParallelDirections,
    #[error("frame half-width {frame} differs from sequence c_0 = {sequence}")]
    ScaleMismatch { frame: f64, sequence: f64 },
    #[error("pieces {first} and {second} overlap")]
    GeometryOverlap { first: String, second: String },
    #[error(transparent)]
    Geom(#[from] GeomError),
}
