//! Parabola-inscribed Poncelet polygon families, their polar families, and
//! numerical checks of the loci, stationary points and conserved quantities
//! that arise from them.
//!
//! The canonical frame throughout is the parabola `x = −y²/(4f)` with focus
//! `(−f, 0)` and a caustic circle of radius `r` centered at the focus.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bicentric;
pub mod centers;
pub mod constants;
pub mod engine;
pub mod family;
pub mod geom;
pub mod loci;
pub mod roots;
pub mod verify;

pub use geom::{CircleSpec, Conic, ConicClass, ConicFeatures, Line, ParabolaStd, ProjPoint, Vec2};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("conic is degenerate (rank < 3)")]
    DegenerateConic,
    #[error("line is contained in the conic")]
    ContainedLine,
    #[error("no metric features for a {0} conic")]
    NoFeatures(ConicClass),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no real tangent from the current point to the caustic")]
    NoTangent,
    #[error("tangent chord meets the outer conic only at its start point")]
    DegenerateChord,
    #[error("closure defect has no sign change on [{lo}, {hi}]")]
    BadBracket { lo: f64, hi: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parameter {0} is in the singular set")]
    SingularParameter(f64),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("configuration does not close (defect {0:e})")]
    ClosureViolation(f64),
    #[error("center X{0} is undefined for this triangle")]
    UndefinedCenter(u32),
    #[error("triangle is degenerate")]
    DegenerateTriangle,
    #[error("input has a vertex at infinity")]
    UnboundedInput,
    #[error("polygon has zero signed area")]
    DegeneratePolygon,
    #[error("trace has no valid samples")]
    EmptyTrace,
    #[error("design matrix is rank deficient")]
    DegenerateFit,
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
