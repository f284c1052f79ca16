use core::fmt;

use num_complex::Complex64;

pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in the numerical engine.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A function spec violates its parameter invariants.
    InvalidSpec(&'static str),
    /// A quadrature, contour or transform parameter is out of range.
    InvalidParameter(&'static str),
    /// Pointwise evaluation outside the function's mathematical domain.
    Domain { arg: f64 },
    /// The Laplace-to-moment image is not in the catalog.
    UnsupportedMap,
    /// The integrand produced NaN or an infinity at a node.
    NonFiniteIntegrand { at: f64 },
    /// Half-line panel magnitudes kept growing.
    TailDivergence { at: f64 },
    /// `z` lies outside the region where the defining integral converges.
    OutOfDomain { z: Complex64 },
    /// The Mellin transform diverges for every `z`.
    NoStrip,
    /// No cataloged closed form for this (function, transform) pair.
    NoClosedForm,
    /// Evaluation point within `1e-12` of a pole.
    PoleHit { z: Complex64 },
    /// A Bromwich line cannot be placed without a known right boundary.
    UnknownBoundary,
    /// Rectangular inversion needs a rational transform with finitely many poles.
    NotRectangularizable,
    /// A pole lies on the wrong side of a single vertical line.
    SidePoleConflict,
    /// Cauchy reproduction needs `Re z` right of the rectangle.
    ZInsideRectangle,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidSpec(msg) => write!(f, "invalid function spec: {msg}"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::Domain { arg } => write!(f, "argument {arg} outside the function domain"),
            Error::UnsupportedMap => {
                write!(f, "moment-form image is not representable in the catalog")
            }
            Error::NonFiniteIntegrand { at } => write!(f, "integrand is not finite at t = {at}"),
            Error::TailDivergence { at } => {
                write!(f, "half-line integral diverges (panel ending at {at})")
            }
            Error::OutOfDomain { z } => {
                write!(f, "z = {z} outside the transform's region of convergence")
            }
            Error::NoStrip => write!(f, "Mellin transform has an empty holomorphy strip"),
            Error::NoClosedForm => write!(f, "no closed form cataloged for this transform"),
            Error::PoleHit { z } => write!(f, "evaluation point {z} coincides with a pole"),
            Error::UnknownBoundary => write!(f, "transform has no known right boundary"),
            Error::NotRectangularizable => {
                write!(f, "rectangular contour requires a rational transform")
            }
            Error::SidePoleConflict => write!(f, "a pole lies on the wrong side of the line"),
            Error::ZInsideRectangle => write!(f, "z must lie to the right of the rectangle"),
        }
    }
}

impl core::error::Error for Error {}
