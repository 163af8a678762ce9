//! Error type shared by every evaluation layer.

use thiserror::Error;

/// Errors produced by the numerical layers.
///
/// Domain violations are reported eagerly, before any arithmetic runs, so a
/// caller can distinguish "you asked for something undefined" from "the
/// algorithm did not converge".
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A series tail bound failed to drop below tolerance within the term cap.
    #[error("series tail did not reach tolerance within {terms} terms")]
    TailNotConverged { terms: u64 },

    /// Successive accelerated estimates stopped contracting.
    #[error("alternating-series acceleration stalled")]
    AccelerationStalled,

    /// Adaptive quadrature hit the recursion depth cap before converging.
    #[error("adaptive quadrature exceeded depth {depth}")]
    DepthExceeded { depth: u32 },

    /// A derivative of the requested order was not supplied.
    #[error("derivative of order {order} unavailable")]
    OrderUnavailable { order: usize },

    /// Root bracketing failed: the function has equal signs at both ends.
    #[error("no sign change on [{a}, {b}]")]
    NoBracket { a: f64, b: f64 },

    /// Evaluation was requested exactly at the pole s = 1.
    #[error("pole at s = 1")]
    PoleAtOne,

    /// The argument lies outside the function's domain.
    #[error("argument out of domain: {0}")]
    OutOfDomain(String),

    /// Laurent evaluation requested too far from the expansion point.
    #[error("|s - 1| = {distance} is too far from the pole for the Laurent path")]
    TooFarFromPole { distance: f64 },

    /// More Laurent terms were requested than the evaluator exposes.
    #[error("requested {requested} Laurent terms; at most {max} are supported")]
    TooManyTerms { requested: usize, max: usize },

    /// Power-series evaluation outside its disk of convergence.
    #[error("|z| = {z_abs} is outside the unit disk")]
    OutOfDisk { z_abs: f64 },

    /// Stieltjes-constant index outside the supported range.
    #[error("Stieltjes constant index {k} unsupported (only 0 and 1 are computed)")]
    UnsupportedIndex { k: u32 },

    /// A grid inequality check found a violating abscissa.
    #[error("inequality violated at s = {s}: {detail}")]
    ViolationFound { s: f64, detail: String },

    /// Boundary-limit extrapolation failed to settle.
    #[error("Richardson extrapolation diverged")]
    ExtrapolationDiverged,

    /// An intermediate value became NaN or infinite.
    #[error("non-finite value produced in {0}")]
    NonFinite(String),

    /// Invalid configuration (grid shape, precision fields, ...).
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
