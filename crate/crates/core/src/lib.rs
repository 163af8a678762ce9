//! High-precision real analysis of the difference `zeta(s) - psi(1-s)`.
//!
//! The central object is `F(s) = zeta(s) - psi(1-s)` on the open interval
//! (0, 1): this crate evaluates it (and its first two derivatives) through
//! two independent routes, re-verifies every quantitative step of the
//! convexity and monotonicity argument behind it, and certifies the linear
//! bounds `s < F(s) < (gamma0 + 1/2) s + (gamma0 - 1/2)` with explicit error
//! budgets, machine-readable reports, and plot data.
//!
//! Layering, bottom up:
//!
//! * [`real`] / [`precision`] / [`approx`] — arbitrary-precision arithmetic,
//!   the evaluation context, and error-budgeted values;
//! * [`numerics`] — summation, alternating-series acceleration, quadrature,
//!   Euler–Maclaurin ladders, sawtooth integrals, root finding;
//! * [`special`] — zeta with derivatives, digamma/polygamma, Stieltjes
//!   constants;
//! * [`representations`] — the integral forms of F, F', F'' used as the
//!   second, independent evaluation path;
//! * [`certificate`] — the ledger re-deriving every bound in the convexity
//!   argument;
//! * [`inequality`] — grid verification of the linear bounds, the minimum of
//!   `G(s) = F(s) - s`, and the equivalence with the cotangent form.

pub mod approx;
pub mod certificate;
pub mod error;
pub mod inequality;
pub mod numerics;
pub mod precision;
pub mod real;
pub mod report;
pub mod representations;
pub mod special;

pub use approx::Approx;
pub use error::{Error, Result};
pub use precision::PrecisionContext;
pub use real::Real;
