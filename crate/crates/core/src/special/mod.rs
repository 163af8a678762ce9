//! Real-argument special functions: zeta with derivatives up to order three,
//! digamma and polygamma, Stieltjes constants, and the named constants.

pub mod digamma;
pub mod stieltjes;
pub mod zeta;

pub use digamma::{digamma, polygamma, psi_series};
pub use stieltjes::{stieltjes_gamma, StieltjesConstants};
pub use zeta::{zeta, zeta_deriv, zeta_laurent, zeta_with_derivs, POLE_BAND};

use crate::precision::PrecisionContext;
use crate::real::Real;

/// `ln(2 pi)`.
pub fn log_2pi(ctx: &PrecisionContext) -> Real {
    &ctx.pi().ln() + &ctx.ln2()
}

/// `pi^2 / 6`.
pub fn pi_sq_over_6(ctx: &PrecisionContext) -> Real {
    let pi = ctx.pi();
    &(&pi * &pi) / &ctx.uint(6)
}
