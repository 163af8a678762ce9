//! Working-precision configuration threaded through every evaluation.

use crate::error::{Error, Result};
use crate::real::Real;

/// Decimal digits of working arithmetic and the policies derived from them.
///
/// The context is immutable: evaluations borrow it and never mutate it, so a
/// single context can serve any number of concurrent computations.
#[derive(Debug, Clone)]
pub struct PrecisionContext {
    work_digits: u32,
    target_tol: f64,
    max_terms: u64,
    quad_max_depth: u32,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            work_digits: 50,
            target_tol: 1e-30,
            max_terms: 10_000_000,
            quad_max_depth: 40,
        }
    }
}

const LOG2_10: f64 = 3.321928094887362;

impl PrecisionContext {
    /// Context with `work_digits` decimal digits and a tolerance of
    /// `10^(-work_digits * 3 / 5)`, mirroring the 50-digit / 1e-30 default.
    pub fn with_digits(work_digits: u32) -> Result<Self> {
        let tol = 10f64.powi(-((work_digits as i32) * 3 / 5).max(6));
        Self::new(work_digits, tol, 10_000_000, 40)
    }

    pub fn new(
        work_digits: u32,
        target_tol: f64,
        max_terms: u64,
        quad_max_depth: u32,
    ) -> Result<Self> {
        if work_digits == 0 || max_terms == 0 || quad_max_depth == 0 {
            return Err(Error::InvalidConfig(
                "precision fields must be strictly positive".into(),
            ));
        }
        if !(target_tol > 0.0) {
            return Err(Error::InvalidConfig("target_tol must be positive".into()));
        }
        let ctx = PrecisionContext { work_digits, target_tol, max_terms, quad_max_depth };
        if (work_digits as f64) < 2.0 * -target_tol.log10() {
            // Recommended head-room, not a hard requirement.
            eprintln!(
                "warning: work_digits = {} is below 2*(-log10 target_tol) = {:.0}; \
                 error budgets may dominate results",
                work_digits,
                2.0 * -target_tol.log10()
            );
        }
        Ok(ctx)
    }

    pub fn work_digits(&self) -> u32 {
        self.work_digits
    }

    pub fn target_tol(&self) -> f64 {
        self.target_tol
    }

    pub fn max_terms(&self) -> u64 {
        self.max_terms
    }

    pub fn quad_max_depth(&self) -> u32 {
        self.quad_max_depth
    }

    /// Working precision in bits: the requested digits plus guard bits.
    pub fn bits(&self) -> usize {
        (self.work_digits as f64 * LOG2_10).ceil() as usize + 64
    }

    /// A derived context with the tolerance divided by `factor` (used by the
    /// error-budget honesty tests).
    pub fn tighter(&self, factor: f64) -> Self {
        PrecisionContext {
            work_digits: self.work_digits,
            target_tol: self.target_tol / factor,
            max_terms: self.max_terms,
            quad_max_depth: self.quad_max_depth,
        }
    }

    // -- conversions at this context's precision ---------------------------

    pub fn real(&self, v: f64) -> Real {
        Real::from_f64(v, self.bits())
    }

    pub fn int(&self, v: i64) -> Real {
        Real::from_i64(v, self.bits())
    }

    pub fn uint(&self, v: u64) -> Real {
        Real::from_u64(v, self.bits())
    }

    pub fn ratio(&self, num: i64, den: i64) -> Real {
        Real::from_ratio(num, den, self.bits())
    }

    pub fn parse(&self, s: &str) -> Real {
        Real::parse(s, self.bits())
    }

    pub fn pi(&self) -> Real {
        Real::pi(self.bits())
    }

    pub fn ln2(&self) -> Real {
        Real::ln2(self.bits())
    }

    pub fn ln_int(&self, n: u64) -> Real {
        Real::ln_int(n, self.bits())
    }

    /// Relative rounding unit at the working precision.
    pub fn rounding_unit(&self) -> f64 {
        2f64.powi(-(self.bits() as i32) + 4)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_50_digits() {
        let ctx = PrecisionContext::default();
        assert_eq!(ctx.work_digits(), 50);
        assert!(ctx.bits() >= 230);
        assert_eq!(ctx.target_tol(), 1e-30);
    }

    #[test]
    fn zero_fields_rejected() {
        assert!(PrecisionContext::new(0, 1e-10, 100, 10).is_err());
        assert!(PrecisionContext::new(10, 0.0, 100, 10).is_err());
        assert!(PrecisionContext::new(10, 1e-10, 0, 10).is_err());
        assert!(PrecisionContext::new(10, 1e-10, 100, 0).is_err());
    }
}
