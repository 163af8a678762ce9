//! Evaluation grids with endpoint insets.

use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::real::Real;

/// A uniform grid on `[lo + inset, hi - inset]`.
///
/// The inset keeps abscissae strictly inside an open interval whose endpoint
/// behavior is checked separately by limit extrapolation.
#[derive(Debug, Clone)]
pub struct GridSpec {
    lo: f64,
    hi: f64,
    n_points: usize,
    inset: f64,
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, n_points: usize, inset: f64) -> Result<Self> {
        if !(inset > 0.0) {
            return Err(Error::InvalidConfig("inset must be positive".into()));
        }
        if n_points < 2 {
            return Err(Error::InvalidConfig("need at least two grid points".into()));
        }
        if !(lo + inset < hi - inset) {
            return Err(Error::InvalidConfig(
                "interval too narrow for the inset".into(),
            ));
        }
        Ok(GridSpec { lo, hi, n_points, inset })
    }

    /// The open unit interval with the given resolution and inset.
    pub fn unit(n_points: usize, inset: f64) -> Result<Self> {
        GridSpec::new(0.0, 1.0, n_points, inset)
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn inset(&self) -> f64 {
        self.inset
    }

    /// Strictly increasing abscissae at working precision.
    pub fn abscissae(&self, ctx: &PrecisionContext) -> Vec<Real> {
        let a = ctx.real(self.lo + self.inset);
        let b = ctx.real(self.hi - self.inset);
        let step = &(&b - &a) / &ctx.uint(self.n_points as u64 - 1);
        (0..self.n_points)
            .map(|i| {
                if i + 1 == self.n_points {
                    b.clone()
                } else {
                    &a + &(&step * &ctx.uint(i as u64))
                }
            })
            .collect()
    }
}
