//! A computed value together with its accumulated error budget.

use crate::error::{Error, Result};
use crate::real::Real;

/// A real value paired with a non-negative bound on its total error
/// (truncation tails plus rounding allowance).
///
/// Budgets are forward estimates in the style of the computations they
/// certify: honest but not directed-rounding intervals. Construction rejects
/// non-finite values and negative or non-finite budgets, so an `Approx` can
/// always be combined without re-checking.
#[derive(Debug, Clone)]
pub struct Approx {
    value: Real,
    err: f64,
}

impl Approx {
    pub fn new(value: Real, err: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::NonFinite("Approx value".into()));
        }
        if !err.is_finite() || err < 0.0 {
            return Err(Error::NonFinite("Approx error budget".into()));
        }
        Ok(Approx { value, err })
    }

    /// An exact value: only the rounding of `value` itself is budgeted.
    pub fn exact(value: Real) -> Result<Self> {
        let slack = value.to_f64().abs() * value.eps();
        Approx::new(value, slack)
    }

    pub fn value(&self) -> &Real {
        &self.value
    }

    pub fn err(&self) -> f64 {
        self.err
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Widens the budget; used when a caller adds its own truncation bound.
    pub fn widen(mut self, extra: f64) -> Self {
        self.err += extra.max(0.0);
        self
    }

    pub fn add(&self, rhs: &Approx) -> Result<Approx> {
        Approx::new(&self.value + &rhs.value, self.err + rhs.err + self.ulp_slack(rhs))
    }

    pub fn sub(&self, rhs: &Approx) -> Result<Approx> {
        Approx::new(&self.value - &rhs.value, self.err + rhs.err + self.ulp_slack(rhs))
    }

    /// Product with first-order budget propagation.
    pub fn mul(&self, rhs: &Approx) -> Result<Approx> {
        let v = &self.value * &rhs.value;
        let err = self.err * rhs.to_f64().abs()
            + rhs.err * self.to_f64().abs()
            + self.err * rhs.err
            + v.to_f64().abs() * v.eps();
        Approx::new(v, err)
    }

    /// Multiplies by an exact scalar.
    pub fn scale(&self, k: &Real) -> Result<Approx> {
        let kf = k.to_f64().abs();
        Approx::new(&self.value * k, self.err * kf + self.to_f64().abs() * kf * k.eps())
    }

    pub fn neg(&self) -> Approx {
        Approx { value: -&self.value, err: self.err }
    }

    /// Quotient with first-order budget propagation; `rhs` must be bounded
    /// away from zero relative to its own budget.
    pub fn div(&self, rhs: &Approx) -> Result<Approx> {
        let vb = rhs.to_f64().abs();
        if !(vb > 2.0 * rhs.err) {
            return Err(Error::NonFinite("division by an uncertain zero".into()));
        }
        let v = &self.value / &rhs.value;
        let err = (self.err + v.to_f64().abs() * rhs.err) / vb + v.to_f64().abs() * v.eps();
        Approx::new(v, err)
    }

    /// |self - rhs| <= combined budgets?
    pub fn agrees_with(&self, rhs: &Approx) -> bool {
        let diff = (&self.value - &rhs.value).to_f64().abs();
        diff <= self.err + rhs.err + 1e-300
    }

    fn ulp_slack(&self, rhs: &Approx) -> f64 {
        let m = self.to_f64().abs().max(rhs.to_f64().abs());
        m * self.value.eps()
    }
}
