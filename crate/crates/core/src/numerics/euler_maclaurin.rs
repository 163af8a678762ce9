//! Euler–Maclaurin correction ladders for series tails.
//!
//! For a smooth decaying `f` with derivatives available in closed form,
//!
//! ```text
//! sum_{m > N} f(m) = int_N^oo f  -  f(N)/2  -  sum_{j>=1} B_2j/(2j)! f^(2j-1)(N)
//! ```
//!
//! truncated after a chosen number of Bernoulli pairs; the ladder is
//! asymptotic, so the budget is the magnitude of the first omitted term.

use crate::approx::Approx;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::real::Real;

use super::bernoulli::{bernoulli, MAX_INDEX};
use super::logpoly::LogPoly;

/// Most correction pairs any ladder uses; keeps the estimate of the first
/// omitted term inside the Bernoulli cache.
pub const MAX_PAIRS: usize = MAX_INDEX / 2 - 1;

/// A function with closed-form derivatives, as the correction ladder needs.
pub trait SmoothTail {
    /// `f(x), f'(x), ..., f^(max_order)(x)`, or None when derivatives of the
    /// requested order cannot be supplied.
    fn derivatives_at(&self, x: &Real, max_order: usize) -> Option<Vec<Real>>;

    /// `int_x^oo f`, or None when no closed form is available.
    fn integral_to_inf(&self, x: &Real) -> Option<Real>;
}

/// `-f(N)/2 - sum_{j=1}^{pairs} B_2j/(2j)! f^(2j-1)(N)`, with the first
/// omitted term as the budget.
pub fn em_correction_terms(
    f: &impl SmoothTail,
    n: u64,
    pairs: usize,
    ctx: &PrecisionContext,
) -> Result<(Real, f64)> {
    let p = ctx.bits();
    let max_order = 2 * pairs + 1;
    let derivs = f
        .derivatives_at(&ctx.uint(n), max_order)
        .ok_or(Error::OrderUnavailable { order: max_order })?;

    let mut acc = &derivs[0] / &Real::from_i64(-2, p);
    let mut fact = Real::one(p); // (2j)!
    let mut omitted = 0.0f64;
    for j in 1..=pairs + 1 {
        fact = &fact * &Real::from_u64((2 * j - 1) as u64, p);
        fact = &fact * &Real::from_u64((2 * j) as u64, p);
        let term = &(&bernoulli(2 * j, p) / &fact) * &derivs[2 * j - 1];
        if j <= pairs {
            acc = &acc - &term;
        } else {
            omitted = term.to_f64().abs();
        }
    }
    if !acc.is_finite() {
        return Err(Error::NonFinite("Euler-Maclaurin corrections".into()));
    }
    Ok((acc, 2.0 * omitted))
}

/// `sum_{m > N} f(m)` via the correction ladder with a fixed pair count.
pub fn euler_maclaurin_tail(
    f: &impl SmoothTail,
    n: u64,
    pairs: usize,
    ctx: &PrecisionContext,
) -> Result<Approx> {
    if pairs > MAX_PAIRS {
        return Err(Error::InvalidConfig(format!("at most {MAX_PAIRS} correction pairs")));
    }
    let x = ctx.uint(n);
    let integral = f
        .integral_to_inf(&x)
        .ok_or(Error::OrderUnavailable { order: 0 })?;
    let (corr, omitted) = em_correction_terms(f, n, pairs, ctx)?;
    let value = &integral + &corr;
    let rounding = value.to_f64().abs().max(1.0) * ctx.rounding_unit() * (pairs as f64 + 2.0);
    Approx::new(value, omitted + rounding)
}

/// Like [`euler_maclaurin_tail`] but free to advance the ladder point: terms
/// between `n` and a point far enough out for the asymptotic ladder to reach
/// tolerance are summed directly, and the pair count grows until the
/// corrections drop below tolerance (or stop shrinking).
pub fn euler_maclaurin_tail_auto(
    f: &impl SmoothTail,
    n: u64,
    ctx: &PrecisionContext,
) -> Result<Approx> {
    let p = ctx.bits();
    // The ladder's smallest reachable term scales like e^(-2 pi M); this M
    // leaves ample room for the requested digits.
    let m_point = n.max((0.4 * ctx.work_digits() as f64).ceil() as u64 + 12);
    let mut direct = Real::zero(p);
    for k in n + 1..=m_point {
        let x = ctx.uint(k);
        let vals = f.derivatives_at(&x, 0).ok_or(Error::OrderUnavailable { order: 0 })?;
        direct = &direct + &vals[0];
    }

    let x = ctx.uint(m_point);
    let integral = f
        .integral_to_inf(&x)
        .ok_or(Error::OrderUnavailable { order: 0 })?;
    let max_order = 2 * MAX_PAIRS + 1;
    let derivs = f
        .derivatives_at(&x, max_order)
        .ok_or(Error::OrderUnavailable { order: max_order })?;

    let mut acc = &(&direct + &integral) + &(&derivs[0] / &Real::from_i64(-2, p));
    let scale = acc.to_f64().abs().max(derivs[0].to_f64().abs()).max(1e-300);
    let mut fact = Real::one(p);
    let mut prev_mag = f64::INFINITY;
    let mut budget = 0.0f64;
    for j in 1..=MAX_PAIRS {
        fact = &fact * &Real::from_u64((2 * j - 1) as u64, p);
        fact = &fact * &Real::from_u64((2 * j) as u64, p);
        let term = &(&bernoulli(2 * j, p) / &fact) * &derivs[2 * j - 1];
        let mag = term.to_f64().abs();
        if mag > prev_mag {
            // Asymptotic ladder started diverging: stop, budget the term.
            budget = 2.0 * mag;
            break;
        }
        acc = &acc - &term;
        budget = 2.0 * mag;
        prev_mag = mag;
        if mag < ctx.target_tol() * scale.min(1.0) {
            break;
        }
    }
    let rounding =
        acc.to_f64().abs().max(1.0) * ctx.rounding_unit() * (m_point - n + 16) as f64;
    Approx::new(acc, budget + rounding)
}

// ---------------------------------------------------------------------------
// SmoothTail implementations
// ---------------------------------------------------------------------------

/// Log-polynomial kernels carry their own exact derivative chain.
impl SmoothTail for LogPoly {
    fn derivatives_at(&self, x: &Real, max_order: usize) -> Option<Vec<Real>> {
        let mut out = Vec::with_capacity(max_order + 1);
        let mut pt = self.powers_at(x);
        let inv_x = x.recip();
        let mut d = self.clone();
        out.push(d.eval_at(&pt));
        for _ in 0..max_order {
            d = d.derivative();
            // The power rises by one per derivative: x^-(b+k) = x^-b * x^-k.
            pt.inv_pow = &pt.inv_pow * &inv_x;
            out.push(d.eval_at(&pt));
        }
        Some(out)
    }

    fn integral_to_inf(&self, x: &Real) -> Option<Real> {
        if (self.neg_power() - &Real::one(x.prec())).is_positive() {
            let pt = self.powers_at(x);
            Some(LogPoly::integral_to_inf(self, &pt, x))
        } else {
            None
        }
    }
}

/// `scale / (x + shift)^exponent` with integer exponent >= 2: the workhorse
/// for polygamma-style sums, all divisions and multiplications.
#[derive(Debug, Clone)]
pub struct ShiftedPower {
    pub scale: Real,
    pub shift: Real,
    pub exponent: u32,
}

impl SmoothTail for ShiftedPower {
    fn derivatives_at(&self, x: &Real, max_order: usize) -> Option<Vec<Real>> {
        let p = x.prec().max(self.scale.prec());
        let u = x + &self.shift;
        let inv_u = u.recip();
        let base = &self.scale * &inv_u.powi(self.exponent as u64);
        let mut out = Vec::with_capacity(max_order + 1);
        let mut cur = base;
        out.push(cur.clone());
        for d in 0..max_order {
            let factor = Real::from_i64(-((self.exponent as i64) + d as i64), p);
            cur = &(&cur * &factor) * &inv_u;
            out.push(cur.clone());
        }
        Some(out)
    }

    fn integral_to_inf(&self, x: &Real) -> Option<Real> {
        if self.exponent < 2 {
            return None;
        }
        let p = x.prec().max(self.scale.prec());
        let u = x + &self.shift;
        let em1 = Real::from_u64(self.exponent as u64 - 1, p);
        Some(&(&self.scale / &em1) * &u.recip().powi(self.exponent as u64 - 1))
    }
}

/// A function handed over without any derivative table; every ladder request
/// on it reports [`Error::OrderUnavailable`].
pub struct NoDerivatives;

impl SmoothTail for NoDerivatives {
    fn derivatives_at(&self, _x: &Real, _max_order: usize) -> Option<Vec<Real>> {
        None
    }

    fn integral_to_inf(&self, _x: &Real) -> Option<Real> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_square_tail_past_ten() {
        // Frozen from the brute oracle in tests/properties.rs: sum over
        // n in (10, 10^7] of n^-2, plus the analytic remainder past 10^7.
        let ctx = PrecisionContext::default();
        let f = LogPoly::power(ctx.real(2.0), ctx.bits());
        let tail = euler_maclaurin_tail(&f, 10, 2, &ctx).unwrap();
        // Two pairs at N = 10 leave the B_6 term (~4e-9) as the budget.
        assert!((tail.to_f64() - 0.09516633568168575).abs() <= tail.err());
        assert!((tail.to_f64() - 0.09516633568168575).abs() < 1e-8);

        let tail_auto = euler_maclaurin_tail_auto(&f, 10, &ctx).unwrap();
        assert!((tail_auto.to_f64() - 0.09516633568168575).abs() < 1e-15);
    }

    #[test]
    fn cube_tail_is_zeta3_minus_one() {
        let ctx = PrecisionContext::default();
        let f = LogPoly::power(ctx.real(3.0), ctx.bits());
        let tail = euler_maclaurin_tail_auto(&f, 1, &ctx).unwrap();
        // zeta(3) - 1, 30 digits
        let expect = ctx.parse("0.202056903159594285399738161511");
        assert!((tail.value() - &expect).to_f64().abs() < 1e-25);
    }

    #[test]
    fn missing_derivatives_is_order_unavailable() {
        let ctx = PrecisionContext::default();
        let r = euler_maclaurin_tail(&NoDerivatives, 5, 3, &ctx);
        assert!(matches!(r, Err(Error::OrderUnavailable { .. })));
    }

    #[test]
    fn shifted_power_matches_logpoly_on_integer_shift() {
        let ctx = PrecisionContext::default();
        // sum_{n > 4} 1/n^3 computed either way
        let a = euler_maclaurin_tail_auto(&LogPoly::power(ctx.real(3.0), ctx.bits()), 4, &ctx)
            .unwrap();
        let f = ShiftedPower { scale: ctx.real(1.0), shift: ctx.real(2.0), exponent: 3 };
        let b = euler_maclaurin_tail_auto(&f, 2, &ctx).unwrap();
        assert!(a.agrees_with(&b));
    }
}
