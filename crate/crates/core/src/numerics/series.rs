//! Error-budgeted summation of series with caller-supplied tail bounds.

use crate::approx::Approx;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::real::Real;

/// Sums `term(1) + term(2) + ...` until `tail_bound(N) < ctx.target_tol`.
///
/// `tail_bound(N)` must bound `|sum_{n > N} term(n)|` and be non-increasing;
/// that contract belongs to the caller. The budget of the result is the
/// final tail bound plus a rounding allowance proportional to the number of
/// additions performed.
pub fn sum_with_tail(
    term: impl Fn(u64) -> Real,
    tail_bound: impl Fn(u64) -> f64,
    ctx: &PrecisionContext,
) -> Result<Approx> {
    let mut acc = Real::zero(ctx.bits());
    let mut n = 0u64;
    let tol = ctx.target_tol();
    loop {
        if tail_bound(n) < tol {
            let rounding = (n as f64 + 1.0) * acc.to_f64().abs().max(1.0) * ctx.rounding_unit();
            return Approx::new(acc, tail_bound(n) + rounding);
        }
        if n >= ctx.max_terms() {
            return Err(Error::TailNotConverged { terms: n });
        }
        n += 1;
        let t = term(n);
        if !t.is_finite() {
            return Err(Error::NonFinite(format!("series term at n = {n}")));
        }
        acc = &acc + &t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let ctx = PrecisionContext::new(30, 1e-12, 1_000_000, 40).unwrap();
        let s = sum_with_tail(
            |n| ctx.ratio(1, 1 << n.min(62)),
            |n| 2f64.powi(-(n as i32)),
            &ctx,
        )
        .unwrap();
        assert!((s.to_f64() - 1.0).abs() <= s.err() + 1e-12);
        assert!(s.err() <= 1.1e-12);
    }

    #[test]
    fn finitely_supported_sum_is_exact() {
        let ctx = PrecisionContext::default();
        let s = sum_with_tail(
            |n| if n <= 5 { ctx.uint(n) } else { ctx.real(0.0) },
            |n| if n < 5 { 1.0 } else { 0.0 },
            &ctx,
        )
        .unwrap();
        assert_eq!(s.to_f64(), 15.0);
        assert!(s.err() < 1e-40);
    }

    #[test]
    fn cap_produces_tail_not_converged() {
        let ctx = PrecisionContext::new(30, 1e-12, 100, 40).unwrap();
        let r = sum_with_tail(|_| ctx.real(0.0), |_| 1.0, &ctx);
        assert!(matches!(r, Err(Error::TailNotConverged { .. })));
    }
}
