//! Chebyshev-polynomial acceleration of alternating series.
//!
//! Computes `sum_{n>=1} (-1)^(n-1) coeff(n)` with a number of terms
//! proportional to the requested digits: the combination weights come from
//! Chebyshev polynomials on [0, 1], giving geometric convergence at rate
//! `(3 + sqrt 8)^(-n)` for coefficient sequences that behave like moments.
//! The smooth log-weighted sequences used here are close to but not exactly
//! moment sequences, so two estimates of different depth are formed over one
//! shared set of coefficient evaluations (the weights are cheap, the
//! coefficients are not): their difference is the heuristic budget, and a
//! failure to contract is reported as a stall.

use crate::approx::Approx;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::real::Real;

/// ln(3 + sqrt 8)
const LN_RATE: f64 = 1.762747174039086;

fn term_count(ctx: &PrecisionContext) -> usize {
    let from_tol = (-ctx.target_tol().ln() / LN_RATE).ceil() as usize;
    let from_digits =
        (ctx.work_digits() as f64 * std::f64::consts::LN_10 / LN_RATE).ceil() as usize;
    from_tol.max(from_digits) + 8
}

/// One Chebyshev combination pass of depth `n` over stored coefficients.
fn cvz_pass(coeffs: &[Vec<Real>], m: usize, n: usize, p: usize) -> Vec<Real> {
    let three_p_sqrt8 = &Real::from_u64(3, p) + &Real::from_u64(8, p).sqrt();
    let dn = three_p_sqrt8.powi(n as u64);
    let d = &(&dn + &dn.recip()) / &Real::from_u64(2, p);
    let half = Real::from_ratio(1, 2, p);

    let mut b = -&Real::one(p);
    let mut c = -&d;
    let mut acc = vec![Real::zero(p); m];
    for (k, a_k) in coeffs.iter().take(n).enumerate() {
        c = &b - &c;
        for (i, a) in a_k.iter().enumerate() {
            acc[i] = &acc[i] + &(&c * a);
        }
        let kk = Real::from_u64(k as u64, p);
        let num = &(&kk + &Real::from_u64(n as u64, p)) * &(&kk - &Real::from_u64(n as u64, p));
        let den = &(&kk + &half) * &(&kk + &Real::one(p));
        b = &(&num * &b) / &den;
    }
    acc.into_iter().map(|s| &s / &d).collect()
}

/// Accelerated value of `sum (-1)^(n-1) coeff(n)`.
pub fn accelerated_alternating_sum(
    coeff: impl Fn(u64) -> Real,
    ctx: &PrecisionContext,
) -> Result<Approx> {
    let sums = accelerated_alternating_sums(|n| vec![coeff(n)], 1, ctx)?;
    Ok(sums.into_iter().next().expect("one series requested"))
}

/// Accelerates `m` alternating series sharing one coefficient evaluation.
///
/// `coeffs(n)` returns the n-th coefficient of each series; evaluating them
/// together lets callers reuse one `n^(-s)` per index across log-weighted
/// variants.
pub fn accelerated_alternating_sums(
    coeffs: impl Fn(u64) -> Vec<Real>,
    m: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<Approx>> {
    let p = ctx.bits();
    let n = term_count(ctx);
    let n_shallow = n - 6;

    let mut stored: Vec<Vec<Real>> = Vec::with_capacity(n);
    let mut scale = vec![0f64; m];
    for k in 1..=n as u64 {
        let a_k = coeffs(k);
        if a_k.len() != m {
            return Err(Error::InvalidConfig("coefficient arity changed mid-sum".into()));
        }
        for (i, a) in a_k.iter().enumerate() {
            if !a.is_finite() {
                return Err(Error::NonFinite(format!("alternating coefficient {k}")));
            }
            if k <= 8 {
                scale[i] = scale[i].max(a.to_f64().abs());
            }
        }
        stored.push(a_k);
    }

    let deep = cvz_pass(&stored, m, n, p);
    let shallow = cvz_pass(&stored, m, n_shallow, p);
    let rate = (-LN_RATE * n as f64).exp();

    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let delta = (&deep[i] - &shallow[i]).to_f64().abs();
        let local_scale = scale[i].max(deep[i].to_f64().abs());
        if delta > 1e-5 * local_scale && local_scale > 0.0 {
            return Err(Error::AccelerationStalled);
        }
        let err = (4.0 * delta + 16.0 * local_scale * rate)
            .max(deep[i].to_f64().abs() * ctx.rounding_unit() * n as f64);
        out.push(Approx::new(deep[i].clone(), err)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_harmonic_is_ln2() {
        let ctx = PrecisionContext::default();
        let s = accelerated_alternating_sum(|n| ctx.uint(n).recip(), &ctx).unwrap();
        let diff = (s.value() - &ctx.ln2()).to_f64().abs();
        assert!(diff < 1e-40, "diff = {diff:e}");
        assert!(diff <= s.err());
        assert!(s.err() < 1e-25, "budget too loose: {:e}", s.err());
    }

    #[test]
    fn eta_two_is_pi_sq_over_12() {
        let ctx = PrecisionContext::default();
        let s = accelerated_alternating_sum(|n| ctx.uint(n * n).recip(), &ctx).unwrap();
        let expect = &(&ctx.pi() * &ctx.pi()) / &ctx.uint(12);
        assert!((s.value() - &expect).to_f64().abs() < 1e-40);
    }

    #[test]
    fn stall_detected_on_rough_coefficients() {
        let ctx = PrecisionContext::new(30, 1e-25, 1_000_000, 40).unwrap();
        let r = accelerated_alternating_sum(
            |n| if n % 2 == 0 { ctx.real(1.0) } else { ctx.real(1e-9) },
            &ctx,
        );
        assert!(matches!(r, Err(Error::AccelerationStalled)));
    }
}
