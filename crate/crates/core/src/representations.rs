//! Integral representations of zeta, digamma, and the difference
//! `F(s) = zeta(s) - psi(1-s)` with its derivatives.
//!
//! Everything here evaluates the displayed integral formulas directly —
//! sawtooth integrals over [1, oo) and log-kernel integrals over (0, 1) —
//! so results can be compared against the series-based `special` module as a
//! genuinely independent route. The (0,1) kernels go through the exponential
//! substitution `t = e^(-v)`; the [1,oo) kernels through per-unit exact
//! antiderivatives.

use crate::approx::Approx;
use crate::error::{Error, Result};
use crate::numerics::expkernel::{exp_kernel_diff, exp_kernel_moments};
use crate::numerics::quadrature::{adaptive_quadrature, adaptive_quadrature_opts, QuadOptions};
use crate::numerics::logpoly::LogPoly;
use crate::numerics::sawtooth::{sawtooth_integral_auto, sawtooth_integral_multi_auto};
use crate::precision::PrecisionContext;
use crate::real::Real;
use crate::special::stieltjes::stieltjes_gamma;

/// The sawtooth-weighted kernel family on [1, oo):
/// `({t} - 1/2) * q_order(s, ln t) / t^(s+1)` with
/// `q_0 = 1`, `q_1 = s L - 1`, `q_2 = (2 - s L) L`.
#[derive(Debug, Clone)]
pub struct FractionalPartIntegrand {
    s: Real,
    order: u8,
}

impl FractionalPartIntegrand {
    pub fn new(s: &Real, order: u8) -> Result<Self> {
        let sf = s.to_f64();
        if !(0.0 < sf && sf < 1.0) {
            return Err(Error::OutOfDomain(format!(
                "sawtooth kernel family needs 0 < s < 1, got {sf}"
            )));
        }
        if order > 2 {
            return Err(Error::InvalidConfig("derivative order must be 0, 1 or 2".into()));
        }
        Ok(FractionalPartIntegrand { s: s.clone(), order })
    }

    /// The smooth factor as a log polynomial over `t^(s+1)`.
    pub fn kernel(&self, ctx: &PrecisionContext) -> LogPoly {
        kernel_of_order(&self.s, self.order, ctx)
    }
}

fn kernel_of_order(s: &Real, order: u8, ctx: &PrecisionContext) -> LogPoly {
    let p = ctx.bits();
    let b = s + &Real::one(p);
    match order {
        0 => LogPoly::power(b, p),
        1 => LogPoly::new(b, vec![-&Real::one(p), s.clone()]),
        _ => LogPoly::new(b, vec![Real::zero(p), Real::from_u64(2, p), -s]),
    }
}

/// `zeta(s) = 1/(s-1) + 1/2 - s int_1^oo ({t}-1/2)/t^(s+1) dt` for `s > -1`.
pub fn zeta_via_stieltjes_integral(s: &Real, ctx: &PrecisionContext) -> Result<Approx> {
    let sf = s.to_f64();
    if sf <= -1.0 {
        return Err(Error::OutOfDomain(format!("integral representation needs s > -1, got {sf}")));
    }
    let p = ctx.bits();
    let one = Real::one(p);
    if (s - &one).is_zero() {
        return Err(Error::PoleAtOne);
    }
    let base = Approx::exact((s - &one).recip())?.add(&Approx::exact(Real::from_ratio(1, 2, p))?)?;
    if s.is_zero() {
        // The integral enters multiplied by s.
        return Ok(base);
    }
    let w = LogPoly::power(s + &one, p);
    let sw = sawtooth_integral_auto(&w, 1, ctx)?;
    base.sub(&sw.scale(s)?)
}

/// `psi(x) = -gamma0 + int_0^1 (1 - t^(x-1))/(1-t) dt` for `x > 0`, by
/// adaptive quadrature with a series-integrated sliver at the upper edge.
pub fn digamma_via_integral(x: &Real, ctx: &PrecisionContext) -> Result<Approx> {
    let xf = x.to_f64();
    if !(xf > 0.0) {
        return Err(Error::OutOfDomain(format!("integral representation needs x > 0, got {xf}")));
    }
    let p = ctx.bits();
    let one = Real::one(p);
    let gamma0 = stieltjes_gamma(0, ctx)?;

    // The integrand extends continuously to t = 1 (value x - 1); the last
    // 10^-3 is integrated through the binomial series to sidestep the
    // 0/0 cancellation there.
    let split = 1e-3;
    let upper = &one - &ctx.real(split);
    let exponent = x - &one;

    let main = adaptive_quadrature_opts(
        |t| {
            let tp = if exponent.is_zero() { one.clone() } else { t.pow(&exponent) };
            &(&one - &tp) / &(&one - t)
        },
        &Real::zero(p),
        &upper,
        &QuadOptions {
            lo_singularity: if xf < 1.0 { Some(xf - 1.0) } else { None },
            ..Default::default()
        },
        ctx,
    )?;

    // int_0^delta (1 - (1-u)^(x-1))/u du = - sum_{k>=1} C(x-1, k) (-delta)^k / k
    let delta = ctx.real(split);
    let mut term = exponent.clone(); // C(x-1, 1)
    let mut sliver = Real::zero(p);
    let mut sign_pow = -&delta; // (-delta)^k
    for k in 1u64..64 {
        let contrib = &(&term * &sign_pow) / &Real::from_u64(k, p);
        sliver = &sliver - &contrib;
        if contrib.to_f64().abs() < ctx.target_tol() * 1e-3 && k > 2 {
            break;
        }
        // C(x-1, k+1) = C(x-1, k) * (x-1-k)/(k+1)
        term = &(&term * &(&exponent - &Real::from_u64(k, p))) / &Real::from_u64(k + 1, p);
        sign_pow = &sign_pow * &(-&delta);
    }

    gamma0
        .neg()
        .add(&main)?
        .add(&Approx::new(sliver, ctx.target_tol() * 1e-3)?)
}

/// `F(s)` assembled from the two integral representations:
/// `1/2 - s int_1^oo ({t}-1/2)/t^(s+1) + 1/(s-1) - int_0^1 (1-t^(-s))/(1-t) + gamma0`.
pub fn f_direct(s: &Real, ctx: &PrecisionContext) -> Result<Approx> {
    let sf = s.to_f64();
    if !(0.0 < sf && sf < 1.0) {
        return Err(Error::OutOfDomain(format!("F is defined on 0 < s < 1, got {sf}")));
    }
    let p = ctx.bits();
    let one = Real::one(p);
    let w = kernel_of_order(s, 0, ctx);
    let sw = sawtooth_integral_auto(&w, 1, ctx)?;
    // int_0^1 (1 - t^(-s))/(1-t) dt -> int_0^oo (e^(-v) - e^(-(1-s)v)) rho(v) dv
    let i01 = exp_kernel_diff(&one, &(&one - s), ctx)?;
    let gamma0 = stieltjes_gamma(0, ctx)?;

    Approx::exact(Real::from_ratio(1, 2, p))?
        .sub(&sw.scale(s)?)?
        .add(&Approx::exact((s - &one).recip())?)?
        .sub(&i01)?
        .add(&gamma0)
}

/// `F'(s)` from the term-by-term differentiated representation:
/// `int_1^oo ({t}-1/2)(s ln t - 1)/t^(s+1) - 1/(s-1)^2 - int_0^1 t^(-s) ln t/(1-t)`.
pub fn f_prime_integral(s: &Real, ctx: &PrecisionContext) -> Result<Approx> {
    let (fp, _) = f_derivatives_integral(s, ctx)?;
    Ok(fp)
}

/// The two exposed pieces of `F''(s) = J(s) + P(s)`.
#[derive(Debug, Clone)]
pub struct SecondDerivativeParts {
    /// `J(s) = int_1^oo ({t}-1/2)(2 - s ln t)(ln t)/t^(s+1) dt`
    pub j_integral: Approx,
    /// `P(s) = 2/(s-1)^3 + int_0^1 t^(-s) ln^2 t/(1-t) dt`
    pub p_integral: Approx,
    /// `J + P`
    pub total: Approx,
}

/// `F''(s)` from the twice-differentiated representation.
pub fn f_second_integral(s: &Real, ctx: &PrecisionContext) -> Result<SecondDerivativeParts> {
    let (_, parts) = f_derivatives_integral(s, ctx)?;
    Ok(parts)
}

/// `F'` and the pieces of `F''` in one pass: the two sawtooth kernels share
/// their power, the two (0,1) kernels share their exponential substitution.
pub fn f_derivatives_integral(
    s: &Real,
    ctx: &PrecisionContext,
) -> Result<(Approx, SecondDerivativeParts)> {
    let sf = s.to_f64();
    if !(0.0 < sf && sf < 1.0) {
        return Err(Error::OutOfDomain(format!("F is defined on 0 < s < 1, got {sf}")));
    }
    let p = ctx.bits();
    let one = Real::one(p);

    let w1 = kernel_of_order(s, 1, ctx);
    let w2 = kernel_of_order(s, 2, ctx);
    let sw = sawtooth_integral_multi_auto(&[w1, w2], 1, ctx)?;

    let c = &one - s;
    let moments = exp_kernel_moments(&[1, 2], &c, ctx)?;

    // F' = SW_1 - 1/(s-1)^2 + moment_1   [ln t = -v flips the sign]
    let s_m1 = s - &one;
    let inv_sq = Approx::exact(s_m1.recip().powi(2))?;
    let f_prime = sw[0].sub(&inv_sq)?.add(&moments[0])?;

    // P = 2/(s-1)^3 + moment_2;  J = SW_2
    let pole_cube = Approx::exact(&Real::from_u64(2, p) / &s_m1.powi(3))?;
    let p_integral = pole_cube.add(&moments[1])?;
    let j_integral = sw[1].clone();
    let total = j_integral.add(&p_integral)?;

    Ok((f_prime, SecondDerivativeParts { j_integral, p_integral, total }))
}

/// Both sides of the cubic-kernel integration-by-parts identity
/// `int_0^1 (u-1/2) f = (f(1)-f(0))/8 - (f'(1)+f'(0))/48 + int_0^1 (u-1/2)^3/6 f''`.
pub fn cubic_kernel_identity_check(
    f: impl Fn(&Real) -> Real,
    df: impl Fn(&Real) -> Real,
    d2f: impl Fn(&Real) -> Real,
    ctx: &PrecisionContext,
) -> Result<(Approx, Approx)> {
    let p = ctx.bits();
    let zero = Real::zero(p);
    let one = Real::one(p);
    let half = Real::from_ratio(1, 2, p);

    let lhs = adaptive_quadrature(|u| &(u - &half) * &f(u), &zero, &one, ctx)?;

    let boundary = &(&(&f(&one) - &f(&zero)) / &Real::from_u64(8, p))
        - &(&(&df(&one) + &df(&zero)) / &Real::from_u64(48, p));
    let kernel_int = adaptive_quadrature(
        |u| {
            let d = u - &half;
            &(&(&(&d * &d) * &d) / &Real::from_u64(6, p)) * &d2f(u)
        },
        &zero,
        &one,
        ctx,
    )?;
    let rhs = Approx::exact(boundary)?.add(&kernel_int)?;
    Ok((lhs, rhs))
}

/// Observed remainder of the [1, oo) sawtooth integral truncated at an
/// integer `t0`, for checking against the analytic envelope.
pub fn sawtooth_tail_observed(
    s: &Real,
    order: u8,
    t0: u64,
    ctx: &PrecisionContext,
) -> Result<Approx> {
    let w = kernel_of_order(s, order, ctx);
    crate::numerics::sawtooth::sawtooth_remainder(&w, t0, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn zeta_integral_matches_series_at_two() {
        let c = ctx();
        let a = zeta_via_stieltjes_integral(&c.real(2.0), &c).unwrap();
        let b = special::zeta(&c.real(2.0), &c).unwrap();
        assert!(a.agrees_with(&b), "{} vs {}", a.to_f64(), b.to_f64());
    }

    #[test]
    fn zeta_integral_at_zero_is_exact() {
        let c = ctx();
        let a = zeta_via_stieltjes_integral(&c.real(0.0), &c).unwrap();
        assert!((a.to_f64() + 0.5).abs() < 1e-45);
    }

    #[test]
    fn zeta_integral_matches_series_at_half() {
        let c = ctx();
        let a = zeta_via_stieltjes_integral(&c.real(0.5), &c).unwrap();
        let b = special::zeta(&c.real(0.5), &c).unwrap();
        let diff = (a.value() - b.value()).to_f64().abs();
        assert!(diff <= 1e-10, "diff {diff:e}");
        assert!(a.agrees_with(&b));
    }

    #[test]
    fn digamma_integral_trivial_points() {
        let c = ctx();
        // x = 1: integrand vanishes identically.
        let d1 = digamma_via_integral(&c.real(1.0), &c).unwrap();
        let g0 = special::stieltjes_gamma(0, &c).unwrap();
        assert!((d1.value() + g0.value()).to_f64().abs() < 1e-35);
        // x = 2: the integrand is exactly 1.
        let d2 = digamma_via_integral(&c.real(2.0), &c).unwrap();
        let expect = &Real::one(c.bits()) - g0.value();
        assert!((d2.value() - &expect).to_f64().abs() < 1e-30);
    }

    #[test]
    fn digamma_integral_matches_asymptotic_path() {
        let c = ctx();
        for xf in [0.5, 0.25, 1.75, 3.2] {
            let x = c.real(xf);
            let a = digamma_via_integral(&x, &c).unwrap();
            let b = special::digamma(&x, &c).unwrap();
            assert!(
                a.agrees_with(&b),
                "x={xf}: {} vs {} ({:e}/{:e})",
                a.to_f64(),
                b.to_f64(),
                a.err(),
                b.err()
            );
        }
    }

    #[test]
    fn f_direct_midpoint_against_composition() {
        let c = ctx();
        let s = c.real(0.5);
        let direct = f_direct(&s, &c).unwrap();
        let zeta_half = special::zeta(&s, &c).unwrap();
        let psi_half = special::digamma(&s, &c).unwrap();
        let composed = zeta_half.sub(&psi_half).unwrap();
        assert!(
            direct.agrees_with(&composed),
            "{} vs {}",
            direct.to_f64(),
            composed.to_f64()
        );
        assert!((direct.to_f64() - 0.5031555).abs() < 1e-6);
    }

    #[test]
    fn f_derivatives_match_composition_at_half() {
        let c = ctx();
        let s = c.real(0.5);
        let (fp, parts) = f_derivatives_integral(&s, &c).unwrap();

        let zd = special::zeta_with_derivs(&s, 2, &c).unwrap();
        let one_minus_s = &Real::one(c.bits()) - &s;
        let psi1 = special::polygamma(1, &one_minus_s, &c).unwrap();
        let psi2 = special::polygamma(2, &one_minus_s, &c).unwrap();

        // F' = zeta'(s) + psi'(1-s); F'' = zeta''(s) - psi''(1-s)
        let fp_comp = zd[1].add(&psi1).unwrap();
        let fpp_comp = zd[2].sub(&psi2).unwrap();
        let d1 = (fp.value() - fp_comp.value()).to_f64().abs();
        let d2 = (parts.total.value() - fpp_comp.value()).to_f64().abs();
        assert!(d1 < 1e-10 && fp.agrees_with(&fp_comp), "F' diff {d1:e}");
        assert!(d2 < 1e-10 && parts.total.agrees_with(&fpp_comp), "F'' diff {d2:e}");
    }

    #[test]
    fn cubic_kernel_identity_on_polynomials() {
        let c = ctx();
        let p = c.bits();
        // f(u) = 1: both sides zero by symmetry.
        let (l, r) = cubic_kernel_identity_check(
            |_| Real::one(p),
            |_| Real::zero(p),
            |_| Real::zero(p),
            &c,
        )
        .unwrap();
        assert!(l.to_f64().abs() < 1e-40 && r.to_f64().abs() < 1e-40);

        // f(u) = u: both sides 1/12.
        let (l, r) = cubic_kernel_identity_check(
            |u| u.clone(),
            |_| Real::one(p),
            |_| Real::zero(p),
            &c,
        )
        .unwrap();
        let twelfth = c.ratio(1, 12);
        assert!((l.value() - &twelfth).to_f64().abs() < 1e-40);
        assert!((r.value() - &twelfth).to_f64().abs() < 1e-40);

        // f(u) = u^2: both sides 1/12 again.
        let (l, r) = cubic_kernel_identity_check(
            |u| u * u,
            |u| u * &Real::from_u64(2, p),
            |_| Real::from_u64(2, p),
            &c,
        )
        .unwrap();
        assert!((l.value() - &twelfth).to_f64().abs() < 1e-40);
        assert!((r.value() - &twelfth).to_f64().abs() < 1e-40);
    }
}
