//! Digamma and polygamma on the positive half-line.

use crate::approx::Approx;
use crate::error::{Error, Result};
use crate::numerics::bernoulli::{bernoulli, bernoulli_abs_f64};
use crate::numerics::euler_maclaurin::{euler_maclaurin_tail_auto, ShiftedPower};
use crate::precision::PrecisionContext;
use crate::real::Real;

use super::zeta;

/// Bernoulli pairs spent in the asymptotic series.
const ASYMPTOTIC_TERMS: usize = 12;

fn lift_target(ctx: &PrecisionContext) -> f64 {
    // 20 suffices for ~47 digits with twelve terms; push the switchover out
    // proportionally when more is asked for.
    (ctx.work_digits() as f64 / 2.0).max(20.0)
}

/// `psi(x)` for `x > 0`: recurrence lift into the asymptotic zone, then the
/// `ln z - 1/2z - sum B_2j/(2j z^2j)` series with the first omitted term as
/// budget.
pub fn digamma(x: &Real, ctx: &PrecisionContext) -> Result<Approx> {
    let xf = x.to_f64();
    if !(xf > 0.0) || !x.is_positive() {
        return Err(Error::OutOfDomain(format!("digamma needs x > 0, got {xf}")));
    }
    let p = ctx.bits();
    let target = lift_target(ctx);

    let mut shift = Real::zero(p);
    let steps = if xf < target { (target - xf).ceil() as u64 } else { 0 };
    for i in 0..steps {
        shift = &shift + &(x + &ctx.uint(i)).recip();
    }
    let z = x + &ctx.uint(steps);

    // ln z - 1/(2z) - sum_j B_2j / (2j z^2j)
    let inv_z = z.recip();
    let inv_z2 = &inv_z * &inv_z;
    let mut acc = &z.ln() - &(&inv_z * &Real::from_ratio(1, 2, p));
    let mut z_pow = Real::one(p);
    for j in 1..=ASYMPTOTIC_TERMS {
        z_pow = &z_pow * &inv_z2;
        let term = &(&bernoulli(2 * j, p) / &Real::from_u64(2 * j as u64, p)) * &z_pow;
        acc = &acc - &term;
    }
    let zf = z.to_f64();
    let omitted = bernoulli_abs_f64(2 * (ASYMPTOTIC_TERMS + 1))
        / (2.0 * (ASYMPTOTIC_TERMS as f64 + 1.0))
        * zf.powi(-2 * (ASYMPTOTIC_TERMS as i32 + 1));
    let value = &acc - &shift;
    let rounding =
        value.to_f64().abs().max(1.0) * ctx.rounding_unit() * (steps as f64 + 16.0);
    Approx::new(value, omitted + rounding)
}

/// `psi^(m)(x)` for m in {1, 2} and `x > 0`, by the shifted-power series
/// `(-1)^(m+1) m! sum_n (x+n)^-(m+1)` with an Euler–Maclaurin tail.
pub fn polygamma(m: u32, x: &Real, ctx: &PrecisionContext) -> Result<Approx> {
    if !(1..=2).contains(&m) {
        return Err(Error::InvalidConfig("polygamma order must be 1 or 2".into()));
    }
    let xf = x.to_f64();
    if !(xf > 0.0) || !x.is_positive() {
        return Err(Error::OutOfDomain(format!("polygamma needs x > 0, got {xf}")));
    }
    let p = ctx.bits();
    let m_fact = if m == 1 { 1u64 } else { 2 };

    // Direct terms n = 0..=N0, tail from N0 (the ladder advances on its own).
    let n0 = 8u64;
    let mut acc = Real::zero(p);
    for n in 0..=n0 {
        acc = &acc + &(x + &ctx.uint(n)).recip().powi(m as u64 + 1);
    }
    acc = &acc * &ctx.uint(m_fact);
    let f = ShiftedPower { scale: ctx.uint(m_fact), shift: x.clone(), exponent: m + 1 };
    let tail = euler_maclaurin_tail_auto(&f, n0, ctx)?;
    let total = Approx::exact(acc)?.add(&tail)?;
    Ok(if m == 2 { total.neg() } else { total })
}

/// `psi(z + 1)` by the power series `-gamma0 + sum_{j>=2} (-1)^j zeta(j) z^(j-1)`
/// on the open unit disk.
pub fn psi_series(z: &Real, ctx: &PrecisionContext) -> Result<Approx> {
    let zf = z.to_f64();
    if zf.abs() >= 1.0 {
        return Err(Error::OutOfDisk { z_abs: zf.abs() });
    }
    let gamma0 = super::stieltjes::stieltjes_gamma(0, ctx)?;
    let mut acc = gamma0.neg();
    if z.is_zero() {
        return Ok(acc);
    }

    let mut z_pow = z.clone(); // z^(j-1)
    let mut j = 2u32;
    let mut trunc;
    loop {
        let zeta_j = zeta_at_integer(j, ctx)?;
        let term = zeta_j.scale(&z_pow)?;
        acc = if j % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
        // Geometric remainder: |sum_{i>j}| <= zeta(j+1) |z|^j / (1 - |z|).
        trunc = 1.7 * zf.abs().powi(j as i32) / (1.0 - zf.abs());
        if trunc < ctx.target_tol() {
            break;
        }
        if j > 200_000 {
            return Err(Error::TailNotConverged { terms: j as u64 });
        }
        z_pow = &z_pow * z;
        j += 1;
    }
    Ok(acc.widen(trunc))
}

/// `zeta(j)` at integer `j >= 2`, with the cheap `1 + 2^-j` shortcut once the
/// third term is below tolerance.
fn zeta_at_integer(j: u32, ctx: &PrecisionContext) -> Result<Approx> {
    let p = ctx.bits();
    if (j as f64) * 3f64.ln() > -(ctx.target_tol().ln()) + 3.0 {
        let two_pow = Real::from_ratio(1, 2, p).powi(j as u64);
        let value = &Real::one(p) + &two_pow;
        let trunc = 2.0 * 3f64.powi(-(j as i32));
        return Approx::new(value, trunc);
    }
    zeta::zeta(&ctx.uint(j as u64), ctx)
}
