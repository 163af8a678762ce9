//! Oscillatory integrals against the centered sawtooth `{t} - 1/2`.
//!
//! `int_a^oo ({t} - 1/2) w(t) dt` for a log-polynomial kernel `w` is summed
//! per unit interval with exact antiderivatives — blind quadrature across the
//! sawtooth's corners would waste its effort — and the remainder past an
//! integer `T` collapses, by repeated integration by parts against the
//! periodized Bernoulli polynomials, to
//!
//! ```text
//! int_T^oo ({t}-1/2) w(t) dt = - sum_{j>=1} B_2j/(2j)! * w^(2j-2)(T),
//! ```
//!
//! an asymptotic ladder whose budget is the first omitted term.
//!
//! Several kernels over the same power `t^(-b)` can be integrated in one
//! pass: the per-endpoint exponential is the only expensive operation and it
//! depends on `b` alone.

use crate::approx::Approx;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::real::Real;

use super::bernoulli::bernoulli;
use super::euler_maclaurin::MAX_PAIRS;
use super::logpoly::{LogPoly, PointPowers};

/// `int_from^oo ({t}-1/2) w(t) dt` with an explicit unit count before the
/// ladder takes over.
pub fn sawtooth_integral_to_inf(
    w: &LogPoly,
    from: u64,
    units: u64,
    ctx: &PrecisionContext,
) -> Result<Approx> {
    Ok(sawtooth_integral_multi(std::slice::from_ref(w), from, units, ctx)?
        .into_iter()
        .next()
        .expect("one kernel"))
}

/// Unit count chosen adaptively: extend while the ladder budget exceeds the
/// target tolerance relative to the kernel scale, capped at 10^4 units.
pub fn sawtooth_integral_auto(w: &LogPoly, from: u64, ctx: &PrecisionContext) -> Result<Approx> {
    Ok(sawtooth_integral_multi_auto(std::slice::from_ref(w), from, ctx)?
        .into_iter()
        .next()
        .expect("one kernel"))
}

/// Multi-kernel variant; all kernels must share the same `neg_power`.
pub fn sawtooth_integral_multi_auto(
    ws: &[LogPoly],
    from: u64,
    ctx: &PrecisionContext,
) -> Result<Vec<Approx>> {
    let scale = ws
        .iter()
        .map(|w| w.eval(&ctx.uint(2)).to_f64().abs())
        .fold(0.0f64, f64::max);
    let mut t = 32u64.max(from + 1);
    while t < 10_000 {
        let worst = ws
            .iter()
            .map(|w| ladder_tail(w, t, ctx).map(|(_, e)| e))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0f64, f64::max);
        if worst <= ctx.target_tol() * scale.max(1.0) {
            break;
        }
        t *= 4;
    }
    sawtooth_integral_multi(ws, from, t.min(10_000) - from, ctx)
}

/// Shared-power walk over the unit intervals plus one ladder per kernel.
pub fn sawtooth_integral_multi(
    ws: &[LogPoly],
    from: u64,
    units: u64,
    ctx: &PrecisionContext,
) -> Result<Vec<Approx>> {
    let p = ctx.bits();
    debug_assert!(!ws.is_empty());
    debug_assert!(
        ws.iter().all(|w| w.neg_power() == ws[0].neg_power()),
        "kernels must share a power to share endpoint exponentials"
    );

    struct Anti {
        a_w: super::logpoly::LogPolyAntiderivative,
        a_tw: super::logpoly::LogPolyAntiderivative,
    }
    let antis: Vec<Anti> = ws
        .iter()
        .map(|w| {
            let tw = LogPoly::new(w.neg_power() - &Real::one(p), w.coeffs().to_vec());
            Anti { a_w: w.antiderivative(), a_tw: tw.antiderivative() }
        })
        .collect();

    // (A_w(n), A_tw(n)) for every kernel, one exponential for all of them.
    let eval_all = |n: u64| -> Vec<(Real, Real)> {
        let x = ctx.uint(n);
        let pt = ws[0].powers_at_int(n);
        let pt_tw = PointPowers { ln_x: pt.ln_x.clone(), inv_pow: &pt.inv_pow * &x };
        antis
            .iter()
            .map(|a| (a.a_w.eval_at(&pt, &x), a.a_tw.eval_at(&pt_tw, &x)))
            .collect()
    };

    let mut acc = vec![Real::zero(p); ws.len()];
    let mut lo = eval_all(from);
    for n in from..from + units {
        let hi = eval_all(n + 1);
        let center = &ctx.uint(n) + &ctx.ratio(1, 2);
        for (i, a) in acc.iter_mut().enumerate() {
            let d_tw = &hi[i].1 - &lo[i].1;
            let d_w = &hi[i].0 - &lo[i].0;
            *a = &*a + &(&d_tw - &(&center * &d_w));
        }
        lo = hi;
    }

    let mut out = Vec::with_capacity(ws.len());
    for (i, w) in ws.iter().enumerate() {
        let (tail, tail_err) = ladder_tail(w, from + units, ctx)?;
        let value = &acc[i] + &tail;
        if !value.is_finite() {
            return Err(Error::NonFinite("sawtooth integral".into()));
        }
        let rounding =
            (units as f64 + 4.0) * value.to_f64().abs().max(1.0) * ctx.rounding_unit();
        out.push(Approx::new(value, tail_err + rounding)?);
    }
    Ok(out)
}

/// The pure ladder value from an integer point: the remainder
/// `int_t^oo ({u}-1/2) w(u) du` with its budget.
pub fn sawtooth_remainder(w: &LogPoly, t: u64, ctx: &PrecisionContext) -> Result<Approx> {
    let (value, err) = ladder_tail(w, t, ctx)?;
    Approx::new(value, err)
}

/// `- sum_j B_2j/(2j)! w^(2j-2)(T)` with adaptive depth.
fn ladder_tail(w: &LogPoly, t: u64, ctx: &PrecisionContext) -> Result<(Real, f64)> {
    let p = ctx.bits();
    let x = ctx.uint(t);
    let inv_x = x.recip();
    let mut pt = w.powers_at_int(t);
    let mut d = w.clone();
    let mut fact = Real::one(p); // (2j)!
    let mut prev_mag = f64::INFINITY;
    let mut budget;

    fact = &fact * &Real::from_u64(2, p);
    let mut term = &(&bernoulli(2, p) / &fact) * &d.eval_at(&pt);
    let mut acc = -&term;
    budget = term.to_f64().abs();
    for j in 2..=MAX_PAIRS {
        for _ in 0..2 {
            d = d.derivative();
            pt.inv_pow = &pt.inv_pow * &inv_x;
        }
        fact = &fact * &Real::from_u64((2 * j - 1) as u64, p);
        fact = &fact * &Real::from_u64((2 * j) as u64, p);
        term = &(&bernoulli(2 * j, p) / &fact) * &d.eval_at(&pt);
        let mag = term.to_f64().abs();
        if mag > prev_mag {
            budget = 2.0 * mag;
            break;
        }
        acc = &acc - &term;
        budget = 2.0 * mag;
        prev_mag = mag;
        if mag < ctx.target_tol() * 1e-3 {
            break;
        }
    }
    Ok((acc, budget))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Simpson brute force over unit intervals, the independent oracle.
    fn brute(wf: impl Fn(f64) -> f64, from: u64, units: u64) -> f64 {
        let mut acc = 0.0;
        for n in from..from + units {
            let m = 400;
            let h = 1.0 / m as f64;
            let mut s = 0.0;
            for i in 0..m {
                let a = n as f64 + i as f64 * h;
                let b = a + h;
                let mid = 0.5 * (a + b);
                let f = |t: f64| (t - n as f64 - 0.5) * wf(t);
                s += (f(a) + 4.0 * f(mid) + f(b)) * h / 6.0;
            }
            acc += s;
        }
        acc
    }

    #[test]
    fn matches_brute_force_for_inverse_square() {
        let ctx = PrecisionContext::default();
        let w = LogPoly::power(ctx.real(2.0), ctx.bits());
        let ours = sawtooth_integral_auto(&w, 1, &ctx).unwrap();
        let brute_val = brute(|t| t.powi(-2), 1, 3000);
        assert!(
            (ours.to_f64() - brute_val).abs() < 1e-7,
            "{} vs {}",
            ours.to_f64(),
            brute_val
        );
    }

    #[test]
    fn log_weighted_kernel_against_brute_force() {
        let ctx = PrecisionContext::default();
        let s = 0.5f64;
        // (2 - s ln t) ln t / t^(s+1)
        let w = LogPoly::new(ctx.real(s + 1.0), vec![ctx.real(0.0), ctx.real(2.0), ctx.real(-s)]);
        let ours = sawtooth_integral_auto(&w, 1, &ctx).unwrap();
        // The brute window stops at 4001 units; its own truncation is ~6e-6.
        let brute_val = brute(|t| (2.0 - s * t.ln()) * t.ln() / t.powf(s + 1.0), 1, 4000);
        assert!(
            (ours.to_f64() - brute_val).abs() < 1.5e-5,
            "{} vs {}",
            ours.to_f64(),
            brute_val
        );
    }

    #[test]
    fn window_consistency() {
        let ctx = PrecisionContext::default();
        let w = LogPoly::new(ctx.real(1.7), vec![ctx.real(1.0), ctx.real(0.3)]);
        let a = sawtooth_integral_to_inf(&w, 1, 150, &ctx).unwrap();
        let b = sawtooth_integral_to_inf(&w, 1, 700, &ctx).unwrap();
        assert!(a.agrees_with(&b), "{} vs {} ({} / {})", a.to_f64(), b.to_f64(), a.err(), b.err());
    }

    #[test]
    fn multi_kernel_matches_single_calls() {
        let ctx = PrecisionContext::default();
        let b = ctx.real(1.4);
        let w1 = LogPoly::new(b.clone(), vec![ctx.real(-1.0), ctx.real(0.4)]);
        let w2 = LogPoly::new(b.clone(), vec![ctx.real(0.0), ctx.real(2.0), ctx.real(-0.4)]);
        let both = sawtooth_integral_multi(&[w1.clone(), w2.clone()], 1, 200, &ctx).unwrap();
        let one = sawtooth_integral_to_inf(&w1, 1, 200, &ctx).unwrap();
        let two = sawtooth_integral_to_inf(&w2, 1, 200, &ctx).unwrap();
        assert!(both[0].agrees_with(&one));
        assert!(both[1].agrees_with(&two));
    }
}
