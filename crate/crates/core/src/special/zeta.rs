//! The Riemann zeta function and its first three derivatives on the real
//! line right of -1.
//!
//! Three routes, chosen by argument:
//!
//! * `s >= 1.05` — Dirichlet sum with an Euler–Maclaurin ladder; the
//!   log-weighted kernels give the derivatives from the same pass.
//! * `0 < s <= 0.95` — the alternating (eta) series under Chebyshev
//!   acceleration, converted through `zeta = eta / (1 - 2^(1-s))`; the same
//!   conversion differentiated gives the derivative chain.
//! * `|s - 1| < 0.05` — the Laurent expansion about the pole with an
//!   internally tabulated run of Stieltjes constants; the alternating route
//!   would cancel against the conversion factor there.
//! * `-1 < s <= 0` — the sawtooth integral representation
//!   `zeta(s) = 1/(s-1) + 1/2 - s int_1^oo ({t}-1/2) t^(-s-1) dt`.

use crate::approx::Approx;
use crate::error::{Error, Result};
use crate::numerics::alternating::accelerated_alternating_sums;
use crate::numerics::euler_maclaurin::em_correction_terms;
use crate::numerics::logpoly::LogPoly;
use crate::numerics::sawtooth::sawtooth_integral_auto;
use crate::precision::PrecisionContext;
use crate::real::Real;

use super::stieltjes::{stieltjes_table, table_err, StieltjesConstants, TABLE_MAX_K};

/// Half-width of the band around s = 1 routed to the Laurent expansion.
pub const POLE_BAND: f64 = 0.05;

/// `zeta(s)` for real `s > -1`, `s != 1`.
pub fn zeta(s: &Real, ctx: &PrecisionContext) -> Result<Approx> {
    let sf = s.to_f64();
    if sf <= -1.0 {
        return Err(Error::OutOfDomain(format!("zeta needs s > -1, got {sf}")));
    }
    if (s - &Real::one(s.prec())).is_zero() {
        return Err(Error::PoleAtOne);
    }
    if sf <= 0.0 {
        return zeta_integral_left(s, ctx);
    }
    Ok(zeta_with_derivs(s, 0, ctx)?.remove(0))
}

/// `zeta^(k)(s)` for k in 1..=3 and real `s > 0`, `s != 1`.
pub fn zeta_deriv(s: &Real, k: u32, ctx: &PrecisionContext) -> Result<Approx> {
    if !(1..=3).contains(&k) {
        return Err(Error::InvalidConfig("derivative order must be 1, 2 or 3".into()));
    }
    Ok(zeta_with_derivs(s, k, ctx)?.remove(k as usize))
}

/// `[zeta(s), zeta'(s), ..., zeta^(k_max)(s)]` sharing one evaluation pass.
pub fn zeta_with_derivs(s: &Real, k_max: u32, ctx: &PrecisionContext) -> Result<Vec<Approx>> {
    let sf = s.to_f64();
    if (s - &Real::one(s.prec())).is_zero() {
        return Err(Error::PoleAtOne);
    }
    if sf <= 0.0 {
        return Err(Error::OutOfDomain(format!(
            "derivative-capable paths need s > 0, got {sf}"
        )));
    }
    debug_assert!(k_max <= 3);
    if (sf - 1.0).abs() < POLE_BAND {
        laurent_near_pole(s, k_max, ctx)
    } else if sf > 1.0 {
        em_dirichlet(s, k_max, ctx)
    } else {
        eta_route(s, k_max, ctx)
    }
}

/// Truncated Laurent development `1/(s-1) + gamma0 - gamma1 (s-1)` with a
/// remainder bound calibrated against the series route at two probe points.
///
/// `k_terms` beyond the two tabulated constants are not offered.
pub fn zeta_laurent(
    s: &Real,
    k_terms: usize,
    consts: &StieltjesConstants,
    ctx: &PrecisionContext,
) -> Result<Approx> {
    if k_terms > 1 {
        return Err(Error::TooManyTerms { requested: k_terms, max: 1 });
    }
    let u = s - &Real::one(s.prec());
    let dist = u.to_f64().abs();
    if dist >= 0.5 {
        return Err(Error::TooFarFromPole { distance: dist });
    }
    if u.is_zero() {
        return Err(Error::PoleAtOne);
    }
    let mut acc = Approx::exact(u.recip())?.add(&consts.gamma0)?;
    if k_terms >= 1 {
        acc = acc.sub(&consts.gamma1.scale(&u)?)?;
    }
    let c = laurent_remainder_coefficient(ctx)?;
    Ok(acc.widen(c * dist * dist))
}

/// Empirical remainder coefficient: `|zeta - (1/(s-1) + g0 - g1 (s-1))|`
/// divided by `(s-1)^2`, maximized over probes on both sides of the pole.
fn laurent_remainder_coefficient(ctx: &PrecisionContext) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for probe in [0.7f64, 1.3] {
        let s = ctx.real(probe);
        let u = &s - &Real::one(ctx.bits());
        let table = stieltjes_table(ctx)?;
        let two_term = &(&u.recip() + &table[0]) - &(&table[1] * &u);
        let full = zeta(&s, ctx)?;
        let resid = (full.value() - &two_term).to_f64().abs();
        worst = worst.max(resid / (probe - 1.0).powi(2));
    }
    Ok(worst * 1.5)
}

// ---------------------------------------------------------------------------
// routes
// ---------------------------------------------------------------------------

fn em_dirichlet(s: &Real, k_max: u32, ctx: &PrecisionContext) -> Result<Vec<Approx>> {
    let p = ctx.bits();
    let k_max = k_max as usize;
    let m_point = (0.4 * ctx.work_digits() as f64).ceil() as u64 + 12;

    // Shared pass: one exponential per n covers every log weight.
    let mut acc = vec![Real::zero(p); k_max + 1];
    acc[0] = Real::one(p); // n = 1
    let mut reached = 1u64;
    for n in 2..=m_point {
        let ln_n = ctx.ln_int(n);
        let e = (&(-s) * &ln_n).exp();
        let mut l_pow = Real::one(p);
        for a in acc.iter_mut() {
            *a = &*a + &(&e * &l_pow);
            l_pow = &l_pow * &ln_n;
        }
        reached = n;
        if e.to_f64() < ctx.target_tol() * 1e-6 && n >= 3 {
            break;
        }
    }

    // Crude integral bound decides whether the ladder is worth running.
    let sf = s.to_f64();
    let log_m = (reached as f64).ln();
    let tail_scale = (-(sf - 1.0) * log_m).exp() / (sf - 1.0) * log_m.powi(k_max as i32);
    let mut out = Vec::with_capacity(k_max + 1);
    for (k, a) in acc.iter().enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let mut coeffs = vec![Real::zero(p); k + 1];
        coeffs[k] = Real::one(p);
        let f = LogPoly::new(s.clone(), coeffs);
        let (value, err) = if tail_scale < ctx.target_tol() * 1e-3 {
            (a.clone(), tail_scale)
        } else {
            let x = ctx.uint(reached);
            let pt = f.powers_at_int(reached);
            let integral = f.integral_to_inf(&pt, &x);
            let (corr, ladder_err) = em_correction_terms(&f, reached, 12, ctx)?;
            (&(a + &integral) + &corr, ladder_err)
        };
        let value = if sign < 0.0 { -&value } else { value };
        let rounding = value.to_f64().abs().max(1.0) * ctx.rounding_unit() * reached as f64;
        out.push(Approx::new(value, err + rounding)?);
    }
    Ok(out)
}

fn eta_route(s: &Real, k_max: u32, ctx: &PrecisionContext) -> Result<Vec<Approx>> {
    let p = ctx.bits();
    let k_max = k_max as usize;

    // eta^(k)(s) = (-1)^k sum (-1)^(n-1) ln^k n * n^(-s)
    let etas_raw = accelerated_alternating_sums(
        |n| {
            let ln_n = ctx.ln_int(n);
            let e = (&(-s) * &ln_n).exp();
            let mut out = Vec::with_capacity(k_max + 1);
            let mut l_pow = Real::one(p);
            for _ in 0..=k_max {
                out.push(&e * &l_pow);
                l_pow = &l_pow * &ln_n;
            }
            out
        },
        k_max + 1,
        ctx,
    )?;
    let eta: Vec<Approx> =
        etas_raw.into_iter().enumerate().map(|(k, a)| if k % 2 == 1 { a.neg() } else { a }).collect();

    // D = 1 - 2^(1-s), D^(m) = (-1)^(m+1) ln^m 2 * 2^(1-s)
    let ln2 = ctx.ln2();
    let e2 = (&(&Real::one(p) - s) * &ln2).exp();
    let d0 = Approx::exact(&Real::one(p) - &e2)?;
    let d1 = Approx::exact(&ln2 * &e2)?;
    let d2 = Approx::exact(-&(&(&ln2 * &ln2) * &e2))?;
    let d3 = Approx::exact(&(&(&ln2 * &ln2) * &ln2) * &e2)?;

    let mut zetas: Vec<Approx> = Vec::with_capacity(k_max + 1);
    // zeta = eta / D
    zetas.push(eta[0].div(&d0)?);
    if k_max >= 1 {
        // zeta' = (eta' - D' zeta) / D
        let num = eta[1].sub(&d1.mul(&zetas[0])?)?;
        zetas.push(num.div(&d0)?);
    }
    if k_max >= 2 {
        // zeta'' = (eta'' - D'' zeta - 2 D' zeta') / D
        let num = eta[2]
            .sub(&d2.mul(&zetas[0])?)?
            .sub(&d1.mul(&zetas[1])?.scale(&Real::from_u64(2, p))?)?;
        zetas.push(num.div(&d0)?);
    }
    if k_max >= 3 {
        // zeta''' = (eta''' - D''' zeta - 3 D'' zeta' - 3 D' zeta'') / D
        let num = eta[3]
            .sub(&d3.mul(&zetas[0])?)?
            .sub(&d2.mul(&zetas[1])?.scale(&Real::from_u64(3, p))?)?
            .sub(&d1.mul(&zetas[2])?.scale(&Real::from_u64(3, p))?)?;
        zetas.push(num.div(&d0)?);
    }
    Ok(zetas)
}

fn laurent_near_pole(s: &Real, k_max: u32, ctx: &PrecisionContext) -> Result<Vec<Approx>> {
    let p = ctx.bits();
    let table = stieltjes_table(ctx)?;
    let u = s - &Real::one(p);
    let uf = u.to_f64().abs();

    let mut out = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max as usize {
        // (-1)^k k! / (s-1)^(k+1) + sum_{j>=k} (-1)^j gamma_j u^(j-k)/(j-k)!
        let mut kfact = Real::one(p);
        for i in 2..=k as u64 {
            kfact = &kfact * &Real::from_u64(i, p);
        }
        let pole = &kfact / &u.powi(k as u64 + 1);
        let mut acc = if k % 2 == 0 { pole } else { -&pole };

        let mut u_pow = Real::one(p);
        let mut fact = Real::one(p);
        for j in k..=TABLE_MAX_K {
            let term = &(&table[j] * &u_pow) / &fact;
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            u_pow = &u_pow * &u;
            fact = &fact * &Real::from_u64((j - k + 1) as u64, p);
        }
        // gamma_17-level remainder plus the table's own budget.
        let band_rem = 0.5 * uf.powi((TABLE_MAX_K + 1 - k) as i32);
        let err = band_rem + table_err(ctx) * 3.0
            + acc.to_f64().abs() * ctx.rounding_unit() * 8.0;
        out.push(Approx::new(acc, err)?);
    }
    Ok(out)
}

fn zeta_integral_left(s: &Real, ctx: &PrecisionContext) -> Result<Approx> {
    let p = ctx.bits();
    let one = Real::one(p);
    let half = Real::from_ratio(1, 2, p);
    let pole = Approx::exact((s - &one).recip())?;
    if s.is_zero() {
        // The sawtooth term carries a factor s.
        return pole.add(&Approx::exact(half)?);
    }
    let w = LogPoly::power(s + &one, p);
    let sw = sawtooth_integral_auto(&w, 1, ctx)?;
    pole.add(&Approx::exact(half)?)?.sub(&sw.scale(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn zeta_at_zero_is_minus_half() {
        let c = ctx();
        let z = zeta(&c.real(0.0), &c).unwrap();
        assert!((z.to_f64() + 0.5).abs() < 1e-40);
    }

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let c = ctx();
        let z = zeta(&c.real(2.0), &c).unwrap();
        let expect = &(&c.pi() * &c.pi()) / &c.uint(6);
        let diff = (z.value() - &expect).to_f64().abs();
        assert!(diff <= z.err() && diff < 1e-30, "diff {diff:e} budget {:e}", z.err());
    }

    #[test]
    fn zeta_half_matches_reference() {
        // Frozen from the two-path agreement run (alternating vs integral).
        let c = ctx();
        let z = zeta(&c.real(0.5), &c).unwrap();
        assert!((z.to_f64() - (-1.4603545088095868)).abs() < 1e-10);
    }

    #[test]
    fn pole_and_domain_errors() {
        let c = ctx();
        assert!(matches!(zeta(&c.real(1.0), &c), Err(Error::PoleAtOne)));
        assert!(matches!(zeta(&c.real(-1.5), &c), Err(Error::OutOfDomain(_))));
        assert!(matches!(zeta_deriv(&c.real(-0.5), 1, &c), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn left_integral_route_agrees_with_alternating_near_zero() {
        // s = 0.3 via eta acceleration; s = -0.3 only via the integral; the
        // functional relation is not used, but both sides of 0 must join the
        // integral path smoothly: compare the integral route against the
        // alternating route where both apply.
        let c = ctx();
        let s = c.real(0.3);
        let via_eta = zeta(&s, &c).unwrap();
        let via_int = {
            let one = Real::one(c.bits());
            let w = LogPoly::power(&s + &one, c.bits());
            let sw = sawtooth_integral_auto(&w, 1, &c).unwrap();
            Approx::exact((&s - &one).recip())
                .unwrap()
                .add(&Approx::exact(Real::from_ratio(1, 2, c.bits())).unwrap())
                .unwrap()
                .sub(&sw.scale(&s).unwrap())
                .unwrap()
        };
        assert!(via_eta.agrees_with(&via_int), "{} vs {}", via_eta.to_f64(), via_int.to_f64());
    }

    #[test]
    fn derivative_signs_between_two_and_three() {
        let c = ctx();
        let s = c.real(2.5);
        let d = zeta_with_derivs(&s, 3, &c).unwrap();
        assert!(d[1].value().is_negative());
        assert!(d[2].value().is_positive());
        assert!(d[3].value().is_negative());
    }

    #[test]
    fn laurent_band_joins_the_series_routes() {
        let c = ctx();
        // At the band edges both routes are valid; they must agree closely.
        for sf in [0.951, 1.049] {
            let s = c.real(sf);
            let in_band = laurent_near_pole(&s, 2, &c).unwrap();
            let outside = if sf > 1.0 {
                em_dirichlet(&s, 2, &c).unwrap()
            } else {
                eta_route(&s, 2, &c).unwrap()
            };
            for k in 0..3 {
                assert!(
                    in_band[k].agrees_with(&outside[k]),
                    "k={k} s={sf}: {} vs {} ({:e}/{:e})",
                    in_band[k].to_f64(),
                    outside[k].to_f64(),
                    in_band[k].err(),
                    outside[k].err()
                );
            }
        }
    }

    #[test]
    fn laurent_two_term_contract() {
        let c = ctx();
        let consts = StieltjesConstants::compute(&c).unwrap();
        assert!(matches!(
            zeta_laurent(&c.real(1.001), 5, &consts, &c),
            Err(Error::TooManyTerms { .. })
        ));
        assert!(matches!(
            zeta_laurent(&c.real(1.7), 1, &consts, &c),
            Err(Error::TooFarFromPole { .. })
        ));
        let near = zeta_laurent(&c.real(1.001), 1, &consts, &c).unwrap();
        let full = zeta(&c.real(1.001), &c).unwrap();
        let diff = (near.value() - full.value()).to_f64().abs();
        assert!(diff <= near.err(), "diff {diff:e} vs budget {:e}", near.err());
    }
}
