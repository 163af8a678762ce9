//! Product integration of exponential kernels against 1/(1 - e^(-v)).
//!
//! The (0,1) pieces of the derivative formulas all become, after `t = e^(-v)`,
//!
//! ```text
//! int_0^1 t^(-s) (-ln t)^j / (1-t) dt  =  int_0^oo v^j e^(-cv) rho(v) dv,
//! c = 1 - s,   rho(v) = 1/(1 - e^(-v)),
//! ```
//!
//! so one routine serves them all. On [0, 16] the integrand is analytic and a
//! fixed geometric panelization with embedded Gauss rules integrates it;
//! `rho` at the nodes depends only on the panel layout and is cached per
//! precision. Past v = 16 the geometric expansion `rho = sum_k e^(-kv)` turns
//! the remainder into elementary closed forms, which is what keeps the c -> 0
//! blow-up (the pole side) exact instead of truncated.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::approx::Approx;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::real::Real;

use super::quadrature::gauss_legendre;

const PANELS: [(u64, u64); 5] = [(0, 1), (1, 2), (2, 4), (4, 8), (8, 16)];
const V_END: u64 = 16;
const LO_ORDER: usize = 20;
const HI_ORDER: usize = 31;

struct PanelData {
    /// (node v, weight * rho(v), e^(-v) at node, v itself kept for powers)
    nodes: Vec<(Real, Real, Real)>,
}

struct Scheme {
    lo: Vec<PanelData>,
    hi: Vec<PanelData>,
}

thread_local! {
    static SCHEME_CACHE: RefCell<HashMap<usize, Rc<Scheme>>> = RefCell::new(HashMap::new());
}

fn build_panels(order: usize, prec: usize) -> Vec<PanelData> {
    let rule = gauss_legendre(order, prec);
    let one = Real::one(prec);
    let half = Real::from_ratio(1, 2, prec);
    PANELS
        .iter()
        .map(|&(a, b)| {
            let mid = &(&Real::from_u64(a, prec) + &Real::from_u64(b, prec)) * &half;
            let rad = &(&Real::from_u64(b, prec) - &Real::from_u64(a, prec)) * &half;
            let nodes = rule
                .0
                .iter()
                .zip(rule.1.iter())
                .map(|(x, w)| {
                    let v = &mid + &(&rad * x);
                    let e_neg_v = (-&v).exp();
                    let rho = (&one - &e_neg_v).recip();
                    let wr = &(&rad * w) * &rho;
                    (v, wr, e_neg_v)
                })
                .collect();
            PanelData { nodes }
        })
        .collect()
}

fn scheme(prec: usize) -> Rc<Scheme> {
    SCHEME_CACHE.with(|cache| {
        if let Some(hit) = cache.borrow().get(&prec) {
            return hit.clone();
        }
        let made = Rc::new(Scheme {
            lo: build_panels(LO_ORDER, prec),
            hi: build_panels(HI_ORDER, prec),
        });
        cache.borrow_mut().insert(prec, made.clone());
        made
    })
}

/// `int_V^oo v^j e^(-cv) dv` by the downward recurrence
/// `E_j = e^(-cV) V^j / c + (j/c) E_(j-1)`.
fn exp_moment_tail(j: u32, v: &Real, c: &Real, e_neg_cv: &Real) -> Real {
    let inv_c = c.recip();
    let mut e = e_neg_cv * &inv_c;
    let mut v_pow = Real::one(v.prec());
    for i in 1..=j {
        v_pow = &v_pow * v;
        e = &(&(e_neg_cv * &v_pow) + &(&Real::from_u64(i as u64, v.prec()) * &e)) * &inv_c;
    }
    e
}

/// `int_0^oo v^j e^(-cv) rho(v) dv` for every requested order at once,
/// sharing the per-node exponentials. Requires `c > 0`.
pub fn exp_kernel_moments(orders: &[u32], c: &Real, ctx: &PrecisionContext) -> Result<Vec<Approx>> {
    if !c.is_positive() {
        return Err(Error::OutOfDomain("exponential kernel needs c > 0".into()));
    }
    if orders.iter().any(|&j| j == 0) {
        return Err(Error::InvalidConfig(
            "order 0 diverges against rho; use exp_kernel_diff".into(),
        ));
    }
    let p = ctx.bits();
    let sch = scheme(p);
    let tol = ctx.target_tol();

    let mut lo_acc = vec![Real::zero(p); orders.len()];
    let mut hi_acc = vec![Real::zero(p); orders.len()];
    for (panel_set, acc) in [(&sch.lo, &mut lo_acc), (&sch.hi, &mut hi_acc)] {
        for panel in panel_set.iter() {
            for (v, w_rho, _e_neg_v) in &panel.nodes {
                let e_cv = (&(-c) * v).exp();
                let base = w_rho * &e_cv;
                for (k, &j) in orders.iter().enumerate() {
                    acc[k] = &acc[k] + &(&base * &v.powi(j as u64));
                }
            }
        }
    }

    // rho-tail: sum_k int_V^oo v^j e^(-(c+k)v) dv, truncated when negligible.
    let v_end = ctx.uint(V_END);
    let mut tails = vec![Real::zero(p); orders.len()];
    let mut trunc = vec![0.0f64; orders.len()];
    for k in 0..64u64 {
        let ck = c + &ctx.uint(k);
        let e_neg_ckv = (&(-&ck) * &v_end).exp();
        let mut worst = 0.0f64;
        for (i, &j) in orders.iter().enumerate() {
            let term = exp_moment_tail(j, &v_end, &ck, &e_neg_ckv);
            let mag = term.to_f64().abs();
            tails[i] = &tails[i] + &term;
            trunc[i] = 2.0 * mag;
            worst = worst.max(mag);
        }
        if k > 0 && worst < tol * 1e-3 {
            break;
        }
    }

    let mut out = Vec::with_capacity(orders.len());
    for i in 0..orders.len() {
        let value = &hi_acc[i] + &tails[i];
        let disc = (&hi_acc[i] - &lo_acc[i]).to_f64().abs();
        let rounding = value.to_f64().abs().max(1.0) * ctx.rounding_unit() * 512.0;
        out.push(Approx::new(value, disc + trunc[i] + rounding)?);
    }
    Ok(out)
}

/// `int_0^oo (e^(-c1 v) - e^(-c2 v)) rho(v) dv` for `c1, c2 > 0`.
///
/// The 1/v singularity of `rho` is cancelled by the difference, so the same
/// panel scheme applies; the tail is again closed-form per geometric term.
pub fn exp_kernel_diff(c1: &Real, c2: &Real, ctx: &PrecisionContext) -> Result<Approx> {
    if !c1.is_positive() || !c2.is_positive() {
        return Err(Error::OutOfDomain("exponential kernel needs c > 0".into()));
    }
    let p = ctx.bits();
    let sch = scheme(p);
    let one = Real::one(p);
    let tol = ctx.target_tol();

    let mut accs = [Real::zero(p), Real::zero(p)];
    for (panel_set, acc) in [(&sch.lo, 0usize), (&sch.hi, 1usize)] {
        for panel in panel_set {
            for (v, w_rho, e_neg_v) in &panel.nodes {
                let e1 = if (c1 - &one).is_zero() { e_neg_v.clone() } else { (&(-c1) * v).exp() };
                let e2 = if (c2 - &one).is_zero() { e_neg_v.clone() } else { (&(-c2) * v).exp() };
                accs[acc] = &accs[acc] + &(w_rho * &(&e1 - &e2));
            }
        }
    }

    let v_end = ctx.uint(V_END);
    let mut tail = Real::zero(p);
    let mut trunc = 0.0f64;
    for k in 0..64u64 {
        let kk = ctx.uint(k);
        let c1k = c1 + &kk;
        let c2k = c2 + &kk;
        let t1 = exp_moment_tail(0, &v_end, &c1k, &(&(-&c1k) * &v_end).exp());
        let t2 = exp_moment_tail(0, &v_end, &c2k, &(&(-&c2k) * &v_end).exp());
        let term = &t1 - &t2;
        let mag = t1.to_f64().abs().max(t2.to_f64().abs());
        tail = &tail + &term;
        trunc = 2.0 * mag;
        if k > 0 && mag < tol * 1e-3 {
            break;
        }
    }

    let value = &accs[1] + &tail;
    let disc = (&accs[1] - &accs[0]).to_f64().abs();
    let rounding = value.to_f64().abs().max(1.0) * ctx.rounding_unit() * 512.0;
    Approx::new(value, disc + trunc + rounding)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::quadrature::{adaptive_quadrature_opts, QuadOptions};

    #[test]
    fn moment_matches_direct_quadrature() {
        // int_0^1 t^(-s) ln^2(t)/(1-t) dt via substitution vs directly,
        // with the same s threaded through both routes.
        let ctx = PrecisionContext::default();
        let s = ctx.real(0.3);
        let c = &Real::one(ctx.bits()) - &s;
        let ours = exp_kernel_moments(&[2], &c, &ctx).unwrap().remove(0);

        let direct = adaptive_quadrature_opts(
            |t| {
                let l = t.ln();
                let tm = &Real::one(ctx.bits()) - t;
                &(&(&l * &l) * &t.pow(&-&s)) / &tm
            },
            &ctx.real(0.0),
            &ctx.real(1.0),
            &QuadOptions { lo_singularity: Some(-0.3), hi_singularity: Some(1.0), ..Default::default() },
            &ctx,
        )
        .unwrap();
        let diff = (ours.value() - direct.value()).to_f64().abs();
        assert!(
            diff <= ours.err() + direct.err() && diff < 1e-14,
            "{} vs {} (diff {:e})",
            ours.to_f64(),
            direct.to_f64(),
            diff
        );
    }

    #[test]
    fn small_c_blowup_matches_closed_form_scale() {
        // For c -> 0 the j = 2 moment behaves like 2/c^3.
        let ctx = PrecisionContext::default();
        let c = ctx.real(1e-6);
        let got = exp_kernel_moments(&[2], &c, &ctx).unwrap().remove(0);
        let lead = 2e18;
        assert!((got.to_f64() - lead).abs() / lead < 1e-4, "got {:e}", got.to_f64());
    }

    #[test]
    fn diff_kernel_is_digamma_difference() {
        // int_0^1 (1 - t^(x-1))/(1-t) dt = psi(x) + gamma0; with x = 2 it is 1.
        let ctx = PrecisionContext::default();
        let got = exp_kernel_diff(&ctx.real(1.0), &ctx.real(2.0), &ctx).unwrap();
        // c1=1, c2=2: int (e^-v - e^-2v) rho = int e^-v dv = 1
        assert!((got.to_f64() - 1.0).abs() < 1e-30, "got {}", got.to_f64());
    }

    #[test]
    fn orders_share_evaluation() {
        let ctx = PrecisionContext::default();
        let c = ctx.real(0.41);
        let both = exp_kernel_moments(&[1, 2], &c, &ctx).unwrap();
        let one = exp_kernel_moments(&[1], &c, &ctx).unwrap().remove(0);
        let two = exp_kernel_moments(&[2], &c, &ctx).unwrap().remove(0);
        assert!(both[0].agrees_with(&one));
        assert!(both[1].agrees_with(&two));
    }
}
