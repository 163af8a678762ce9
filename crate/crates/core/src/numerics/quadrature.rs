//! Adaptive Gauss–Legendre quadrature at working precision.
//!
//! Panels carry an embedded pair of rules (orders 20 and 31); the difference
//! between the two estimates drives bisection and feeds the error budget.
//! Nodes are found once per (order, precision) by Newton iteration on the
//! Legendre recurrence from double-precision seeds, then memoized.
//!
//! Integrable endpoint singularities are the caller's to declare: given the
//! exponent alpha of `f ~ (t-a)^alpha`, the panel next to the endpoint is
//! pulled back through `t = a + u^k` with `k ~ 3/(1+alpha)`, which makes the
//! integrand vanish to second order at the edge.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::approx::Approx;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::real::Real;

const LO_ORDER: usize = 20;
const HI_ORDER: usize = 31;

thread_local! {
    static NODE_CACHE: RefCell<HashMap<(usize, usize), Rc<(Vec<Real>, Vec<Real>)>>> =
        RefCell::new(HashMap::new());
}

/// Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(order: usize, prec: usize) -> Rc<(Vec<Real>, Vec<Real>)> {
    NODE_CACHE.with(|cache| {
        if let Some(hit) = cache.borrow().get(&(order, prec)) {
            return hit.clone();
        }
        let made = Rc::new(compute_nodes(order, prec));
        cache.borrow_mut().insert((order, prec), made.clone());
        made
    })
}

fn legendre_pair(n: usize, x: &Real, prec: usize) -> (Real, Real) {
    // Returns (P_n(x), P_{n-1}(x)).
    let mut p_prev = Real::one(prec);
    let mut p = x.clone();
    for k in 1..n {
        let k2p1 = Real::from_u64(2 * k as u64 + 1, prec);
        let kk = Real::from_u64(k as u64, prec);
        let kp1 = Real::from_u64(k as u64 + 1, prec);
        let next = &(&(&(&k2p1 * x) * &p) - &(&kk * &p_prev)) / &kp1;
        p_prev = p;
        p = next;
    }
    (p, p_prev)
}

fn compute_nodes(n: usize, prec: usize) -> (Vec<Real>, Vec<Real>) {
    let one = Real::one(prec);
    let nn = Real::from_u64(n as u64, prec);
    let mut xs = Vec::with_capacity(n);
    let mut ws = Vec::with_capacity(n);
    for i in 1..=n {
        let seed = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut x = Real::from_f64(seed, prec);
        for _ in 0..24 {
            let (pn, pnm1) = legendre_pair(n, &x, prec);
            let x2m1 = &(&x * &x) - &one;
            let dpn = &(&nn * &(&(&x * &pn) - &pnm1)) / &x2m1;
            let step = &pn / &dpn;
            x = &x - &step;
            if step.to_f64().abs() < 2f64.powi(-(prec as i32) + 6) {
                break;
            }
        }
        let (pn, pnm1) = legendre_pair(n, &x, prec);
        let x2m1 = &(&x * &x) - &one;
        let dpn = &(&nn * &(&(&x * &pn) - &pnm1)) / &x2m1;
        let w = &Real::from_u64(2, prec) / &(&(&one - &(&x * &x)) * &(&dpn * &dpn));
        xs.push(x);
        ws.push(w);
    }
    (xs, ws)
}

fn panel_estimates(
    f: &impl Fn(&Real) -> Real,
    a: &Real,
    b: &Real,
    ctx: &PrecisionContext,
) -> Result<(Real, Real)> {
    let p = ctx.bits();
    let half = Real::from_ratio(1, 2, p);
    let mid = &(a + b) * &half;
    let rad = &(b - a) * &half;
    let mut out = Vec::with_capacity(2);
    for order in [LO_ORDER, HI_ORDER] {
        let rule = gauss_legendre(order, p);
        let mut acc = Real::zero(p);
        for (x, w) in rule.0.iter().zip(rule.1.iter()) {
            let t = &mid + &(&rad * x);
            let y = f(&t);
            if !y.is_finite() {
                return Err(Error::NonFinite("integrand".into()));
            }
            acc = &acc + &(w * &y);
        }
        out.push(&acc * &rad);
    }
    let hi = out.pop().expect("two rules");
    let lo = out.pop().expect("two rules");
    Ok((lo, hi))
}

/// Options for [`adaptive_quadrature_opts`].
#[derive(Default, Clone)]
pub struct QuadOptions {
    /// Exponent alpha > -1 when `f ~ (t-a)^alpha` near the lower endpoint.
    pub lo_singularity: Option<f64>,
    /// Exponent alpha > -1 when `f ~ (b-t)^alpha` near the upper endpoint.
    pub hi_singularity: Option<f64>,
    /// Interior points the integrand is not smooth across.
    pub breakpoints: Vec<f64>,
}

/// `int_a^b f` for an integrand smooth on the open interval.
pub fn adaptive_quadrature(
    f: impl Fn(&Real) -> Real,
    a: &Real,
    b: &Real,
    ctx: &PrecisionContext,
) -> Result<Approx> {
    adaptive_quadrature_opts(f, a, b, &QuadOptions::default(), ctx)
}

/// `int_a^b f` with declared endpoint singularities and interior breakpoints.
pub fn adaptive_quadrature_opts(
    f: impl Fn(&Real) -> Real,
    a: &Real,
    b: &Real,
    opts: &QuadOptions,
    ctx: &PrecisionContext,
) -> Result<Approx> {
    if !(a.to_f64() < b.to_f64()) {
        return Err(Error::InvalidConfig("quadrature needs a < b".into()));
    }
    let p = ctx.bits();
    let width = b - a;

    // Segment at breakpoints and peel singular edges into substituted panels.
    let mut cuts: Vec<Real> = vec![a.clone()];
    for bp in &opts.breakpoints {
        let t = ctx.real(*bp);
        if t > *a && t < *b {
            cuts.push(t);
        }
    }
    cuts.push(b.clone());

    let mut total = Approx::new(Real::zero(p), 0.0)?;
    for i in 0..cuts.len() - 1 {
        let (lo, hi) = (&cuts[i], &cuts[i + 1]);
        let first = i == 0;
        let last = i == cuts.len() - 2;
        let seg_width = hi - lo;
        let edge = seg_width.to_f64().min(1.0);

        let mut plain_lo = lo.clone();
        let mut plain_hi = hi.clone();

        if let (true, Some(alpha)) = (first, opts.lo_singularity) {
            let delta = ctx.real(edge * 0.5);
            let split = lo + &delta;
            let part = substituted_edge(&f, lo, &split, alpha, false, ctx)?;
            total = total.add(&part)?;
            plain_lo = split;
        }
        if let (true, Some(alpha)) = (last, opts.hi_singularity) {
            let delta = ctx.real(edge * 0.5);
            let split = hi - &delta;
            if split > plain_lo {
                let part = substituted_edge(&f, &split, hi, alpha, true, ctx)?;
                total = total.add(&part)?;
                plain_hi = split;
            }
        }
        if plain_hi > plain_lo {
            let part = adaptive_core(&f, &plain_lo, &plain_hi, &width, ctx)?;
            total = total.add(&part)?;
        }
    }
    Ok(total)
}

/// Pulls an edge panel back through `t = edge ± u^k` and integrates the
/// smooth pull-back.
fn substituted_edge(
    f: &impl Fn(&Real) -> Real,
    lo: &Real,
    hi: &Real,
    alpha: f64,
    at_hi: bool,
    ctx: &PrecisionContext,
) -> Result<Approx> {
    if alpha <= -1.0 {
        return Err(Error::InvalidConfig(format!(
            "endpoint exponent {alpha} is not integrable"
        )));
    }
    let k = ((3.0 / (1.0 + alpha)).ceil() as u64).clamp(2, 60);
    let p = ctx.bits();
    let kf = Real::from_u64(k, p);
    let width = hi - lo;
    let u_max = width.pow(&kf.recip());
    let g = |u: &Real| -> Real {
        let uk = u.powi(k);
        let t = if at_hi { hi - &uk } else { lo + &uk };
        let jac = &kf * &u.powi(k - 1);
        &f(&t) * &jac
    };
    adaptive_core(&g, &Real::zero(p), &u_max, &u_max, ctx)
}

fn adaptive_core(
    f: &impl Fn(&Real) -> Real,
    a: &Real,
    b: &Real,
    total_width: &Real,
    ctx: &PrecisionContext,
) -> Result<Approx> {
    let p = ctx.bits();
    let tol = ctx.target_tol();
    let total_w = total_width.to_f64();
    let half = Real::from_ratio(1, 2, p);

    let mut stack: Vec<(Real, Real, u32)> = vec![(a.clone(), b.clone(), 0)];
    let mut acc = Real::zero(p);
    let mut budget = 0.0f64;

    while let Some((lo, hi, depth)) = stack.pop() {
        let (est_lo, est_hi) = panel_estimates(f, &lo, &hi, ctx)?;
        let disc = (&est_hi - &est_lo).to_f64().abs();
        let share = ((&hi - &lo).to_f64() / total_w).max(1e-6);
        let scale = est_hi.to_f64().abs().max(1.0);
        if disc <= 0.5 * tol * share * scale {
            acc = &acc + &est_hi;
            budget += disc + est_hi.to_f64().abs() * ctx.rounding_unit() * 64.0;
        } else {
            if depth >= ctx.quad_max_depth() {
                return Err(Error::DepthExceeded { depth });
            }
            let mid = &(&lo + &hi) * &half;
            stack.push((lo, mid.clone(), depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    Approx::new(acc, budget)
}
