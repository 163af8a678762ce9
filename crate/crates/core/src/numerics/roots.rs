//! Bracketed root finding by Brent's method.

use crate::error::{Error, Result};
use crate::real::Real;

/// Finds `x` in `[a, b]` with `f(x) = 0`, given a sign change on the bracket.
///
/// Inverse-quadratic and secant steps with a bisection fallback, refined
/// until the bracket half-width drops below `tol` (plus rounding head-room at
/// the working precision). The returned point always lies inside `[a, b]`.
pub fn brent_root(
    f: impl Fn(&Real) -> Real,
    x1: &Real,
    x2: &Real,
    tol: f64,
) -> Result<Real> {
    let p = x1.prec().max(x2.prec());
    let eps = 2f64.powi(-(p as i32) + 6);

    let mut a = x1.clone();
    let mut b = x2.clone();
    let mut fa = f(&a);
    let mut fb = f(&b);
    if !fa.is_finite() || !fb.is_finite() {
        return Err(Error::NonFinite("bracket endpoints".into()));
    }
    if fa.is_zero() {
        return Ok(a);
    }
    if fb.is_zero() {
        return Ok(b);
    }
    if fa.is_negative() == fb.is_negative() {
        return Err(Error::NoBracket { a: x1.to_f64(), b: x2.to_f64() });
    }

    let mut c = b.clone();
    let mut fc = fb.clone();
    let mut d = Real::zero(p);
    let mut e = Real::zero(p);

    for _ in 0..10_000 {
        if fb.is_negative() == fc.is_negative() {
            c = a.clone();
            fc = fa.clone();
            d = &b - &a;
            e = d.clone();
        }
        if fc.abs() < fb.abs() {
            a = b.clone();
            b = c.clone();
            c = a.clone();
            fa = fb.clone();
            fb = fc.clone();
            fc = fa.clone();
        }
        let tol1 = 2.0 * eps * b.to_f64().abs().max(1.0) + 0.5 * tol;
        let xm = &(&c - &b) * &Real::from_ratio(1, 2, p);

        if xm.to_f64().abs() <= tol1 || fb.is_zero() {
            return Ok(b);
        }

        if e.to_f64().abs() >= tol1 && fa.abs() > fb.abs() {
            // Attempt inverse quadratic interpolation.
            let s = &fb / &fa;
            let (mut pp, mut q);
            if (&a - &c).to_f64().abs() < eps * a.to_f64().abs().max(1.0) {
                pp = &(&Real::from_u64(2, p) * &xm) * &s;
                q = &Real::one(p) - &s;
            } else {
                let qq = &fa / &fc;
                let r = &fb / &fc;
                let t1 = &(&(&Real::from_u64(2, p) * &xm) * &qq) * &(&qq - &r);
                let t2 = &(&b - &a) * &(&r - &Real::one(p));
                pp = &s * &(&t1 - &t2);
                q = &(&(&qq - &Real::one(p)) * &(&r - &Real::one(p))) * &(&s - &Real::one(p));
            }
            if pp.is_positive() {
                q = -&q;
            }
            pp = pp.abs();
            let min1 = (3.0 * xm.to_f64() * q.to_f64()).abs() - (tol1 * q.to_f64()).abs();
            let min2 = (&e * &q).to_f64().abs();
            if 2.0 * pp.to_f64() < min1.min(min2) {
                e = d.clone();
                d = &pp / &q;
            } else {
                d = xm.clone();
                e = d.clone();
            }
        } else {
            d = xm.clone();
            e = d.clone();
        }
        a = b.clone();
        fa = fb.clone();
        if d.to_f64().abs() > tol1 {
            b = &b + &d;
        } else if xm.is_positive() {
            b = &b + &Real::from_f64(tol1, p);
        } else {
            b = &b - &Real::from_f64(tol1, p);
        }
        fb = f(&b);
        if !fb.is_finite() {
            return Err(Error::NonFinite("root iterate".into()));
        }
    }
    Err(Error::ExtrapolationDiverged)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: usize = 256;

    fn r(v: f64) -> Real {
        Real::from_f64(v, P)
    }

    #[test]
    fn sqrt_two() {
        let root = brent_root(
            |x| &(x * x) - &Real::from_u64(2, P),
            &r(1.0),
            &r(2.0),
            1e-30,
        )
        .unwrap();
        let expect = Real::from_u64(2, P).sqrt();
        assert!((&root - &expect).to_f64().abs() < 1e-28, "root {}", root.to_f64());
        assert!(root >= r(1.0) && root <= r(2.0));
    }

    #[test]
    fn cosine_half() {
        let root = brent_root(|x| (&Real::pi(P) * x).cos(), &r(0.2), &r(0.8), 1e-30).unwrap();
        assert!((root.to_f64() - 0.5).abs() < 1e-25);
    }

    #[test]
    fn asymmetric_cubic() {
        // (x+3)(x-1)^2 has a double root; bisect-heavy path still lands on it.
        let root = brent_root(
            |x| {
                let xm1 = x - &Real::one(P);
                &(&(x + &Real::from_u64(3, P)) * &xm1) * &xm1
            },
            &r(-5.0),
            &r(2.0),
            1e-20,
        )
        .unwrap();
        assert!((root.to_f64() + 3.0).abs() < 1e-10 || (root.to_f64() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn same_signs_rejected() {
        let e = brent_root(|x| &(x * x) + &Real::one(P), &r(-1.0), &r(1.0), 1e-10);
        assert!(matches!(e, Err(Error::NoBracket { .. })));
    }
}
