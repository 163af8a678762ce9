//! The function family  x^(-b) * (c_0 + c_1 ln x + ... + c_A ln^A x).
//!
//! Every smooth kernel this crate meets on [1, oo) — Dirichlet-series terms,
//! their log-weighted derivatives, sawtooth-integral densities — lives in
//! this family, and the family is closed under d/dx. Derivatives,
//! antiderivatives and tail integrals therefore come out in closed form,
//! which is what makes the correction ladders exact.

use crate::real::Real;

/// `x^(-neg_power) * sum_a coeffs[a] * (ln x)^a`, with `neg_power` real.
#[derive(Debug, Clone)]
pub struct LogPoly {
    neg_power: Real,
    coeffs: Vec<Real>,
}

/// Shared per-point data so one exponential serves many family members.
///
/// `inv_pow` must hold `x^(-b)` for the same `b` the polynomial carries.
pub struct PointPowers {
    pub ln_x: Real,
    pub inv_pow: Real,
}

impl LogPoly {
    pub fn new(neg_power: Real, coeffs: Vec<Real>) -> Self {
        debug_assert!(!coeffs.is_empty());
        LogPoly { neg_power, coeffs }
    }

    /// The plain power kernel `x^(-b)`.
    pub fn power(neg_power: Real, prec: usize) -> Self {
        LogPoly::new(neg_power, vec![Real::one(prec)])
    }

    pub fn neg_power(&self) -> &Real {
        &self.neg_power
    }

    pub fn coeffs(&self) -> &[Real] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn prec(&self) -> usize {
        self.neg_power.prec()
    }

    /// Evaluates at x, computing `ln x` and the power from scratch.
    pub fn eval(&self, x: &Real) -> Real {
        let ln_x = x.ln();
        let inv_pow = (&(-&self.neg_power) * &ln_x).exp();
        self.eval_at(&PointPowers { ln_x, inv_pow })
    }

    /// Evaluates using precomputed point data (one exp amortized by caller).
    pub fn eval_at(&self, pt: &PointPowers) -> Real {
        &horner(&self.coeffs, &pt.ln_x) * &pt.inv_pow
    }

    /// Point data for an integer abscissa, reusing the ln-cache.
    pub fn powers_at_int(&self, n: u64) -> PointPowers {
        let ln_x = Real::ln_int(n, self.prec());
        let inv_pow = (&(-&self.neg_power) * &ln_x).exp();
        PointPowers { ln_x, inv_pow }
    }

    pub fn powers_at(&self, x: &Real) -> PointPowers {
        let ln_x = x.ln();
        let inv_pow = (&(-&self.neg_power) * &ln_x).exp();
        PointPowers { ln_x, inv_pow }
    }

    /// d/dx, again in the family with the power raised by one.
    pub fn derivative(&self) -> LogPoly {
        let p = self.prec();
        let b = &self.neg_power;
        let mut out = vec![Real::zero(p); self.coeffs.len()];
        for (a, c) in self.coeffs.iter().enumerate() {
            // c L^a x^(-b)  ->  a c L^(a-1) x^(-b-1) - b c L^a x^(-b-1)
            if a > 0 {
                out[a - 1] = &out[a - 1] + &(&Real::from_u64(a as u64, p) * c);
            }
            out[a] = &out[a] - &(b * c);
        }
        LogPoly::new(b + &Real::one(p), out)
    }

    /// Same polynomial with absolute coefficients: a pointwise majorant on
    /// x >= 1 where every ln-power is non-negative.
    pub fn abs_coeffs(&self) -> LogPoly {
        LogPoly::new(self.neg_power.clone(), self.coeffs.iter().map(|c| c.abs()).collect())
    }

    /// Integral over [n, oo); requires `neg_power > 1`.
    ///
    /// Uses `int L^a x^(-b) dx = L^a x^(1-b)/(1-b) - a/(1-b) * int L^(a-1) x^(-b)`,
    /// so the result is `N^(1-b)` times a polynomial in `ln N`.
    pub fn integral_to_inf(&self, pt: &PointPowers, x: &Real) -> Real {
        let p = self.prec();
        let bm1 = &self.neg_power - &Real::one(p);
        debug_assert!(bm1.is_positive(), "tail integral needs decay faster than 1/x");
        // x^(1-b) = x^(-b) * x
        let x_pow = &pt.inv_pow * x;
        // I_a = L^a N^(1-b)/(b-1) + a/(b-1) I_(a-1);  I_0 = N^(1-b)/(b-1)
        let mut i_a = &x_pow / &bm1;
        let mut acc = &self.coeffs[0] * &i_a;
        let mut l_pow = Real::one(p);
        for a in 1..self.coeffs.len() {
            l_pow = &l_pow * &pt.ln_x;
            i_a = &(&(&l_pow * &x_pow) + &(&Real::from_u64(a as u64, p) * &i_a)) / &bm1;
            acc = &acc + &(&self.coeffs[a] * &i_a);
        }
        acc
    }

    /// Antiderivative `F` with `F'(x) = self(x)`.
    ///
    /// For `neg_power != 1` the result is `x^(1-b) * poly(ln x)`; the kernel
    /// `L^a / x` integrates to `L^(a+1)/(a+1)`, a pure log polynomial.
    pub fn antiderivative(&self) -> LogPolyAntiderivative {
        let p = self.prec();
        let one_minus_b = &Real::one(p) - &self.neg_power;
        if one_minus_b.is_zero() {
            let mut out = vec![Real::zero(p); self.coeffs.len() + 1];
            for (a, c) in self.coeffs.iter().enumerate() {
                out[a + 1] = c / &Real::from_u64(a as u64 + 1, p);
            }
            return LogPolyAntiderivative { coeffs: out, log_form: true };
        }
        let mut work = self.coeffs.clone();
        let mut out = vec![Real::zero(p); work.len()];
        for a in (0..work.len()).rev() {
            out[a] = &work[a] / &one_minus_b;
            if a > 0 {
                let aa = Real::from_u64(a as u64, p);
                work[a - 1] = &work[a - 1] - &(&aa * &out[a]);
            }
        }
        LogPolyAntiderivative { coeffs: out, log_form: false }
    }
}

/// `x^(1-b) * poly(ln x)` — or a pure `poly(ln x)` when the kernel power
/// is exactly one — the shapes antiderivatives of [`LogPoly`] take.
#[derive(Debug, Clone)]
pub struct LogPolyAntiderivative {
    coeffs: Vec<Real>,
    log_form: bool,
}

impl LogPolyAntiderivative {
    /// Evaluates given `ln x` and `x^(-b)` for the *original* kernel power b,
    /// so `x^(1-b) = x * x^(-b)` costs one multiplication.
    pub fn eval_at(&self, pt: &PointPowers, x: &Real) -> Real {
        let poly = horner(&self.coeffs, &pt.ln_x);
        if self.log_form {
            poly
        } else {
            &poly * &(&pt.inv_pow * x)
        }
    }
}

fn horner(coeffs: &[Real], x: &Real) -> Real {
    let mut acc = coeffs[coeffs.len() - 1].clone();
    for c in coeffs.iter().rev().skip(1) {
        acc = &(&acc * x) + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: usize = 192;

    fn r(v: f64) -> Real {
        Real::from_f64(v, P)
    }

    #[test]
    fn eval_matches_f64() {
        // (2 ln x - 0.5 ln^2 x) / x^1.5  at x = 7
        let f = LogPoly::new(r(1.5), vec![r(0.0), r(2.0), r(-0.5)]);
        let x = 7.0_f64;
        let expect = (2.0 * x.ln() - 0.5 * x.ln().powi(2)) / x.powf(1.5);
        assert!((f.eval(&r(7.0)).to_f64() - expect).abs() < 1e-15);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let f = LogPoly::new(r(1.3), vec![r(1.0), r(-2.0), r(0.7)]);
        let df = f.derivative();
        let x = 3.7_f64;
        let h = 1e-6;
        let fd = (f.eval(&r(x + h)).to_f64() - f.eval(&r(x - h)).to_f64()) / (2.0 * h);
        assert!((df.eval(&r(x)).to_f64() - fd).abs() < 1e-8);
    }

    #[test]
    fn tail_integral_matches_quadrature_sum() {
        // int_5^oo ln(x)/x^3 dx = (2 ln 5 + 1)/(4 * 25)
        let f = LogPoly::new(r(3.0), vec![r(0.0), r(1.0)]);
        let x = r(5.0);
        let pt = f.powers_at(&x);
        let got = f.integral_to_inf(&pt, &x).to_f64();
        let expect = (2.0 * 5.0_f64.ln() + 1.0) / 100.0;
        assert!((got - expect).abs() < 1e-15, "{got} vs {expect}");
    }

    #[test]
    fn antiderivative_differentiates_back() {
        let f = LogPoly::new(r(2.2), vec![r(1.0), r(3.0)]);
        let anti = f.antiderivative();
        let x = 2.9_f64;
        let h = 1e-6;
        let eval = |t: f64| {
            let tr = r(t);
            let pt = f.powers_at(&tr);
            anti.eval_at(&pt, &tr).to_f64()
        };
        let fd = (eval(x + h) - eval(x - h)) / (2.0 * h);
        assert!((fd - f.eval(&r(x)).to_f64()).abs() < 1e-8);
    }
}
