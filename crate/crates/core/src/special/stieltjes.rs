//! Stieltjes constants from the limit definition.
//!
//! `gamma_k = lim_N [ sum_{n<=N} ln^k n / n  -  ln^(k+1) N/(k+1) ]`, with the
//! limit reached at finite N through the usual correction ladder: subtract
//! `f(N)/2` and the Bernoulli terms of `f = ln^k x / x`. Partial sums and the
//! target cancel catastrophically for larger k, so the table is built at
//! elevated precision and rounded down on the way out.
//!
//! Only `gamma_0` and `gamma_1` are exposed; the evaluator keeps a private
//! table up to k = 16 to feed the near-pole Laurent path.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::approx::Approx;
use crate::error::{Error, Result};
use crate::numerics::euler_maclaurin::em_correction_terms;
use crate::numerics::logpoly::LogPoly;
use crate::precision::PrecisionContext;
use crate::real::Real;

/// Highest index the internal table carries.
pub(crate) const TABLE_MAX_K: usize = 16;

const EM_POINT: u64 = 120;
const GUARD_BITS: usize = 128;

thread_local! {
    static TABLE: RefCell<HashMap<usize, Rc<Vec<Real>>>> = RefCell::new(HashMap::new());
}

/// gamma_0 .. gamma_TABLE_MAX_K at the context's precision (write-once cache).
pub(crate) fn stieltjes_table(ctx: &PrecisionContext) -> Result<Rc<Vec<Real>>> {
    let bits = ctx.bits();
    if let Some(hit) = TABLE.with(|t| t.borrow().get(&bits).cloned()) {
        return Ok(hit);
    }
    let table = Rc::new(compute_table(ctx)?);
    TABLE.with(|t| t.borrow_mut().insert(bits, table.clone()));
    Ok(table)
}

fn compute_table(ctx: &PrecisionContext) -> Result<Vec<Real>> {
    let outer_bits = ctx.bits();
    let p = outer_bits + GUARD_BITS;
    let inner = PrecisionContext::new(
        ctx.work_digits() + (GUARD_BITS as f64 / 3.33) as u32,
        ctx.target_tol(),
        ctx.max_terms(),
        ctx.quad_max_depth(),
    )?;

    // One pass accumulates sum ln^k n / n for every k at once.
    let mut partial = vec![Real::zero(p); TABLE_MAX_K + 1];
    for n in 1..=EM_POINT {
        let inv_n = Real::from_u64(n, p).recip();
        let ln_n = Real::ln_int(n, p);
        let mut l_pow = Real::one(p);
        for part in partial.iter_mut() {
            *part = &*part + &(&l_pow * &inv_n);
            l_pow = &l_pow * &ln_n;
        }
    }

    let ln_n = Real::ln_int(EM_POINT, p);
    let mut out = Vec::with_capacity(TABLE_MAX_K + 1);
    for (k, part) in partial.iter().enumerate() {
        // int_1^N ln^k x / x dx = ln^(k+1) N / (k+1)
        let integral = &ln_n.powi(k as u64 + 1) / &Real::from_u64(k as u64 + 1, p);
        let mut coeffs = vec![Real::zero(p); k + 1];
        coeffs[k] = Real::one(p);
        let f = LogPoly::new(Real::one(p), coeffs);
        let (corr, _err) = em_correction_terms(&f, EM_POINT, 14, &inner)?;
        let gamma_k = &(part - &integral) + &corr;
        if !gamma_k.is_finite() {
            return Err(Error::NonFinite(format!("stieltjes constant {k}")));
        }
        out.push(gamma_k.with_prec(outer_bits));
    }
    Ok(out)
}

/// Ladder truncation scale of the table entries (used in budgets).
pub(crate) fn table_err(ctx: &PrecisionContext) -> f64 {
    // At N = 120 with 14 pairs the first omitted term is far below any
    // supported working precision; rounding of the guarded pass dominates.
    2f64.powi(-(ctx.bits() as i32) + 8)
}

/// The two named constants, as an error-budgeted pair.
#[derive(Debug, Clone)]
pub struct StieltjesConstants {
    pub gamma0: Approx,
    pub gamma1: Approx,
}

impl StieltjesConstants {
    pub fn compute(ctx: &PrecisionContext) -> Result<Self> {
        Ok(StieltjesConstants {
            gamma0: stieltjes_gamma(0, ctx)?,
            gamma1: stieltjes_gamma(1, ctx)?,
        })
    }
}

/// `gamma_k` for k in {0, 1}; higher indices are unsupported by contract.
pub fn stieltjes_gamma(k: u32, ctx: &PrecisionContext) -> Result<Approx> {
    if k > 1 {
        return Err(Error::UnsupportedIndex { k });
    }
    let table = stieltjes_table(ctx)?;
    Approx::new(table[k as usize].clone(), table_err(ctx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma0_matches_euler_mascheroni() {
        let ctx = PrecisionContext::default();
        let g0 = stieltjes_gamma(0, &ctx).unwrap();
        // 40 digits of the Euler–Mascheroni constant.
        let expect = ctx.parse("0.5772156649015328606065120900824024310422");
        assert!((g0.value() - &expect).to_f64().abs() < 1e-38);
        assert!((g0.to_f64() - 0.577216).abs() < 1e-5);
    }

    #[test]
    fn gamma1_sign_and_first_digits() {
        // Digits frozen from the brute-oracle run in tests/properties.rs.
        let ctx = PrecisionContext::default();
        let g1 = stieltjes_gamma(1, &ctx).unwrap();
        assert!(g1.value().is_negative());
        assert!((g1.to_f64() - (-0.0728158454)).abs() < 1e-9);
    }

    #[test]
    fn unsupported_index_rejected() {
        let ctx = PrecisionContext::default();
        assert!(matches!(
            stieltjes_gamma(3, &ctx),
            Err(Error::UnsupportedIndex { k: 3 })
        ));
    }

    #[test]
    fn table_is_stable_under_reuse() {
        let ctx = PrecisionContext::default();
        let a = stieltjes_table(&ctx).unwrap();
        let b = stieltjes_table(&ctx).unwrap();
        assert!(Rc::ptr_eq(&a, &b));
        assert_eq!(a.len(), TABLE_MAX_K + 1);
    }
}
