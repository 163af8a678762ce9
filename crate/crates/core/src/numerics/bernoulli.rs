//! Bernoulli numbers, computed once from the defining recurrence.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::real::Real;

/// Highest cached index; correction ladders stop early enough that an
/// estimate of the first omitted term always stays within the cache.
pub const MAX_INDEX: usize = 30;

fn table() -> &'static Vec<BigRational> {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0, with B_1 = -1/2.
        let mut b: Vec<BigRational> = Vec::with_capacity(MAX_INDEX + 1);
        b.push(BigRational::one());
        for m in 1..=MAX_INDEX {
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one(); // C(m+1, 0)
            for (j, bj) in b.iter().enumerate() {
                acc += BigRational::from(binom.clone()) * bj;
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            // binom now holds C(m+1, m)
            b.push(-acc / BigRational::from(binom));
        }
        b
    })
}

/// B_k as an exact rational converted at the given precision.
///
/// Panics if `k` exceeds [`MAX_INDEX`]; callers size their ladders first.
pub fn bernoulli(k: usize, prec: usize) -> Real {
    let q = &table()[k];
    let num = q.numer().to_i128().expect("Bernoulli numerator fits i128");
    let den = q.denom().to_i128().expect("Bernoulli denominator fits i128");
    let n = Real::from_u64(num.unsigned_abs() as u64, prec);
    let d = Real::from_u64(den.unsigned_abs() as u64, prec);
    let v = &n / &d;
    if num.is_negative() != den.is_negative() { -&v } else { v }
}

/// |B_k| as f64, for sizing error estimates.
pub fn bernoulli_abs_f64(k: usize) -> f64 {
    let q = &table()[k];
    q.numer().to_f64().unwrap_or(f64::MAX).abs() / q.denom().to_f64().unwrap_or(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_values() {
        let p = 192;
        assert_eq!(bernoulli(0, p).to_f64(), 1.0);
        assert_eq!(bernoulli(1, p).to_f64(), -0.5);
        assert!((bernoulli(2, p).to_f64() - 1.0 / 6.0).abs() < 1e-16);
        assert!((bernoulli(4, p).to_f64() + 1.0 / 30.0).abs() < 1e-16);
        assert_eq!(bernoulli(3, p).to_f64(), 0.0);
        assert_eq!(bernoulli(29, p).to_f64(), 0.0);
    }

    #[test]
    fn b30_matches_reference() {
        // B_30 = 8615841276005 / 14322
        let p = 192;
        let b30 = bernoulli(30, p);
        let expect = 8615841276005.0 / 14322.0;
        assert!((b30.to_f64() - expect).abs() / expect < 1e-12);
    }
}
