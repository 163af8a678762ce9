//! Arbitrary-precision real numbers.
//!
//! [`Real`] wraps `astro_float::BigFloat` with a tracked bit precision so that
//! arithmetic composes without threading precision arguments through every
//! call site. Binary operations evaluate at the larger precision of the two
//! operands and round to nearest-even, which keeps results deterministic.
//!
//! Transcendental functions need a cache of shared constants; it lives in a
//! thread-local so the public API stays `&self` and values never cross
//! threads. Logarithms of small integers are memoized per precision because
//! series evaluation asks for `ln n` over the same integers at every call.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> =
        RefCell::new(Consts::new().expect("constants cache"));
    static LN_CACHE: RefCell<HashMap<(u64, usize), BigFloat>> =
        RefCell::new(HashMap::new());
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// An arbitrary-precision real number with an explicit working precision in bits.
#[derive(Clone)]
pub struct Real {
    x: BigFloat,
    prec: usize,
}

impl Real {
    pub fn from_f64(v: f64, prec: usize) -> Self {
        Real { x: BigFloat::from_f64(v, prec), prec }
    }

    pub fn from_u64(v: u64, prec: usize) -> Self {
        Real { x: BigFloat::from_word(v, prec), prec }
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        let r = Real::from_u64(v.unsigned_abs(), prec);
        if v < 0 { -&r } else { r }
    }

    /// Exact small rational, e.g. `Real::from_ratio(1, 3, p)`.
    pub fn from_ratio(num: i64, den: i64, prec: usize) -> Self {
        &Real::from_i64(num, prec) / &Real::from_i64(den, prec)
    }

    /// Parses a decimal literal at the given precision.
    pub fn parse(s: &str, prec: usize) -> Self {
        let x = with_consts(|cc| BigFloat::parse(s, Radix::Dec, prec, RM, cc));
        Real { x, prec }
    }

    pub fn zero(prec: usize) -> Self {
        Real { x: BigFloat::from_word(0, prec), prec }
    }

    pub fn one(prec: usize) -> Self {
        Real { x: BigFloat::from_word(1, prec), prec }
    }

    pub fn pi(prec: usize) -> Self {
        Real { x: with_consts(|cc| cc.pi(prec, RM)), prec }
    }

    pub fn ln2(prec: usize) -> Self {
        Real { x: with_consts(|cc| cc.ln_2(prec, RM)), prec }
    }

    /// `ln n` for a positive integer, memoized per (n, precision).
    pub fn ln_int(n: u64, prec: usize) -> Self {
        debug_assert!(n > 0);
        let x = LN_CACHE.with(|cache| {
            let mut cache = cache.borrow_mut();
            cache
                .entry((n, prec))
                .or_insert_with(|| {
                    with_consts(|cc| BigFloat::from_word(n, prec).ln(prec, RM, cc))
                })
                .clone()
        });
        Real { x, prec }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    /// Rounds to a (usually smaller) precision.
    pub fn with_prec(&self, prec: usize) -> Self {
        let mut x = self.x.clone();
        // set_precision only fails on invalid precision, which new() would
        // also have rejected.
        x.set_precision(prec, RM).expect("set precision");
        Real { x, prec }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.x.is_negative() && !self.x.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.x.is_positive() && !self.x.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.x.is_nan() && !self.x.is_inf()
    }

    pub fn abs(&self) -> Self {
        Real { x: self.x.abs(), prec: self.prec }
    }

    pub fn floor(&self) -> Self {
        Real { x: self.x.floor(), prec: self.prec }
    }

    pub fn recip(&self) -> Self {
        Real { x: self.x.reciprocal(self.prec, RM), prec: self.prec }
    }

    /// Integer power by repeated squaring; never touches the constants cache.
    pub fn powi(&self, n: u64) -> Self {
        Real { x: self.x.powi(n as usize, self.prec, RM), prec: self.prec }
    }

    /// Real power `self^e`; requires `self > 0`.
    pub fn pow(&self, e: &Real) -> Self {
        let p = self.prec.max(e.prec);
        Real { x: with_consts(|cc| self.x.pow(&e.x, p, RM, cc)), prec: p }
    }

    pub fn sqrt(&self) -> Self {
        Real { x: self.x.sqrt(self.prec, RM), prec: self.prec }
    }

    pub fn ln(&self) -> Self {
        Real { x: with_consts(|cc| self.x.ln(self.prec, RM, cc)), prec: self.prec }
    }

    pub fn exp(&self) -> Self {
        Real { x: with_consts(|cc| self.x.exp(self.prec, RM, cc)), prec: self.prec }
    }

    pub fn sin(&self) -> Self {
        Real { x: with_consts(|cc| self.x.sin(self.prec, RM, cc)), prec: self.prec }
    }

    pub fn cos(&self) -> Self {
        Real { x: with_consts(|cc| self.x.cos(self.prec, RM, cc)), prec: self.prec }
    }

    pub fn tan(&self) -> Self {
        Real { x: with_consts(|cc| self.x.tan(self.prec, RM, cc)), prec: self.prec }
    }

    /// Binary exponent e with |self| in [2^(e-1), 2^e), or None for zero/non-finite.
    pub fn bin_exponent(&self) -> Option<i32> {
        if self.x.is_zero() || self.x.is_nan() || self.x.is_inf() {
            None
        } else {
            self.x.exponent().map(|e| e as i32)
        }
    }

    /// Magnitude as a rough power of two; zero maps to the minimum.
    pub fn mag2(&self) -> i32 {
        self.bin_exponent().unwrap_or(i32::MIN)
    }

    /// One unit of relative rounding slack at this precision.
    pub fn eps(&self) -> f64 {
        2f64.powi(-(self.prec as i32) + 1)
    }

    /// Nearest f64, rounding toward zero in the last bit.
    pub fn to_f64(&self) -> f64 {
        if self.x.is_zero() {
            return 0.0;
        }
        if self.x.is_nan() {
            return f64::NAN;
        }
        if self.x.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.x.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        let (words, _n, sign, e, _inexact) =
            self.x.as_raw_parts().expect("finite value has raw parts");
        let k = words.len();
        let hi = words[k - 1] as f64;
        let lo = if k >= 2 { words[k - 2] as f64 } else { 0.0 };
        // value = 0.m * 2^e with the mantissa's top bit just below the point
        let frac = hi * 2f64.powi(-64) + lo * 2f64.powi(-128);
        let mag = frac * 2f64.powi(e.clamp(-1070, 1024));
        if sign == Sign::Neg { -mag } else { mag }
    }

    /// Decimal string at full working precision.
    pub fn to_string_full(&self) -> String {
        with_consts(|cc| self.x.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into())
    }

    fn bin(a: &Real, b: &Real, f: impl FnOnce(&BigFloat, &BigFloat, usize) -> BigFloat) -> Real {
        let p = a.prec.max(b.prec);
        Real { x: f(&a.x, &b.x, p), prec: p }
    }
}

impl std::ops::Add for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        Real::bin(self, rhs, |a, b, p| a.add(b, p, RM))
    }
}

impl std::ops::Sub for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        Real::bin(self, rhs, |a, b, p| a.sub(b, p, RM))
    }
}

impl std::ops::Mul for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        Real::bin(self, rhs, |a, b, p| a.mul(b, p, RM))
    }
}

impl std::ops::Div for &Real {
    type Output = Real;
    fn div(self, rhs: &Real) -> Real {
        Real::bin(self, rhs, |a, b, p| a.div(b, p, RM))
    }
}

impl std::ops::Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { x: self.x.clone().neg(), prec: self.prec }
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.x.cmp(&other.x) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.x.cmp(&other.x).map(|c| c.cmp(&0))
    }
}

impl std::fmt::Debug for Real {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Real({:e} @{}b)", self.to_f64(), self.prec)
    }
}

impl std::fmt::Display for Real {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_string_full())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_round_trip() {
        let p = 192;
        let a = Real::from_f64(1.5, p);
        let b = Real::from_ratio(1, 3, p);
        let c = &(&a + &b) * &Real::from_u64(3, p);
        assert!((c.to_f64() - 5.5).abs() < 1e-15);
    }

    #[test]
    fn ln_int_is_cached_and_correct() {
        let p = 192;
        let l10 = Real::ln_int(10, p);
        assert!((l10.to_f64() - std::f64::consts::LN_10).abs() < 1e-15);
        let again = Real::ln_int(10, p);
        assert_eq!(l10.to_f64(), again.to_f64());
    }

    #[test]
    fn to_f64_handles_signs_and_magnitudes() {
        let p = 128;
        for v in [0.0, 1.0, -1.0, 0.5, -3.25, 1e-12, -2.5e17, 7.0 / 3.0] {
            let r = Real::from_f64(v, p);
            assert_eq!(r.to_f64(), v, "round trip of {v}");
        }
    }

    #[test]
    fn parse_matches_f64_literal() {
        let p = 256;
        let r = Real::parse("0.577215664901532860606512090082402431042", p);
        assert!((r.to_f64() - 0.5772156649015329).abs() < 1e-16);
    }

    #[test]
    fn comparisons() {
        let p = 128;
        assert!(Real::from_f64(1.0, p) > Real::from_f64(0.5, p));
        assert!(Real::from_f64(-2.0, p) < Real::zero(p));
        assert_eq!(Real::from_u64(4, p), Real::from_f64(4.0, p));
    }
}
