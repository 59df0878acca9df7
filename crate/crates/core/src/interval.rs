//! Outward-rounded interval arithmetic on `f64`, and exact integer roots.
//!
//! Basic operations are correctly rounded, so one ulp of outward widening
//! suffices. `ln` and `exp` from the platform math library are accurate to
//! within one ulp; results are widened by two.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

fn down(x: f64, ulps: usize) -> f64 {
    (0..ulps).fold(x, |v, _| v.next_down())
}

fn up(x: f64, ulps: usize) -> f64 {
    (0..ulps).fold(x, |v, _| v.next_up())
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// An exactly representable value.
    pub fn exact(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn from_u64(n: u64) -> Self {
        let x = n as f64;
        if n < (1u64 << 53) {
            Self::exact(x)
        } else {
            Interval::new(down(x, 1), up(x, 1))
        }
    }

    pub fn from_big(n: &BigInt) -> Self {
        match n.to_u64() {
            Some(v) => Self::from_u64(v),
            None => {
                let x = n.to_f64().unwrap_or(f64::INFINITY);
                Interval::new(down(x, 1), up(x, 1))
            }
        }
    }

    /// `ln n` for a positive big integer; handles values beyond `f64` range.
    pub fn ln_big(n: &BigInt) -> Self {
        assert!(n.is_positive());
        if let Some(v) = n.to_u64() {
            return Self::from_u64(v).ln();
        }
        let bits = n.bits();
        let shift = bits - 60;
        let top: BigInt = n >> shift;
        // n ∈ [top, top + 1)·2^shift
        let t = Self::from_big(&top);
        let t = Interval::new(t.lo, (t.hi + 1.0).next_up());
        t.ln().add(Self::ln2().mul(Self::from_u64(shift)))
    }

    pub fn ln2() -> Self {
        let l = std::f64::consts::LN_2;
        Interval::new(down(l, 1), up(l, 1))
    }

    fn is_zero(self) -> bool {
        self.lo == 0.0 && self.hi == 0.0
    }

    pub fn add(self, o: Interval) -> Interval {
        if o.is_zero() {
            return self;
        }
        if self.is_zero() {
            return o;
        }
        Interval::new(down(self.lo + o.lo, 1), up(self.hi + o.hi, 1))
    }

    pub fn sub(self, o: Interval) -> Interval {
        Interval::new(down(self.lo - o.hi, 1), up(self.hi - o.lo, 1))
    }

    pub fn mul(self, o: Interval) -> Interval {
        if self.is_zero() || o.is_zero() {
            return Self::exact(0.0);
        }
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::new(down(lo, 1), up(hi, 1))
    }

    /// Division by an interval of positive numbers.
    pub fn div(self, o: Interval) -> Interval {
        assert!(o.lo > 0.0, "division by an interval containing zero");
        let c = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::new(down(lo, 1), up(hi, 1))
    }

    pub fn ln(self) -> Interval {
        assert!(self.lo > 0.0, "ln of a non-positive interval");
        let lo = if self.lo == 1.0 { 0.0 } else { down(self.lo.ln(), 2) };
        let hi = if self.hi == 1.0 { 0.0 } else { up(self.hi.ln(), 2) };
        Interval::new(lo, hi)
    }

    pub fn log2(self) -> Interval {
        self.ln().div(Self::ln2())
    }

    pub fn exp(self) -> Interval {
        let lo = if self.lo == 0.0 { 1.0 } else { down(self.lo.exp(), 2).max(0.0) };
        let hi = if self.hi == 0.0 { 1.0 } else { up(self.hi.exp(), 2) };
        Interval::new(lo, hi)
    }

    /// `self^(num/den)` for a positive base.
    pub fn pow_ratio(self, num: i64, den: i64) -> Interval {
        if self.lo == 1.0 && self.hi == 1.0 {
            return self;
        }
        self.ln().mul(Self::exact(num as f64).div(Self::exact(den as f64))).exp()
    }

    /// `self^e` for an interval exponent and a base `≥ 1`.
    pub fn pow(self, e: Interval) -> Interval {
        self.ln().mul(e).exp()
    }

    /// Every point of `self` is `≤` every point of `other`.
    pub fn certainly_le(self, other: Interval) -> bool {
        self.hi <= other.lo
    }

    pub fn midpoint(self) -> f64 {
        self.lo + (self.hi - self.lo) / 2.0
    }
}

/// `⌊x^{1/n}⌋` for `x ≥ 0`.
pub fn iroot(x: &BigInt, n: u32) -> BigInt {
    assert!(!x.is_negative());
    if x.is_zero() {
        return BigInt::zero();
    }
    x.nth_root(n)
}

/// `⌊x^{3/7}⌋`, exact.
pub fn floor_pow_3_7(x: u64) -> BigInt {
    iroot(&BigInt::from(x).pow(3), 7)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enclosures() {
        let x = Interval::from_u64(4).ln();
        assert!(x.lo <= 4f64.ln() && 4f64.ln() <= x.hi);
        let e = Interval::exact(1.0).exp();
        assert!(e.lo < std::f64::consts::E && std::f64::consts::E < e.hi);
        assert_eq!(Interval::from_u64(1).ln(), Interval::exact(0.0));
        let two = Interval::from_u64(8).log2();
        assert!(two.lo <= 3.0 && 3.0 <= two.hi);
    }

    #[test]
    fn big_logs() {
        let n = BigInt::from(3u8).pow(500);
        let l = Interval::ln_big(&n);
        let exact = 500.0 * 3f64.ln();
        assert!(l.lo <= exact && exact <= l.hi);
        assert!(l.hi - l.lo < 1e-9);
    }

    #[test]
    fn integer_roots() {
        assert_eq!(floor_pow_3_7(128), BigInt::from(8));
        assert_eq!(floor_pow_3_7(1), BigInt::from(1));
        assert_eq!(floor_pow_3_7(6), BigInt::from(2));
        assert_eq!(iroot(&BigInt::from(0), 7), BigInt::from(0));
    }
}
