use std::fmt;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// Closed floating-point interval with outward rounding.
///
/// Every operation widens its result by one ulp on each side, so the exact
/// real result of the operation on any points of the operands is contained.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

// Named methods rather than operator traits: every operation rounds outward.
#[allow(clippy::should_implement_trait)]
impl Interval {
    pub fn new(lo: f64, hi: f64) -> Interval {
        debug_assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Interval {
        Interval { lo: x, hi: x }
    }

    /// Enclosure of an exact rational (conversion error covered by widening).
    pub fn from_rational(x: &BigRational) -> Interval {
        let v = x.to_f64().unwrap_or(f64::NAN);
        Interval::point(v).widen_ulps(2)
    }

    pub fn widen_ulps(self, n: u32) -> Interval {
        let (mut lo, mut hi) = (self.lo, self.hi);
        for _ in 0..n {
            lo = lo.next_down();
            hi = hi.next_up();
        }
        Interval { lo, hi }
    }

    fn outward(lo: f64, hi: f64) -> Interval {
        Interval {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn add(self, o: Interval) -> Interval {
        Interval::outward(self.lo + o.lo, self.hi + o.hi)
    }

    pub fn sub(self, o: Interval) -> Interval {
        Interval::outward(self.lo - o.hi, self.hi - o.lo)
    }

    pub fn add_f64(self, x: f64) -> Interval {
        self.add(Interval::point(x))
    }

    pub fn mul(self, o: Interval) -> Interval {
        let c = [
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        ];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::outward(lo, hi)
    }

    pub fn scale(self, k: f64) -> Interval {
        self.mul(Interval::point(k))
    }

    /// Reciprocal; the operand must not contain zero.
    pub fn recip(self) -> Interval {
        assert!(
            !self.contains_zero(),
            "reciprocal of interval containing zero"
        );
        Interval::outward(1.0 / self.hi, 1.0 / self.lo)
    }

    pub fn div(self, o: Interval) -> Interval {
        self.mul(o.recip())
    }

    pub fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    pub fn abs(self) -> Interval {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            self.neg()
        } else {
            Interval {
                lo: 0.0,
                hi: self.hi.max(-self.lo),
            }
        }
    }

    /// Largest distance from a point of the interval to `x`.
    pub fn max_distance(&self, x: f64) -> f64 {
        (self.hi - x).abs().max((x - self.lo).abs())
    }

    /// Smallest distance from a point of the interval to `x`.
    pub fn min_distance(&self, x: f64) -> f64 {
        if self.contains(x) {
            0.0
        } else {
            (self.lo - x).abs().min((self.hi - x).abs())
        }
    }

    pub fn hull(self, o: Interval) -> Interval {
        Interval {
            lo: self.lo.min(o.lo),
            hi: self.hi.max(o.hi),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn operations_enclose_rational_results(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = BigRational::new(a.into(), b.into());
            let y = BigRational::new(c.into(), d.into());
            let (ix, iy) = (Interval::from_rational(&x), Interval::from_rational(&y));
            let check = |i: Interval, exact: BigRational| {
                let lo = BigRational::from_float(i.lo).unwrap();
                let hi = BigRational::from_float(i.hi).unwrap();
                lo <= exact && exact <= hi
            };
            prop_assert!(check(ix.add(iy), &x + &y));
            prop_assert!(check(ix.sub(iy), &x - &y));
            prop_assert!(check(ix.mul(iy), &x * &y));
            if c != 0 {
                prop_assert!(check(ix.div(iy), &x / &y));
            }
        }
    }

    #[test]
    fn abs_and_distances() {
        let i = Interval::new(-1.0, 2.0);
        assert_eq!(i.abs(), Interval::new(0.0, 2.0));
        assert_eq!(i.max_distance(0.0), 2.0);
        assert_eq!(i.min_distance(3.0), 1.0);
    }
}
