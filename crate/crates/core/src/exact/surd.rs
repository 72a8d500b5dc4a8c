use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Exact;
use crate::{Error, Result};

/// Default trial-division bound used to extract square factors from radicands.
pub const DEFAULT_RADICAND_BOUND: u64 = 1_000_000;

/// An irrational number `(p + q·√d)/r` in canonical form.
///
/// Canonical means: `d > 1` square-free, `q ≠ 0`, `r > 0` and
/// `gcd(p, q, r) = 1`. Two surds are equal as reals iff their canonical forms
/// are identical, so the derived `Eq` and `Hash` are value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    d: BigInt,
}

impl QuadraticSurd {
    /// Builds `(p + q√d)/r`, extracting square factors of `d` with the default
    /// trial-division bound. Returns a rational when the radical vanishes.
    #[allow(clippy::new_ret_no_self)]
    pub fn new(p: BigInt, q: BigInt, r: BigInt, d: BigInt) -> Result<Exact> {
        Self::with_bound(p, q, r, d, DEFAULT_RADICAND_BOUND)
    }

    pub fn with_bound(p: BigInt, q: BigInt, r: BigInt, d: BigInt, bound: u64) -> Result<Exact> {
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if d.is_negative() {
            return Err(Error::NegativeRadicand(d.to_string()));
        }
        if q.is_zero() || d.is_zero() {
            return Ok(Exact::Rational(BigRational::new(p, r)));
        }
        let (square, core) = squarefree_split(&d, bound)?;
        Ok(Self::from_parts(p, q * square, r, core))
    }

    /// `√d` as an exact number.
    pub fn sqrt(d: impl Into<BigInt>) -> Result<Exact> {
        Self::new(BigInt::zero(), BigInt::one(), BigInt::one(), d.into())
    }

    /// Normalizes signs and common factors; `d` must already be square-free
    /// (or 1, in which case the result is rational).
    pub(crate) fn from_parts(p: BigInt, q: BigInt, r: BigInt, d: BigInt) -> Exact {
        debug_assert!(!r.is_zero());
        if q.is_zero() || d.is_one() {
            return Exact::Rational(BigRational::new(p + q * d.sqrt(), r));
        }
        let (mut p, mut q, mut r) = if r.is_negative() {
            (-p, -q, -r)
        } else {
            (p, q, r)
        };
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        Exact::Surd(QuadraticSurd { p, q, r, d })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// `(p − q√d)/r`.
    pub fn conjugate(&self) -> QuadraticSurd {
        QuadraticSurd {
            p: self.p.clone(),
            q: -&self.q,
            r: self.r.clone(),
            d: self.d.clone(),
        }
    }

    /// Largest integer `n ≤ self`, decided by integer square-root bracketing.
    pub fn floor(&self) -> BigInt {
        // q√d is irrational, so it lies strictly inside (s, s + 1) or (−s − 1, −s).
        let s = (&self.q * &self.q * &self.d).sqrt();
        let floor_radical = if self.q.is_positive() { s } else { -s - 1 };
        (&self.p + floor_radical).div_floor(&self.r)
    }

    pub fn signum(&self) -> Sign {
        sign_of(&self.p, &self.q, &self.d)
    }

    pub fn to_f64(&self) -> f64 {
        let (p, q, r, d) = (
            self.p.to_f64(),
            self.q.to_f64(),
            self.r.to_f64(),
            self.d.to_f64(),
        );
        if let (Some(p), Some(q), Some(r), Some(d)) = (p, q, r, d) {
            let radical = q * d.sqrt();
            let num = p + radical;
            if num.is_finite() && r.is_finite() && num.abs() > 1e-6 * (p.abs() + radical.abs()) {
                return num / r;
            }
        }
        Exact::Surd(self.clone()).to_f64_slow()
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.q.is_negative() { '-' } else { '+' };
        write!(
            f,
            "({}{}{}*sqrt({}))/{}",
            self.p,
            op,
            self.q.abs(),
            self.d,
            self.r
        )
    }
}

/// Sign of `p + q√d` for square-free `d > 1` (or `q = 0`).
pub(crate) fn sign_of(p: &BigInt, q: &BigInt, d: &BigInt) -> Sign {
    let sp = p.sign();
    let sq = q.sign();
    if sq == Sign::NoSign {
        return sp;
    }
    if sp == Sign::NoSign || sp == sq {
        return sq;
    }
    // Opposite signs: the larger magnitude wins; equality is impossible.
    if p * p > q * q * d {
        sp
    } else {
        sq
    }
}

/// Splits `d = s²·c` with `c` square-free using trial division up to `bound`.
///
/// After trial division the cofactor has only prime factors above `bound`; it
/// is accepted when smaller than `(bound + 1)³` (then it is a prime, a product
/// of two primes, or a prime square, which `is_square` distinguishes).
pub(crate) fn squarefree_split(d: &BigInt, bound: u64) -> Result<(BigInt, BigInt)> {
    let too_large = || Error::RadicandTooLarge {
        radicand: d.to_string(),
        bound,
    };
    let n = d.to_u128().ok_or_else(too_large)?;
    if n <= 1 {
        return Ok((BigInt::one(), BigInt::from(n)));
    }
    let mut rest = n;
    let mut square: u128 = 1;
    let mut core: u128 = 1;
    let mut i: u64 = 2;
    while i <= bound {
        let ii = i as u128;
        if ii * ii > rest {
            break;
        }
        if rest % ii == 0 {
            let mut e = 0;
            while rest % ii == 0 {
                rest /= ii;
                e += 1;
            }
            for _ in 0..e / 2 {
                square *= ii;
            }
            if e % 2 == 1 {
                core *= ii;
            }
        }
        i += if i == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        let ii = i as u128;
        if ii * ii > rest {
            core *= rest;
        } else {
            let b = bound as u128 + 1;
            if b.checked_mul(b)
                .and_then(|x| x.checked_mul(b))
                .is_none_or(|cube| rest >= cube)
            {
                return Err(too_large());
            }
            let s = rest.sqrt();
            if s * s == rest {
                square *= s;
            } else {
                core *= rest;
            }
        }
    }
    Ok((BigInt::from(square), BigInt::from(core)))
}
