use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::ContinuedFraction;
use crate::exact::{isqrt, Exact, QuadraticSurd};
use crate::{Error, Result};

/// Finite expansion of a rational by Euclid's algorithm.
pub fn expand_rational(x: &BigRational) -> ContinuedFraction {
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    let mut digits = Vec::new();
    loop {
        let (a, r) = n.div_mod_floor(&d);
        digits.push(a);
        if r.is_zero() {
            break;
        }
        n = std::mem::replace(&mut d, r);
    }
    ContinuedFraction::finite(digits).expect("Euclid emits valid digits")
}

/// Eventually periodic expansion of a quadratic irrational.
///
/// The surd is brought to the classical form `(P + √D)/Q` with `Q | D − P²`;
/// the Gauss map then acts on the integer pair `(P, Q)` and the first
/// repeated pair closes the period.
pub fn expand_quadratic(x: &QuadraticSurd) -> ContinuedFraction {
    let (p, q, r, d) = (x.p(), x.q(), x.r(), x.d());
    // x = (p0 + √d0)/q0 with d0 = d·q².
    let (p0, q0) = if q.is_positive() {
        (p.clone(), r.clone())
    } else {
        (-p, -r)
    };
    let d0 = d * q * q;
    let big_d = &d0 * &q0 * &q0;
    let mut big_p = &p0 * q0.abs();
    let mut big_q = &q0 * q0.abs();
    let s = isqrt(&big_d);

    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut digits = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(big_p.clone(), big_q.clone())) {
            let period = digits[start..].to_vec();
            return if start == 0 {
                ContinuedFraction::purely_periodic(period)
            } else {
                let mut pre = digits[..start].to_vec();
                let a0 = pre.remove(0);
                ContinuedFraction::periodic(a0, pre, period)
            }
            .expect("expansion digits are valid");
        }
        seen.insert((big_p.clone(), big_q.clone()), digits.len());
        let a = if big_q.is_positive() {
            (&big_p + &s).div_floor(&big_q)
        } else {
            (-&big_p - &s - 1i32).div_floor(&-&big_q)
        };
        big_p = &a * &big_q - &big_p;
        big_q = (&big_d - &big_p * &big_p) / &big_q;
        digits.push(a);
    }
}

/// Expansion of an exact number: finite for rationals, periodic for surds.
pub fn expand(x: &Exact) -> ContinuedFraction {
    match x {
        Exact::Rational(r) => expand_rational(r),
        Exact::Surd(s) => expand_quadratic(s),
    }
}

/// One step of the Gauss map: `(⌊x⌋, 1/(x − ⌊x⌋))`.
pub fn gauss_step(x: &Exact) -> Result<(BigInt, Exact)> {
    let a = x.floor();
    let frac = x.sub(&Exact::from(a.clone()))?;
    if frac.is_zero() {
        return Err(Error::RationalInput);
    }
    Ok((a, frac.recip()?))
}
