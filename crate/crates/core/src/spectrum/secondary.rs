use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::TermValue;
use crate::contfrac::{ser_bigint, ContinuedFraction};
use crate::exact::{Exact, Interval};
use crate::{Error, Exec, Result};

/// Term of the secondary convergent `(a p_N + p_{N−1})/(a q_N + q_{N−1})`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SecondaryTerm {
    pub index: usize,
    #[serde(serialize_with = "ser_bigint")]
    pub a: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub k: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub m: BigInt,
    /// `(−1)^N (a + r)(α_{N+1} − a)/(α_{N+1} + r)` with `r = q_{N−1}/q_N`.
    ///
    /// The sign is that of `t_{N−1}`: secondary convergents lie on the same
    /// side of `α` as `p_{N−1}/q_{N−1}`.
    pub value: TermValue,
}

/// Secondary convergent term for `1 ≤ a ≤ a_{N+1} − 1`.
pub fn secondary_convergent_terms(
    alpha: &ContinuedFraction,
    n: usize,
    a: &BigInt,
) -> Result<SecondaryTerm> {
    if alpha.is_finite() {
        return Err(Error::RationalInput);
    }
    let next = alpha.digit(n + 1).expect("infinite");
    if a < &BigInt::one() || a >= &next {
        return Err(Error::SecondaryOutOfRange {
            a: a.to_string(),
            max: (&next - BigInt::one()).to_string(),
        });
    }
    let conv = alpha.convergents(n)?;
    let (p_prev, q_prev) = if n == 0 {
        (BigInt::one(), BigInt::zero())
    } else {
        (conv[n - 1].p.clone(), conv[n - 1].q.clone())
    };
    let (p, q) = (&conv[n].p, &conv[n].q);
    let r = BigRational::new(q_prev.clone(), q.clone());
    let a_r = BigRational::from_integer(a.clone()) + &r;
    let value = match alpha.tail(n + 1)?.value() {
        Some(tail) => {
            let num = tail
                .sub(&Exact::from(a.clone()))?
                .mul(&Exact::Rational(a_r))?;
            let v = num.div(&tail.add(&Exact::Rational(r))?)?;
            TermValue::Exact(if n.is_multiple_of(2) { v } else { v.neg() })
        }
        None => {
            let tail = alpha.tail_interval(n + 1);
            let af = Interval::from_rational(&BigRational::from_integer(a.clone()));
            let v = Interval::from_rational(&a_r)
                .mul(tail.sub(af))
                .div(tail.add(Interval::from_rational(&r)));
            TermValue::Enclosure(if n.is_multiple_of(2) { v } else { v.neg() })
        }
    };
    Ok(SecondaryTerm {
        index: n,
        a: a.clone(),
        k: a * p + p_prev,
        m: a * q + q_prev,
        value,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LegendreHit {
    #[serde(serialize_with = "ser_bigint")]
    pub p: BigInt,
    pub q: u64,
    pub convergent_index: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LegendreReport {
    pub q_max: u64,
    pub hits: Vec<LegendreHit>,
}

impl LegendreReport {
    /// Every hit is a convergent of `α`.
    pub fn all_convergents(&self) -> bool {
        self.hits.iter().all(|h| h.convergent_index.is_some())
    }
}

// Sign of |q²α − pq| − 1/2, refined until decided; `None` for exact zero.
fn legendre_hit(alpha: &ContinuedFraction, value: Option<&Exact>, q: u64) -> Option<BigInt> {
    let qb = BigInt::from(q);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if let Some(x) = value {
        let p = x.scale(&qb).round();
        let d = Exact::from(&p * &qb)
            .sub(&x.scale(&(&qb * &qb)))
            .expect("rational mixes");
        return (d.abs() < Exact::Rational(half)).then_some(p);
    }
    let mut den: BigInt = &qb << 40usize;
    loop {
        let (lo, hi) = alpha.enclosure(&den);
        let q2 = BigRational::from_integer(&qb * &qb);
        let p = ((&lo + &hi) * BigRational::from_integer(qb.clone())
            / BigRational::from_integer(2.into()))
        .round()
        .to_integer();
        let pq = BigRational::from_integer(&p * &qb);
        let a = (&q2 * &lo - &pq).abs();
        let b = (&q2 * &hi - &pq).abs();
        if a < half && b < half {
            return Some(p);
        }
        if a >= half && b >= half && (&q2 * &lo - &pq).signum() == (&q2 * &hi - &pq).signum() {
            return None;
        }
        den <<= 40usize;
    }
}

/// All reduced `p/q` with `q ≤ q_max` and `|α − p/q| < 1/(2q²)`, each
/// tagged with its convergent index (Legendre: there should always be one).
pub fn legendre_filter(
    alpha: &ContinuedFraction,
    q_max: u64,
    exec: Exec,
) -> Result<LegendreReport> {
    if q_max == 0 {
        return Err(Error::InvalidArgument("q_max must be at least 1".into()));
    }
    let value = alpha.value();
    let found = exec.map_range(1..q_max as usize + 1, |q| {
        let q = q as u64;
        legendre_hit(alpha, value.as_ref(), q)
            .filter(|p| p.gcd(&BigInt::from(q)).is_one())
            .map(|p| (p, q))
    });
    let mut index: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    for c in alpha.convergent_iter() {
        let past = c.q > BigInt::from(q_max);
        index.insert((c.p, c.q), c.index);
        if past {
            break;
        }
    }
    let hits = found
        .into_iter()
        .flatten()
        .map(|(p, q)| {
            let convergent_index = index.get(&(p.clone(), BigInt::from(q))).copied();
            LegendreHit {
                p,
                q,
                convergent_index,
            }
        })
        .collect();
    Ok(LegendreReport { q_max, hits })
}
