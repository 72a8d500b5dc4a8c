//! Continued fractions: expansion, evaluation, convergents, tails, the
//! alternate order and interval splicing.

mod expand;
mod ops;
mod text;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact::{Exact, IntMatrix2, Interval, QuadraticSurd};
use crate::{Error, Result};

pub use expand::{expand, expand_quadratic, expand_rational, gauss_step};
pub use ops::{compare_alternate, eval_finite, reversal_ratio, splice, AltOrdering};

/// Index-addressable source of partial quotients for infinite expansions
/// that are not eventually periodic (Euler's number, constructed words).
///
/// `digit(0)` is the integer part; every later digit must be at least 1.
pub trait DigitSource: fmt::Debug + Send + Sync {
    fn digit(&self, i: usize) -> i64;

    /// Short human-readable name used in reports.
    fn label(&self) -> String;
}

/// A continued fraction `[a0; a1, a2, …]`.
///
/// `Periodic` keeps `a0` apart from the repeating structure: the digits
/// `a1, a2, …` are `pre` followed by `period` repeated forever. A purely
/// periodic expansion such as `[(1,2,1,1)^ω]` is therefore stored as
/// `[1; (2,1,1,1)^ω]`.
#[derive(Clone, Debug)]
pub enum ContinuedFraction {
    Finite(Vec<BigInt>),
    Periodic {
        a0: BigInt,
        pre: Vec<BigInt>,
        period: Vec<BigInt>,
    },
    Stream {
        source: Arc<dyn DigitSource>,
        offset: usize,
    },
}

/// The `index`-th convergent `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Convergent {
    pub index: usize,
    #[serde(serialize_with = "ser_bigint")]
    pub p: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub q: BigInt,
}

pub(crate) fn ser_bigint<S: serde::Serializer>(
    x: &BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl Convergent {
    pub fn as_rational(&self) -> BigRational {
        BigRational::new_raw(self.p.clone(), self.q.clone())
    }
}

impl PartialEq for ContinuedFraction {
    fn eq(&self, other: &Self) -> bool {
        use ContinuedFraction::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a == b,
            (
                Periodic { a0, pre, period },
                Periodic {
                    a0: b0,
                    pre: bp,
                    period: bq,
                },
            ) => a0 == b0 && pre == bp && period == bq,
            (
                Stream {
                    source: s1,
                    offset: o1,
                },
                Stream {
                    source: s2,
                    offset: o2,
                },
            ) => Arc::ptr_eq(s1, s2) && o1 == o2,
            _ => false,
        }
    }
}

fn check_digits(digits: &[BigInt], first_index: usize) -> Result<()> {
    for (i, a) in digits.iter().enumerate() {
        if a < &BigInt::one() {
            return Err(Error::InvalidDigit {
                index: first_index + i,
                value: a.to_string(),
            });
        }
    }
    Ok(())
}

impl ContinuedFraction {
    /// A finite expansion in canonical form (no trailing 1 unless of length 1).
    pub fn finite(mut digits: Vec<BigInt>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::EmptyDigits);
        }
        check_digits(&digits[1..], 1)?;
        if digits.len() > 1 && digits.last().is_some_and(|a| a.is_one()) {
            digits.pop();
            *digits.last_mut().expect("len >= 1") += 1;
        }
        Ok(ContinuedFraction::Finite(digits))
    }

    /// An eventually periodic expansion, reduced to minimal period and preperiod.
    pub fn periodic(a0: BigInt, mut pre: Vec<BigInt>, mut period: Vec<BigInt>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyDigits);
        }
        check_digits(&pre, 1)?;
        check_digits(&period, 1 + pre.len())?;
        let l = period.len();
        if let Some(m) =
            (1..=l).find(|&m| l.is_multiple_of(m) && (0..l).all(|i| period[i] == period[i % m]))
        {
            period.truncate(m);
        }
        while pre.last().is_some_and(|a| Some(a) == period.last()) {
            pre.pop();
            period.rotate_right(1);
        }
        Ok(ContinuedFraction::Periodic { a0, pre, period })
    }

    /// `[(b1, …, bl)^ω]`.
    pub fn purely_periodic(period: Vec<BigInt>) -> Result<Self> {
        let first = period.first().cloned().ok_or(Error::EmptyDigits)?;
        let mut rest = period;
        rest.rotate_left(1);
        Self::periodic(first, vec![], rest)
    }

    pub fn stream(source: Arc<dyn DigitSource>) -> Self {
        ContinuedFraction::Stream { source, offset: 0 }
    }

    /// Number of digits, `None` when infinite.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> Option<usize> {
        match self {
            ContinuedFraction::Finite(d) => Some(d.len()),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ContinuedFraction::Finite(_))
    }

    /// Partial quotient `a_i`, `None` past the end of a finite expansion.
    pub fn digit(&self, i: usize) -> Option<BigInt> {
        match self {
            ContinuedFraction::Finite(d) => d.get(i).cloned(),
            ContinuedFraction::Periodic { a0, pre, period } => Some(if i == 0 {
                a0.clone()
            } else if i <= pre.len() {
                pre[i - 1].clone()
            } else {
                period[(i - 1 - pre.len()) % period.len()].clone()
            }),
            ContinuedFraction::Stream { source, offset } => {
                Some(BigInt::from(source.digit(offset + i)))
            }
        }
    }

    /// Partial quotient as `f64`, for floating enclosures of small digits.
    pub(crate) fn digit_f64(&self, i: usize) -> Option<f64> {
        use num_traits::ToPrimitive;
        match self {
            ContinuedFraction::Stream { source, offset } => Some(source.digit(offset + i) as f64),
            _ => self.digit(i).and_then(|a| a.to_f64()),
        }
    }

    /// The first `n` digits.
    pub fn prefix(&self, n: usize) -> Result<Vec<BigInt>> {
        if let Some(len) = self.len() {
            if len < n {
                return Err(Error::StreamExhausted {
                    needed: n,
                    available: len,
                });
            }
        }
        Ok((0..n)
            .map(|i| self.digit(i).expect("checked length"))
            .collect())
    }

    /// Iterator over all digits (infinite unless finite).
    pub fn digits(&self) -> impl Iterator<Item = BigInt> + '_ {
        (0..).map_while(move |i| self.digit(i))
    }

    /// Convergents `p_N/q_N` for `N = 0..=n_max`.
    pub fn convergents(&self, n_max: usize) -> Result<Vec<Convergent>> {
        if let Some(len) = self.len() {
            if len <= n_max {
                return Err(Error::StreamExhausted {
                    needed: n_max + 1,
                    available: len,
                });
            }
        }
        Ok(self.convergent_iter().take(n_max + 1).collect())
    }

    /// Lazy convergents from the three-term recurrence.
    pub fn convergent_iter(&self) -> ConvergentIter<'_> {
        ConvergentIter {
            cf: self,
            index: 0,
            p: (BigInt::zero(), BigInt::one()),
            q: (BigInt::one(), BigInt::zero()),
        }
    }

    /// The shifted expansion `[a_n; a_{n+1}, …]`.
    pub fn tail(&self, n: usize) -> Result<Self> {
        match self {
            ContinuedFraction::Finite(d) => {
                if n >= d.len() {
                    return Err(Error::IndexOutOfRange {
                        index: n,
                        reason: "tail past the end of a finite expansion",
                    });
                }
                Ok(ContinuedFraction::Finite(d[n..].to_vec()))
            }
            ContinuedFraction::Periodic { pre, period, .. } => {
                if n == 0 {
                    return Ok(self.clone());
                }
                let a0 = self.digit(n).expect("infinite");
                if n <= pre.len() {
                    return Self::periodic(a0, pre[n..].to_vec(), period.clone());
                }
                let mut rotated = period.clone();
                rotated.rotate_left((n - pre.len()) % period.len());
                Self::periodic(a0, vec![], rotated)
            }
            ContinuedFraction::Stream { source, offset } => Ok(ContinuedFraction::Stream {
                source: Arc::clone(source),
                offset: offset + n,
            }),
        }
    }

    /// Digit `a0` and the next Gauss-map state `[a1; a2, …]`.
    pub fn gauss_step(&self) -> Result<(BigInt, Self)> {
        if self.len() == Some(1) {
            return Err(Error::RationalInput);
        }
        Ok((self.digit(0).expect("non-empty"), self.tail(1)?))
    }

    /// Exact value for finite and eventually periodic expansions.
    pub fn value(&self) -> Option<Exact> {
        match self {
            ContinuedFraction::Finite(d) => {
                Some(Exact::Rational(eval_finite(d).expect("non-empty")))
            }
            ContinuedFraction::Periodic { a0, pre, period } => {
                let tail = periodic_fixed_point(period);
                let mut m = IntMatrix2::digit(a0);
                for a in pre {
                    m = m.compose(&IntMatrix2::digit(a));
                }
                Some(m.apply(&tail).expect("tail > 1 has no pole"))
            }
            ContinuedFraction::Stream { .. } => None,
        }
    }

    /// Rational bounds `lo ≤ x ≤ hi` with `hi − lo ≤ 1/min_den²` (or exact).
    pub fn enclosure(&self, min_den: &BigInt) -> (BigRational, BigRational) {
        match self {
            ContinuedFraction::Finite(d) => {
                let x = eval_finite(d).expect("non-empty");
                (x.clone(), x)
            }
            ContinuedFraction::Periodic { .. } => {
                let digits = 2 * min_den.to_string().len() as u32 + 4;
                self.value().expect("periodic").enclosure(digits)
            }
            ContinuedFraction::Stream { .. } => {
                let mut it = self.convergent_iter();
                let mut prev = it.next().expect("infinite");
                for c in it {
                    if &prev.q >= min_den {
                        let (a, b) = (prev.as_rational(), c.as_rational());
                        return if a < b { (a, b) } else { (b, a) };
                    }
                    prev = c;
                }
                unreachable!("streams are infinite")
            }
        }
    }

    /// Floating approximation of the value.
    pub fn to_f64(&self) -> f64 {
        match self.value() {
            Some(v) => v.to_f64(),
            None => self.tail_interval(0).mid(),
        }
    }

    /// Rigorous floating enclosure of `[a_start; a_{start+1}, …]` from a
    /// finite look-ahead. The unknown remainder `θ = [a_{start+K}; …]` lies
    /// in `[a_{start+K}, a_{start+K} + 1]`, and `x ↦ a + 1/x` is monotone.
    pub fn tail_interval(&self, start: usize) -> Interval {
        self.tail_interval_with(start, 0)
    }

    /// As [`tail_interval`](Self::tail_interval) with a fixed look-ahead of
    /// `lookahead` digits (0 selects it adaptively).
    pub fn tail_interval_with(&self, start: usize, lookahead: usize) -> Interval {
        if let Some(len) = self.len() {
            // Finite tails are evaluated exactly.
            let x = eval_finite(&self.prefix(len).expect("len")[start..]).expect("non-empty tail");
            return Interval::from_rational(&x);
        }
        let eval = |k: usize| {
            let last = self.digit_f64(start + k).expect("infinite");
            let mut x = Interval::new(last, last + 1.0);
            for i in (start..start + k).rev() {
                x = x.recip().add_f64(self.digit_f64(i).expect("infinite"));
            }
            x
        };
        if lookahead > 0 {
            return eval(lookahead);
        }
        let mut k = 8;
        loop {
            let x = eval(k);
            if x.width() <= 1e-14 * x.lo.abs().max(1.0) || k >= 256 {
                return x;
            }
            k *= 2;
        }
    }

    /// Whether the expansion is purely periodic (`x` is a reduced surd).
    pub fn is_purely_periodic(&self) -> bool {
        match self {
            ContinuedFraction::Periodic { a0, pre, period } => {
                pre.is_empty() && period.last() == Some(a0)
            }
            _ => false,
        }
    }

    /// `(preperiod length counted from a1, period length)` for periodic expansions.
    pub fn period_shape(&self) -> Option<(usize, usize)> {
        match self {
            ContinuedFraction::Periodic { pre, period, .. } => Some((pre.len(), period.len())),
            _ => None,
        }
    }
}

/// Exact value of `[(b1, …, bl)^ω]` from its fixed-point equation
/// `Q y² + (Q' − P) y − P' = 0`, where `[[P, P'], [Q, Q']]` is the product of
/// the digit matrices; the root above 1 is taken.
fn periodic_fixed_point(period: &[BigInt]) -> Exact {
    let m = period.iter().fold(IntMatrix2::identity(), |m, a| {
        m.compose(&IntMatrix2::digit(a))
    });
    let (p, p1, q, q1) = (&m.c, &m.d, &m.e, &m.f);
    let b = q1 - p;
    let disc = &b * &b + 4 * q * p1;
    QuadraticSurd::new(-b, BigInt::one(), 2 * q, disc)
        .expect("discriminant is a positive non-square")
}

pub struct ConvergentIter<'a> {
    cf: &'a ContinuedFraction,
    index: usize,
    // (p_{N-2}, p_{N-1}) and (q_{N-2}, q_{N-1})
    p: (BigInt, BigInt),
    q: (BigInt, BigInt),
}

impl Iterator for ConvergentIter<'_> {
    type Item = Convergent;

    fn next(&mut self) -> Option<Convergent> {
        let a = self.cf.digit(self.index)?;
        let p = &a * &self.p.1 + &self.p.0;
        let q = &a * &self.q.1 + &self.q.0;
        self.p = (std::mem::take(&mut self.p.1), p.clone());
        self.q = (std::mem::take(&mut self.q.1), q.clone());
        let c = Convergent {
            index: self.index,
            p,
            q,
        };
        self.index += 1;
        Some(c)
    }
}
