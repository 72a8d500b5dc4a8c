//! The approximation sequence `t_N = q_N²(p_N/q_N − α)` and everything built
//! on it: accumulation sets of quadratic numbers, Markov constants,
//! secondary convergents, the Legendre filter, Möbius transport of witnesses
//! and the digits of Euler's number.

mod cluster;
mod euler;
mod quadratic;
mod secondary;
mod witness;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::contfrac::{ser_bigint, ContinuedFraction, Convergent};
use crate::exact::{Exact, Interval};
use crate::{Error, Exec, Result};

pub use cluster::{detect_clusters, Cluster, DEFAULT_CLUSTER_RADIUS};
pub use euler::{euler, euler_digit, EulerDigits};
pub use quadratic::{
    markov_constant, quad_accumulation_set, stream_accumulation, AccumulationPoint,
    AccumulationReport, MarkovEstimate, MarkovMode,
};
pub use secondary::{
    legendre_filter, secondary_convergent_terms, LegendreHit, LegendreReport, SecondaryTerm,
};
pub use witness::{mobius_transport_witness, SpectrumWitness};

/// Value of one term: exact for eventually periodic `α`, an outward-rounded
/// enclosure for digit streams.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TermValue {
    Exact(Exact),
    Enclosure(Interval),
}

impl TermValue {
    pub fn interval(&self) -> Interval {
        match self {
            TermValue::Exact(x) => x.to_interval(),
            TermValue::Enclosure(i) => *i,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            TermValue::Exact(x) => x.to_f64(),
            TermValue::Enclosure(i) => i.mid(),
        }
    }

    /// `1`, `−1`, or `0` when an enclosure straddles zero.
    pub fn sign(&self) -> i8 {
        let i = self.interval();
        if i.lo > 0.0 {
            1
        } else if i.hi < 0.0 {
            -1
        } else {
            0
        }
    }

    pub fn as_exact(&self) -> Option<&Exact> {
        match self {
            TermValue::Exact(x) => Some(x),
            TermValue::Enclosure(_) => None,
        }
    }
}

/// One term `t_N` of the approximation sequence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproxTerm {
    pub index: usize,
    pub convergent: Convergent,
    /// `a_{N+1}`, which controls the size of the term.
    #[serde(serialize_with = "ser_bigint")]
    pub next_digit: BigInt,
    pub value: TermValue,
}

impl ApproxTerm {
    /// The a-priori bracket `(1/(2 + a_{N+1}), 1/a_{N+1})` for `|t_N|`.
    pub fn bracket(&self) -> (f64, f64) {
        let a = self.next_digit.to_f64().unwrap_or(f64::INFINITY);
        (1.0 / (2.0 + a), 1.0 / a)
    }

    /// Whether `|t_N|` lies strictly inside [`bracket`](Self::bracket)
    /// (checked exactly when possible).
    pub fn bracket_holds(&self) -> bool {
        match &self.value {
            TermValue::Exact(x) => {
                let abs = x.abs();
                let lo = Exact::Rational(BigRational::new(BigInt::one(), &self.next_digit + 2));
                let hi = Exact::Rational(BigRational::new(BigInt::one(), self.next_digit.clone()));
                lo < abs && abs < hi
            }
            TermValue::Enclosure(i) => {
                let (lo, hi) = self.bracket();
                let abs = i.abs();
                lo < abs.lo && abs.hi < hi
            }
        }
    }
}

fn expected_sign(n: usize) -> i8 {
    if n % 2 == 1 {
        1
    } else {
        -1
    }
}

/// Exact values of `α_j = [a_j; a_{j+1}, …]` for `j = 1 ..= pre + period`;
/// every later tail repeats one of them.
pub(crate) struct PeriodicTails {
    pre: usize,
    period: usize,
    tails: Vec<Exact>,
}

impl PeriodicTails {
    pub(crate) fn new(cf: &ContinuedFraction) -> Option<Self> {
        let (pre, period) = cf.period_shape()?;
        let tails = (1..=pre + period)
            .map(|j| cf.tail(j).expect("infinite").value().expect("periodic"))
            .collect();
        Some(PeriodicTails { pre, period, tails })
    }

    /// `α_j` for `j ≥ 1`.
    pub(crate) fn get(&self, j: usize) -> &Exact {
        let k = if j <= self.pre + self.period {
            j
        } else {
            self.pre + 1 + (j - self.pre - 1) % self.period
        };
        &self.tails[k - 1]
    }
}

/// `t_N = (−1)^{N+1} (α_{N+1} + q_{N−1}/q_N)^{−1}` for `N = 0 ..= n_max`.
///
/// Exact for eventually periodic `α`; for streams the tail `α_{N+1}` is
/// enclosed from a finite look-ahead and the reversal ratio from the exact
/// denominators. Rational input has an empty spectrum and is rejected.
pub fn approx_sequence(
    alpha: &ContinuedFraction,
    n_max: usize,
    exec: Exec,
) -> Result<Vec<ApproxTerm>> {
    if alpha.is_finite() {
        return Err(Error::RationalInput);
    }
    let conv = alpha.convergents(n_max + 1)?;
    let tails = PeriodicTails::new(alpha);
    Ok(exec.map_range(0..n_max + 1, |n| {
        let q_prev = if n == 0 {
            BigInt::zero()
        } else {
            conv[n - 1].q.clone()
        };
        let ratio = BigRational::new(q_prev, conv[n].q.clone());
        let value = match &tails {
            Some(t) => {
                let s = t
                    .get(n + 1)
                    .add(&Exact::Rational(ratio))
                    .expect("rational mixes with any field");
                let v = s.recip().expect("positive");
                TermValue::Exact(if n % 2 == 1 { v } else { v.neg() })
            }
            None => {
                let s = alpha
                    .tail_interval(n + 1)
                    .add(Interval::from_rational(&ratio));
                let v = s.recip();
                TermValue::Enclosure(if n % 2 == 1 { v } else { v.neg() })
            }
        };
        debug_assert!(value.sign() == expected_sign(n) || value.sign() == 0);
        ApproxTerm {
            index: n,
            convergent: conv[n].clone(),
            next_digit: alpha.digit(n + 1).expect("infinite"),
            value,
        }
    }))
}

/// Lean floating enclosures of `t_N` for `N` in `range`, without keeping
/// convergents. The reversal ratio follows `r_N = 1/(a_N + r_{N−1})` in
/// interval arithmetic. Used by deep scans.
pub fn term_enclosures(
    alpha: &ContinuedFraction,
    range: std::ops::Range<usize>,
    exec: Exec,
) -> Vec<Interval> {
    let ratios = reversal_enclosures(alpha, range.end);
    exec.map_range(range, |n| {
        let v = alpha.tail_interval(n + 1).add(ratios[n]).recip();
        if n % 2 == 1 {
            v
        } else {
            v.neg()
        }
    })
}

/// Enclosures of `q_{N−1}/q_N` for `N = 0 .. n_end`.
pub fn reversal_enclosures(alpha: &ContinuedFraction, n_end: usize) -> Vec<Interval> {
    let mut out = Vec::with_capacity(n_end);
    let mut r = Interval::point(0.0);
    for n in 0..n_end {
        if n > 0 {
            r = r.add_f64(alpha.digit_f64(n).expect("infinite")).recip();
        }
        out.push(r);
    }
    out
}

/// Bracket for `S_N = α_{N+1} + q_{N−1}/q_N`.
///
/// `lookahead` digits of the tail are used with the remainder confined to
/// `[a, a + 1]`; `lookahead = 2` gives the classical three-digit bound
/// `b0 + 1/(b1 + 1/b2) < α_{N+1} < b0 + 1/(b1 + 1/(1 + b2))`, and `0` refines
/// adaptively.
pub fn tail_sum_bracket(alpha: &ContinuedFraction, n: usize, lookahead: usize) -> Result<Interval> {
    if n == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            reason: "tail sum needs N ≥ 1",
        });
    }
    if alpha.is_finite() {
        return Err(Error::RationalInput);
    }
    let conv = alpha.convergents(n)?;
    let ratio = BigRational::new(conv[n - 1].q.clone(), conv[n].q.clone());
    Ok(alpha
        .tail_interval_with(n + 1, lookahead)
        .add(Interval::from_rational(&ratio)))
}

/// `m²(k/m − α)` computed directly from `α`, independent of the tail formula.
/// Exact for eventually periodic `α`, enclosed via convergent bounds otherwise.
pub fn term_at(alpha: &ContinuedFraction, k: &BigInt, m: &BigInt) -> Result<TermValue> {
    if m.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if let Some(a) = alpha.value() {
        let v = Exact::from(k * m).sub(&a.scale(&(m * m)))?;
        return Ok(TermValue::Exact(v));
    }
    // m(k − mα) with α ∈ [lo, hi] and hi − lo ≤ 1/den², den ≥ 2^40·m.
    let den: BigInt = m.abs() << 40usize;
    let (lo, hi) = alpha.enclosure(&den);
    let m2 = BigRational::from_integer(m * m);
    let km = BigRational::from_integer(k * m);
    let (a, b) = (&km - &m2 * &hi, &km - &m2 * &lo);
    Ok(TermValue::Enclosure(
        Interval::from_rational(&a).hull(Interval::from_rational(&b)),
    ))
}
