use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::{ContinuedFraction, DigitSource};
use crate::{Error, Result};

/// Exact value of `[a0; a1, …, an]`.
pub fn eval_finite(digits: &[BigInt]) -> Result<BigRational> {
    let (last, rest) = digits.split_last().ok_or(Error::EmptyDigits)?;
    for (i, a) in digits.iter().enumerate().skip(1) {
        if a < &BigInt::one() {
            return Err(Error::InvalidDigit {
                index: i,
                value: a.to_string(),
            });
        }
    }
    let mut x = BigRational::from_integer(last.clone());
    for a in rest.iter().rev() {
        x = BigRational::from_integer(a.clone()) + x.recip();
    }
    Ok(x)
}

/// Outcome of [`compare_alternate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AltOrdering {
    Less,
    Greater,
    /// No difference among the first `depth` digits (or both expansions
    /// terminated identically).
    EqualUpToDepth,
}

impl From<Ordering> for AltOrdering {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => AltOrdering::Less,
            Ordering::Greater => AltOrdering::Greater,
            Ordering::Equal => AltOrdering::EqualUpToDepth,
        }
    }
}

/// Compares two expansions digit by digit in the alternate order: at the
/// first differing index `k`, a larger digit means a larger number when `k`
/// is even and a smaller one when `k` is odd. A terminated expansion acts as
/// if followed by a digit `+∞`.
pub fn compare_alternate(
    x: &ContinuedFraction,
    y: &ContinuedFraction,
    depth: usize,
) -> AltOrdering {
    for k in 0..depth {
        let (a, b) = (x.digit(k), y.digit(k));
        let ord = match (&a, &b) {
            (None, None) => return AltOrdering::EqualUpToDepth,
            (None, Some(_)) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(a), Some(b)) => a.cmp(b),
        };
        if ord != Ordering::Equal {
            return if k % 2 == 0 { ord } else { ord.reverse() }.into();
        }
    }
    AltOrdering::EqualUpToDepth
}

#[derive(Debug)]
struct Spliced {
    head: Vec<i64>,
    tail: Arc<dyn DigitSource>,
    tail_offset: usize,
}

impl DigitSource for Spliced {
    fn digit(&self, i: usize) -> i64 {
        match self.head.get(i) {
            Some(&a) => a,
            None => self.tail.digit(self.tail_offset + i - self.head.len()),
        }
    }

    fn label(&self) -> String {
        format!(
            "{:?} ++ {}[{}..]",
            self.head,
            self.tail.label(),
            self.tail_offset
        )
    }
}

/// `β = [c0; c1, …, cN, a_m, a_{m+1}, …]`: the first `N+1` digits of
/// `prefix_source` followed by the digits of `tail_source` from index
/// `tail_from = m` on.
pub fn splice(
    prefix_source: &ContinuedFraction,
    n: usize,
    tail_source: &ContinuedFraction,
    tail_from: usize,
) -> Result<ContinuedFraction> {
    let head = prefix_source
        .prefix(n + 1)
        .map_err(|_| Error::IndexOutOfRange {
            index: n,
            reason: "prefix source shorter than N+1 digits",
        })?;
    if tail_from == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            reason: "tail must start at index ≥ 1",
        });
    }
    let tail = tail_source.tail(tail_from)?;
    match tail {
        ContinuedFraction::Finite(t) => {
            ContinuedFraction::finite(head.into_iter().chain(t).collect())
        }
        ContinuedFraction::Periodic { a0, pre, period } => {
            let mut it = head.into_iter();
            let c0 = it.next().expect("N+1 ≥ 1 digits");
            let pre = it.chain(std::iter::once(a0)).chain(pre).collect();
            ContinuedFraction::periodic(c0, pre, period)
        }
        ContinuedFraction::Stream { source, offset } => {
            let head = head
                .iter()
                .map(|a| {
                    a.to_i64().ok_or_else(|| {
                        Error::InvalidArgument(format!("digit {a} too large for a stream"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ContinuedFraction::stream(Arc::new(Spliced {
                head,
                tail: source,
                tail_offset: offset,
            })))
        }
    }
}

/// `q_{N−1}/q_N`, checked against `[0; a_N, a_{N−1}, …, a1]`.
pub fn reversal_ratio(cf: &ContinuedFraction, n: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            reason: "reversal ratio needs N ≥ 1",
        });
    }
    let conv = cf.convergents(n)?;
    let ratio = BigRational::new(conv[n - 1].q.clone(), conv[n].q.clone());
    let mut rev = vec![BigInt::zero()];
    rev.extend(
        (1..=n)
            .rev()
            .map(|i| cf.digit(i).expect("checked by convergents")),
    );
    assert_eq!(
        ratio,
        eval_finite(&rev)?,
        "continuant reversal identity failed"
    );
    Ok(ratio)
}
