use serde::Serialize;

use super::{approx_sequence, detect_clusters, term_enclosures, Cluster, PeriodicTails};
use crate::contfrac::{expand, ContinuedFraction};
use crate::exact::{Exact, Interval};
use crate::{Error, Exec, Result};

/// One exact accumulation point together with its finite-depth witness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AccumulationPoint {
    pub value: Exact,
    pub decimal: String,
    /// Digit positions `k` (inside one extended period) whose subsequence
    /// `N + 1 ≡ k` converges to this point.
    pub positions: Vec<usize>,
    /// Term indices `N ≤ witness_depth` of the first such subsequence.
    pub witness: Vec<usize>,
    /// `|t_N − value|` at the deepest witness index.
    pub witness_error: f64,
    /// The witness errors decrease strictly.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AccumulationReport {
    pub alpha: String,
    pub expansion: String,
    /// Exact limits (quadratic input); empty for streams.
    pub points: Vec<AccumulationPoint>,
    /// Finite-depth clusters (stream input); empty for quadratic input.
    pub clusters: Vec<Cluster>,
    pub window: Interval,
    pub witness_depth: usize,
    pub period_length: Option<usize>,
}

impl AccumulationReport {
    pub fn values(&self) -> Vec<Exact> {
        self.points.iter().map(|p| p.value.clone()).collect()
    }
}

/// Exact accumulation set of `t_N` for a quadratic irrational.
///
/// With preperiod `s` and period `ℓ`, the subsequence with `N + 1 ≡ k`
/// converges to `(−1)^k / (η − η̄)` where `η = α_k` is the purely periodic
/// tail starting at position `k` and `η̄` its conjugate. Positions run over
/// one period when `ℓ` is even and over two when `ℓ` is odd (the sign
/// `(−1)^k` then flips between the copies).
pub fn quad_accumulation_set(
    alpha: &Exact,
    witness_depth: usize,
    exec: Exec,
) -> Result<AccumulationReport> {
    if alpha.is_rational() {
        return Err(Error::NotQuadratic);
    }
    let cf = expand(alpha);
    let (s, l) = cf.period_shape().expect("surds have periodic expansions");
    let big_l = if l % 2 == 0 { l } else { 2 * l };
    let tails = PeriodicTails::new(&cf).expect("periodic");
    let limits: Vec<(usize, Exact)> = exec.map_range(s + 1..s + big_l + 1, |k| {
        let eta = tails.get(k);
        let diff = eta.sub(&eta.conjugate()).expect("same field");
        let v = diff
            .recip()
            .expect("irrational η differs from its conjugate");
        (k, if k % 2 == 0 { v } else { v.neg() })
    });

    let mut points: Vec<(Exact, Vec<usize>)> = Vec::new();
    for (k, v) in limits {
        match points.iter_mut().find(|(p, _)| *p == v) {
            Some((_, ks)) => ks.push(k),
            None => points.push((v, vec![k])),
        }
    }

    let terms = approx_sequence(&cf, witness_depth, exec)?;
    let points: Vec<AccumulationPoint> = points
        .into_iter()
        .map(|(value, positions)| {
            let k = positions[0];
            let witness: Vec<usize> = (k - 1..=witness_depth).step_by(big_l).collect();
            let errors: Vec<f64> = witness
                .iter()
                .map(|&n| {
                    let t = terms[n].value.as_exact().expect("exact terms");
                    t.sub(&value).expect("same field").abs().to_f64()
                })
                .collect();
            let verified = errors.len() >= 2 && errors.windows(2).all(|w| w[1] < w[0]);
            AccumulationPoint {
                decimal: value.to_decimal(20).text,
                value,
                positions,
                witness,
                witness_error: errors.last().copied().unwrap_or(f64::NAN),
                verified,
            }
        })
        .collect();
    let window = points
        .iter()
        .map(|p| p.value.to_interval())
        .reduce(Interval::hull)
        .expect("at least one point");
    Ok(AccumulationReport {
        alpha: alpha.to_string(),
        expansion: cf.to_string(),
        points,
        clusters: vec![],
        window,
        witness_depth,
        period_length: Some(l),
    })
}

/// Finite-depth clustering of the terms `t_N`, `N ∈ [depth/2, depth]`, of a
/// digit stream.
pub fn stream_accumulation(
    alpha: &ContinuedFraction,
    depth: usize,
    radius: f64,
    exec: Exec,
) -> Result<AccumulationReport> {
    if alpha.is_finite() {
        return Err(Error::RationalInput);
    }
    let start = depth / 2;
    let terms = term_enclosures(alpha, start..depth + 1, exec);
    let values: Vec<(usize, f64)> = terms
        .iter()
        .enumerate()
        .map(|(i, t)| (start + i, t.mid()))
        .collect();
    let clusters = detect_clusters(&values, radius, 3);
    let window = terms
        .iter()
        .copied()
        .reduce(Interval::hull)
        .expect("non-empty range");
    Ok(AccumulationReport {
        alpha: alpha.to_string(),
        expansion: alpha.to_string(),
        points: vec![],
        clusters,
        window,
        witness_depth: depth,
        period_length: alpha.period_shape().map(|(_, l)| l),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MarkovMode {
    ExactQuadratic,
    Numeric { depth: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum MarkovEstimate {
    Exact {
        value: Exact,
        decimal: String,
    },
    /// `min |t_N|` over `N ∈ [window_start, depth]`.
    Numeric {
        depth: usize,
        window_start: usize,
        /// Rigorous enclosure of the windowed minimum.
        estimate: Interval,
        /// The same minimum bounded by `1/(2 + a_{N+1}) < |t_N| < 1/a_{N+1}`.
        bracket: (f64, f64),
        max_digit: i64,
    },
}

impl MarkovEstimate {
    pub fn to_f64(&self) -> f64 {
        match self {
            MarkovEstimate::Exact { value, .. } => value.to_f64(),
            MarkovEstimate::Numeric { estimate, .. } => estimate.mid(),
        }
    }
}

/// Markov constant `μ(α) = liminf_m m‖mα‖ = liminf_N |t_N|`.
pub fn markov_constant(
    alpha: &ContinuedFraction,
    mode: MarkovMode,
    exec: Exec,
) -> Result<MarkovEstimate> {
    if alpha.is_finite() {
        return Err(Error::RationalInput);
    }
    match mode {
        MarkovMode::ExactQuadratic => {
            let x = alpha.value().ok_or(Error::NotQuadratic)?;
            let report = quad_accumulation_set(&x, 0, exec)?;
            let value = report
                .values()
                .into_iter()
                .map(|v| v.abs())
                .min()
                .expect("non-empty");
            Ok(MarkovEstimate::Exact {
                decimal: value.to_decimal(20).text,
                value,
            })
        }
        MarkovMode::Numeric { depth } => {
            let start = depth / 2;
            let terms = term_enclosures(alpha, start..depth + 1, exec);
            let estimate = terms
                .iter()
                .map(|t| t.abs())
                .reduce(|a, b| Interval::new(a.lo.min(b.lo), a.hi.min(b.hi)))
                .expect("non-empty range");
            let digits: Vec<i64> = (start + 1..depth + 2)
                .map(|i| {
                    alpha
                        .digit(i)
                        .and_then(|a| i64::try_from(a).ok())
                        .unwrap_or(i64::MAX)
                })
                .collect();
            let max_digit = *digits.iter().max().expect("non-empty");
            let bracket = (1.0 / (2.0 + max_digit as f64), 1.0 / max_digit as f64);
            Ok(MarkovEstimate::Numeric {
                depth,
                window_start: start,
                estimate,
                bracket,
                max_digit,
            })
        }
    }
}
