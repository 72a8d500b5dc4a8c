//! Bounded-quotient Cantor sets `F₀(A) = {[0; a1, a2, …] : a_i ∈ A}`:
//! extrema in the alternate order, the sumset interval, the IFS cover
//! `f_z(x) = 1/(z + x)` and the covering bound on the Hausdorff dimension of
//! `F + F`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::contfrac::ContinuedFraction;
use crate::exact::{ln_enclosure, rational_to_decimal, Exact, IntMatrix2, Interval};
use crate::{Error, Exec, Result};

/// Default cap on the number of enumerated intervals.
pub const DEFAULT_COVER_BUDGET: u128 = 1 << 20;

/// Lower bound on `dim_H(F₀({4,5}) + F₀({4,5}))`, taken as a known constant, not computed here.
pub const LOWER_BOUND_45: f64 = 0.263;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CantorSpec {
    alphabet: Vec<i64>,
}

impl CantorSpec {
    /// Sorted, deduplicated alphabet of partial quotients `≥ 1`.
    pub fn new(mut alphabet: Vec<i64>) -> Result<Self> {
        alphabet.sort_unstable();
        alphabet.dedup();
        if alphabet.is_empty() {
            return Err(Error::EmptyDigits);
        }
        if let Some(&a) = alphabet.iter().find(|&&a| a < 1) {
            return Err(Error::InvalidDigit {
                index: 1,
                value: a.to_string(),
            });
        }
        Ok(CantorSpec { alphabet })
    }

    /// `{1, …, r}`.
    pub fn up_to(r: i64) -> Result<Self> {
        Self::new((1..=r).collect())
    }

    pub fn alphabet(&self) -> &[i64] {
        &self.alphabet
    }

    pub fn a_min(&self) -> i64 {
        self.alphabet[0]
    }

    pub fn a_max(&self) -> i64 {
        self.alphabet[self.alphabet.len() - 1]
    }
}

fn periodic_zero(period: &[i64]) -> Exact {
    ContinuedFraction::periodic(
        BigInt::from(0),
        vec![],
        period.iter().map(|&a| BigInt::from(a)).collect(),
    )
    .expect("valid digits")
    .value()
    .expect("periodic")
}

/// `(min F, max F)` = `([0; (a_max, a_min)^ω], [0; (a_min, a_max)^ω])`.
pub fn extrema(spec: &CantorSpec) -> (Exact, Exact) {
    let (lo, hi) = (spec.a_min(), spec.a_max());
    if lo == hi {
        let x = periodic_zero(&[lo]);
        return (x.clone(), x);
    }
    (periodic_zero(&[hi, lo]), periodic_zero(&[lo, hi]))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SumsetReport {
    pub lo: Exact,
    pub hi: Exact,
    pub lo_decimal: String,
    pub hi_decimal: String,
    /// `F + F` is the whole interval `[lo, hi]`; only asserted for `{1,2,3,4}`.
    pub filling_guaranteed: bool,
}

/// Endpoints `[2 min F, 2 max F]` of `F + F`.
pub fn sumset_interval(spec: &CantorSpec, digits: u32) -> SumsetReport {
    let (min, max) = extrema(spec);
    let two = BigInt::from(2);
    let (lo, hi) = (min.scale(&two), max.scale(&two));
    SumsetReport {
        lo_decimal: lo.to_decimal(digits).text,
        hi_decimal: hi.to_decimal(digits).text,
        lo,
        hi,
        filling_guaranteed: spec.alphabet() == [1, 2, 3, 4],
    }
}

/// The cylinder map `f_{a1} ∘ … ∘ f_{an}` as a matrix, `f_z = [[0, 1], [1, z]]`.
fn cylinder_matrix(word: &[i64]) -> IntMatrix2 {
    word.iter().fold(IntMatrix2::identity(), |m, &a| {
        m.compose(&IntMatrix2::new(0, 1, 1, a).expect("det −1"))
    })
}

fn decode(mut idx: u128, alphabet: &[i64], n: u32) -> Vec<i64> {
    let s = alphabet.len() as u128;
    let mut w = vec![0; n as usize];
    for slot in w.iter_mut().rev() {
        *slot = alphabet[(idx % s) as usize];
        idx /= s;
    }
    w
}

fn check_budget(count: u128, budget: u128) -> Result<()> {
    if count > budget {
        return Err(Error::BudgetExceeded {
            requested: count,
            budget,
        });
    }
    Ok(())
}

/// The `|A|ⁿ` intervals `f_w(I)`, `I = [min F, max F]`, in lexicographic
/// order of `w`, with exact endpoints.
pub fn cover_intervals(
    spec: &CantorSpec,
    n: u32,
    budget: u128,
    exec: Exec,
) -> Result<Vec<(Exact, Exact)>> {
    let count = (spec.alphabet().len() as u128)
        .checked_pow(n)
        .unwrap_or(u128::MAX);
    check_budget(count, budget)?;
    let (min, max) = extrema(spec);
    Ok(exec.map_range(0..count as usize, |i| {
        let m = cylinder_matrix(&decode(i as u128, spec.alphabet(), n));
        let (a, b) = (
            m.apply(&min).expect("no pole on I"),
            m.apply(&max).expect("no pole on I"),
        );
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverEstimate {
    pub depth: u32,
    pub interval_count: usize,
    pub max_interval_length: Exact,
    pub max_interval_length_f64: f64,
    /// `|I| · Lⁿ` with `L = 1/(min F + a_min)²`.
    pub length_bound: f64,
    pub within_bound: bool,
    /// `log(|A|^{2n}) / −log(2 · max length)`: the finite-scale dimension
    /// estimate for `F + F` from this cover.
    pub dimension_upper: f64,
    #[serde(skip)]
    pub intervals: Vec<(Exact, Exact)>,
}

/// Enumerates the depth-`n` IFS cover and checks the contraction bound.
pub fn ifs_cover(spec: &CantorSpec, n: u32, budget: u128, exec: Exec) -> Result<CoverEstimate> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "cover depth must be at least 1".into(),
        ));
    }
    let intervals = cover_intervals(spec, n, budget, exec)?;
    let (min, max) = extrema(spec);
    let lengths = exec.map_slice(&intervals, |(a, b)| b.sub(a).expect("same field"));
    let max_len = lengths.into_iter().max().expect("non-empty");
    let width = max.sub(&min).expect("same field");
    let l = contraction(spec);
    let bound = width.mul(&l.pow(n)).expect("same field");
    let max_f = max_len.to_f64();
    let s = spec.alphabet().len() as f64;
    Ok(CoverEstimate {
        depth: n,
        interval_count: intervals.len(),
        within_bound: max_len <= bound,
        max_interval_length_f64: max_f,
        max_interval_length: max_len,
        length_bound: bound.to_f64(),
        dimension_upper: if max_f > 0.0 {
            2.0 * n as f64 * s.ln() / -(2.0 * max_f).ln()
        } else {
            0.0
        },
        intervals,
    })
}

/// `L = 1/(min F + a_min)²`, a Lipschitz constant of every `f_z` on `I`.
pub fn contraction(spec: &CantorSpec) -> Exact {
    let (min, _) = extrema(spec);
    let x = min.add(&Exact::from(spec.a_min())).expect("rational shift");
    x.mul(&x).expect("same field").recip().expect("positive")
}

/// Every depth-`n+1` interval lies inside some depth-`n` interval.
pub fn cover_nested(spec: &CantorSpec, n: u32, budget: u128, exec: Exec) -> Result<bool> {
    let outer = cover_intervals(spec, n, budget, exec)?;
    let inner = cover_intervals(spec, n + 1, budget, exec)?;
    let s = spec.alphabet().len();
    // Child i of length n+1 extends parent i / s.
    Ok(exec
        .map_range(0..inner.len(), |i| {
            let (a, b) = &inner[i];
            let (c, d) = &outer[i / s];
            c <= a && b <= d
        })
        .into_iter()
        .all(|x| x))
}

/// Length of `[2 min, 2 max]` not covered by `Z_n + Z_n`, where `Z_n` is the
/// depth-`n` cover (floating enclosures, outward rounded).
pub fn sumset_uncovered_length(spec: &CantorSpec, n: u32, budget: u128, exec: Exec) -> Result<f64> {
    let count = (spec.alphabet().len() as u128)
        .checked_pow(2 * n)
        .unwrap_or(u128::MAX);
    check_budget(count, budget)?;
    let z: Vec<Interval> = cover_intervals(spec, n, budget, exec)?
        .iter()
        .map(|(a, b)| a.to_interval().hull(b.to_interval()))
        .collect();
    let mut sums: Vec<Interval> =
        exec.flat_map_range(0..z.len(), |i| z.iter().map(|w| z[i].add(*w)).collect());
    sums.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let report = sumset_interval(spec, 20);
    let (lo, hi) = (report.lo.to_f64(), report.hi.to_f64());
    let mut uncovered = 0.0;
    let mut reach = lo;
    for s in sums {
        if s.lo > reach {
            uncovered += s.lo.min(hi) - reach;
        }
        reach = reach.max(s.hi);
        if reach >= hi {
            break;
        }
    }
    if reach < hi {
        uncovered += hi - reach;
    }
    Ok(uncovered.max(0.0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HausdorffReport {
    pub alphabet: Vec<i64>,
    pub digits: u32,
    /// `log |A| / log(a_min + min F)`, rounded to `digits` decimals.
    pub upper: String,
    pub upper_lo: String,
    pub upper_hi: String,
    pub upper_f64: f64,
    /// Known lower bound, only for `{4, 5}`.
    pub lower: Option<f64>,
    /// `upper < 1/2` from the enclosure.
    pub below_half: bool,
    /// `upper < 1/2` decided exactly as `|A|² < a_min + min F`.
    pub below_half_exact: bool,
}

/// Covering upper bound on `dim_H(F + F)` with a rigorous decimal enclosure.
pub fn hausdorff_bounds(spec: &CantorSpec, digits: u32) -> HausdorffReport {
    let s = spec.alphabet().len() as i64;
    let (min, _) = extrema(spec);
    let x = min.add(&Exact::from(spec.a_min())).expect("rational shift");
    let (x_lo, x_hi) = x.enclosure(digits + 10);
    let (ls_lo, ls_hi) = ln_enclosure(&BigRational::from_integer(s.into()), digits + 10);
    let (lx_lo, _) = ln_enclosure(&x_lo, digits + 10);
    let (_, lx_hi) = ln_enclosure(&x_hi, digits + 10);
    let (lo, hi) = if s == 1 {
        (
            BigRational::from_integer(0.into()),
            BigRational::from_integer(0.into()),
        )
    } else {
        (&ls_lo / &lx_hi, &ls_hi / &lx_lo)
    };
    let half = BigRational::new(1.into(), 2.into());
    let mid = (&lo + &hi) / BigRational::from_integer(2.into());
    HausdorffReport {
        alphabet: spec.alphabet().to_vec(),
        digits,
        upper: rational_to_decimal(&mid, digits).text,
        upper_lo: rational_to_decimal(&lo, digits + 2).text,
        upper_hi: rational_to_decimal(&hi, digits + 2).text,
        upper_f64: mid.to_f64().unwrap_or(f64::NAN),
        lower: (spec.alphabet() == [4, 5]).then_some(LOWER_BOUND_45),
        below_half: hi < half,
        below_half_exact: Exact::from(s * s) < x,
    }
}
