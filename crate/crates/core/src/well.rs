//! Spectra of the indefinite Laplacian on a rectangle and of the
//! Pais–Uhlenbeck oscillator.
//!
//! On `[0, a] × [0, b]` the eigenvalues are `λ_{k,m} = π²(k²/a² − m²/b²)`;
//! they are stored as the exact coefficient of `π²`. Near zero,
//! `λ_{k,m} = (π² m²/a²)(k/m − α)(k/m + α)` with `α = a/b`, which ties the
//! singular part of the spectrum to the values `m²(k/m − α)` produced by
//! [`singular_scan`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::contfrac::{ser_bigint, ContinuedFraction};
use crate::exact::{Exact, Interval};
use crate::spectrum::TermValue;
use crate::{Error, Exec, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoxEigenvalue {
    pub k: i64,
    pub m: i64,
    /// `λ_{k,m}/π² = k²/a² − m²/b²`.
    pub coeff: TermValue,
}

fn positive(x: &Exact, name: &str) -> Result<()> {
    if x.signum() != num_bigint::Sign::Plus {
        return Err(Error::InvalidArgument(format!(
            "side {name} must be positive, got {x}"
        )));
    }
    Ok(())
}

/// `k²/a² − m²/b²`: exact when `a²` and `b²` share a field, enclosed otherwise.
pub fn lambda_coeff(a: &Exact, b: &Exact, k: i64, m: i64) -> TermValue {
    let exact = || -> Result<Exact> {
        let a2 = a.mul(a)?;
        let b2 = b.mul(b)?;
        Exact::from(k * k)
            .div(&a2)?
            .sub(&Exact::from(m * m).div(&b2)?)
    };
    match exact() {
        Ok(v) => TermValue::Exact(v),
        Err(_) => {
            let (ai, bi) = (a.to_interval(), b.to_interval());
            let v = Interval::point((k * k) as f64)
                .div(ai.mul(ai))
                .sub(Interval::point((m * m) as f64).div(bi.mul(bi)));
            TermValue::Enclosure(v)
        }
    }
}

/// `(m²/a²)(k/m − α)(k/m + α)` with `α = a/b`, for `m ≠ 0`.
pub fn lambda_coeff_factored(a: &Exact, b: &Exact, k: i64, m: i64) -> Result<Exact> {
    let alpha = a.div(b)?;
    let km = Exact::ratio(k, m)?;
    let lead = Exact::from(m * m).div(&a.mul(a)?)?;
    lead.mul(&km.sub(&alpha)?)?.mul(&km.add(&alpha)?)
}

/// All `λ_{k,m}/π²` for `1 ≤ k ≤ k_max`, `1 ≤ m ≤ m_max` (the spectrum is
/// even in both indices). Exact coefficients are checked against the
/// factored form.
pub fn eigenvalues(
    a: &Exact,
    b: &Exact,
    k_max: i64,
    m_max: i64,
    exec: Exec,
) -> Result<Vec<BoxEigenvalue>> {
    positive(a, "a")?;
    positive(b, "b")?;
    if k_max < 1 || m_max < 1 {
        return Err(Error::InvalidArgument(
            "k_max and m_max must be at least 1".into(),
        ));
    }
    let rows = exec.map_range(1..k_max as usize + 1, |k| {
        let k = k as i64;
        (1..=m_max)
            .map(|m| {
                let coeff = lambda_coeff(a, b, k, m);
                if let (TermValue::Exact(v), Ok(f)) = (&coeff, lambda_coeff_factored(a, b, k, m)) {
                    assert_eq!(v, &f, "factored identity failed at k={k}, m={m}");
                }
                BoxEigenvalue { k, m, coeff }
            })
            .collect::<Vec<_>>()
    });
    Ok(rows.into_iter().flatten().collect())
}

/// A scan value `m²(k/m − α) = m(k − mα)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanHit {
    #[serde(serialize_with = "ser_bigint")]
    pub k: BigInt,
    pub m: u64,
    pub value: TermValue,
}

// Rational enclosure of α tight enough for m ≤ m_max (error below 2^-60).
fn alpha_bounds(alpha: &ContinuedFraction, m_max: u64) -> (BigRational, BigRational) {
    let den = BigInt::from(m_max.max(1)) << 60usize;
    alpha.enclosure(&den)
}

fn scan_value(
    exact: Option<&Exact>,
    bounds: &(BigRational, BigRational),
    k: &BigInt,
    m: u64,
) -> TermValue {
    let mb = BigInt::from(m);
    if let Some(x) = exact {
        return TermValue::Exact(
            Exact::from(k * &mb)
                .sub(&x.scale(&(&mb * &mb)))
                .expect("rational mixes"),
        );
    }
    let km = BigRational::from_integer(k * &mb);
    let m2 = BigRational::from_integer(&mb * &mb);
    let a = Interval::from_rational(&(&km - &m2 * &bounds.1));
    let b = Interval::from_rational(&(&km - &m2 * &bounds.0));
    TermValue::Enclosure(a.hull(b))
}

fn in_window(v: &TermValue, window: (f64, f64)) -> bool {
    let i = v.interval();
    i.hi > window.0 && i.lo < window.1
}

fn scan_with<F>(
    alpha: &ContinuedFraction,
    window: (f64, f64),
    m_max: u64,
    exec: Exec,
    ks: F,
) -> Vec<ScanHit>
where
    F: Fn(&BigRational, u64) -> Vec<BigInt> + Sync + Send,
{
    let exact = alpha.value();
    let bounds = alpha_bounds(alpha, m_max);
    exec.flat_map_range(1..m_max as usize + 1, |m| {
        let m = m as u64;
        ks(&bounds.0, m)
            .into_iter()
            .filter_map(|k| {
                let value = scan_value(exact.as_ref(), &bounds, &k, m);
                in_window(&value, window).then_some(ScanHit { k, m, value })
            })
            .collect()
    })
}

/// Brute-force oracle: for every `1 ≤ m ≤ m_max` and `k ∈ round(mα) + {−1, 0, 1}`,
/// all values `m²(k/m − α)` inside the open `window`. Values in `(−1, 1)`
/// force `|k − mα| < 1/m`, so the restriction loses nothing there.
pub fn singular_scan(
    alpha: &ContinuedFraction,
    window: (f64, f64),
    m_max: u64,
    exec: Exec,
) -> Vec<ScanHit> {
    scan_with(alpha, window, m_max, exec, |lo, m| {
        let k0 = (lo * BigRational::from_integer(m.into()))
            .round()
            .to_integer();
        vec![&k0 - 1, k0.clone(), k0 + 1]
    })
}

/// Unrestricted slow path: every `k` that could land in `window`.
pub fn singular_scan_unrestricted(
    alpha: &ContinuedFraction,
    window: (f64, f64),
    m_max: u64,
    exec: Exec,
) -> Vec<ScanHit> {
    let reach = window.0.abs().max(window.1.abs());
    scan_with(alpha, window, m_max, exec, move |lo, m| {
        let center = (lo * BigRational::from_integer(m.into()))
            .floor()
            .to_integer();
        let spread = (reach / m as f64).ceil() as i64 + 2;
        (-spread..=spread).map(|d| &center + d).collect()
    })
}

/// Multiples of `1/s` check: every exact value `v` has `s·v ∈ Z`.
pub fn all_in_lattice(hits: &[ScanHit], s: &BigInt) -> bool {
    hits.iter().all(|h| match &h.value {
        TermValue::Exact(Exact::Rational(v)) => {
            (v * BigRational::from_integer(s.clone())).is_integer()
        }
        _ => false,
    })
}

/// Smallest `|value|` among the hits, with its `m`.
pub fn min_abs_hit(hits: &[ScanHit]) -> Option<(f64, u64)> {
    hits.iter()
        .map(|h| (h.value.interval().abs().lo, h.m))
        .min_by(|a, b| a.0.total_cmp(&b.0))
}

/// `E_{nm} = (n + 1/2) Ω_x − (m + 1/2) Ω_y`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PuEnergy {
    pub n: u32,
    pub m: u32,
    pub energy: Exact,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PuReport {
    pub n_max: u32,
    pub m_max: u32,
    pub min_nonzero_abs: Option<Exact>,
    pub min_nonzero_abs_f64: Option<f64>,
    /// Smallest positive difference between distinct energies.
    pub min_gap: Option<Exact>,
    pub min_gap_f64: Option<f64>,
    pub min_energy: Exact,
    pub max_energy: Exact,
    #[serde(skip)]
    pub energies: Vec<PuEnergy>,
}

/// The grid `0 ≤ n ≤ n_max`, `0 ≤ m ≤ m_max` with density diagnostics.
pub fn pu_spectrum(
    omega_x: &Exact,
    omega_y: &Exact,
    n_max: u32,
    m_max: u32,
    exec: Exec,
) -> Result<PuReport> {
    positive(omega_x, "omega_x")?;
    positive(omega_y, "omega_y")?;
    omega_x.sub(omega_y)?;
    let half = Exact::ratio(1, 2)?;
    let energies: Vec<PuEnergy> = exec.flat_map_range(0..n_max as usize + 1, |n| {
        let ex = Exact::from(n as i64)
            .add(&half)
            .and_then(|c| c.mul(omega_x))
            .expect("checked field");
        (0..=m_max)
            .map(|m| {
                let ey = Exact::from(m as i64)
                    .add(&half)
                    .and_then(|c| c.mul(omega_y))
                    .expect("checked field");
                PuEnergy {
                    n: n as u32,
                    m,
                    energy: ex.sub(&ey).expect("checked field"),
                }
            })
            .collect()
    });
    let mut sorted: Vec<Exact> = energies.iter().map(|e| e.energy.clone()).collect();
    sorted.sort();
    sorted.dedup();
    let min_nonzero_abs = sorted
        .iter()
        .filter(|e| !e.is_zero())
        .map(|e| e.abs())
        .min();
    let min_gap = sorted
        .windows(2)
        .map(|w| w[1].sub(&w[0]).expect("checked field"))
        .min();
    Ok(PuReport {
        n_max,
        m_max,
        min_nonzero_abs_f64: min_nonzero_abs.as_ref().map(Exact::to_f64),
        min_nonzero_abs,
        min_gap_f64: min_gap.as_ref().map(Exact::to_f64),
        min_gap,
        min_energy: sorted[0].clone(),
        max_energy: sorted[sorted.len() - 1].clone(),
        energies,
    })
}

/// Numerator/denominator strings of an exact coefficient for CSV output:
/// `(p + q*sqrt(d), r)` for surds.
pub fn coeff_fraction(x: &Exact) -> (String, String) {
    match x {
        Exact::Rational(r) => (r.numer().to_string(), r.denom().to_string()),
        Exact::Surd(s) => {
            let sign = if s.q().is_negative() { "-" } else { "+" };
            (
                format!("{}{}{}*sqrt({})", s.p(), sign, s.q().abs(), s.d()),
                s.r().to_string(),
            )
        }
    }
}
