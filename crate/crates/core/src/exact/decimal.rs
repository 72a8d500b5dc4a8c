use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::Exact;

/// A decimal rendering together with a rational enclosure of the value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecimalApprox {
    /// Rounded to nearest at the requested number of digits, or the exact
    /// terminating expansion when it fits.
    pub text: String,
    #[serde(serialize_with = "ser_rational")]
    pub lo: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: BigRational,
    pub exact: bool,
}

fn ser_rational<S: serde::Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ten_pow(n: u32) -> BigInt {
    BigInt::from(10u32).pow(n)
}

/// Formats the integer `m` as `m / 10^digits`.
fn format_scaled(m: &BigInt, digits: u32) -> String {
    let neg = m.is_negative();
    let s = m.abs().to_string();
    let digits = digits as usize;
    let body = if digits == 0 {
        s
    } else if s.len() <= digits {
        format!("0.{}{}", "0".repeat(digits - s.len()), s)
    } else {
        let (int, frac) = s.split_at(s.len() - digits);
        format!("{int}.{frac}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

// Number of decimals in the terminating expansion of x, if it terminates.
fn terminating_digits(x: &BigRational) -> Option<u32> {
    let mut den = x.denom().clone();
    let (mut twos, mut fives) = (0u32, 0u32);
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while den.is_multiple_of(&two) {
        den /= &two;
        twos += 1;
    }
    while den.is_multiple_of(&five) {
        den /= &five;
        fives += 1;
    }
    den.is_one().then_some(twos.max(fives))
}

pub fn rational_to_decimal(x: &BigRational, digits: u32) -> DecimalApprox {
    if let Some(k) = terminating_digits(x).filter(|&k| k <= digits) {
        let m = (x * BigRational::from_integer(ten_pow(k))).to_integer();
        return DecimalApprox {
            text: format_scaled(&m, k),
            lo: x.clone(),
            hi: x.clone(),
            exact: true,
        };
    }
    let scale = ten_pow(digits);
    let scaled = x * BigRational::from_integer(scale.clone());
    let n = scaled.floor().to_integer();
    let rounded = (scaled + BigRational::new(1.into(), 2.into()))
        .floor()
        .to_integer();
    DecimalApprox {
        text: format_scaled(&rounded, digits),
        lo: BigRational::new(n.clone(), scale.clone()),
        hi: BigRational::new(n + 1, scale),
        exact: false,
    }
}

pub(super) fn to_decimal(x: &Exact, digits: u32) -> DecimalApprox {
    let digits = digits.max(1);
    match x {
        Exact::Rational(r) => rational_to_decimal(r, digits),
        Exact::Surd(_) => {
            let scale = ten_pow(digits);
            let scaled = x.scale(&scale);
            let n = scaled.floor();
            let rounded = scaled.round();
            DecimalApprox {
                text: format_scaled(&rounded, digits),
                lo: BigRational::new(n.clone(), scale.clone()),
                hi: BigRational::new(n + 1, scale),
                exact: false,
            }
        }
    }
}

/// Fixed-point `atanh(t)` for `0 ≤ t < 1/3`, scaled by `scale`.
/// Returns integers `(lo, hi)` with `lo ≤ atanh(t)·scale ≤ hi`.
fn atanh_fixed(t: &BigRational, scale: &BigInt) -> (BigInt, BigInt) {
    let ts = t * BigRational::from_integer(scale.clone());
    let lo = series(&ts.floor().to_integer(), scale, false);
    let hi = series(&ts.ceil().to_integer(), scale, true);
    (lo, hi)
}

// Σ t^(2j+1)/(2j+1) in fixed point with t = big_t/scale. Rounding is one-sided
// throughout; every quantity is non-negative so the bound direction survives.
fn series(big_t: &BigInt, scale: &BigInt, up: bool) -> BigInt {
    let div = |a: BigInt, b: &BigInt| if up { a.div_ceil(b) } else { a.div_floor(b) };
    let t2 = div(big_t * big_t, scale);
    let mut term = big_t.clone();
    let mut sum = BigInt::zero();
    let mut j: u32 = 0;
    while !term.is_zero() {
        sum += div(term.clone(), &BigInt::from(2 * j + 1));
        term = div(&term * &t2, scale);
        j += 1;
        if up && term <= BigInt::one() {
            // Remaining terms are bounded by term·(1 + t² + t⁴ + …) ≤ term·9/8.
            sum += (term * BigInt::from(9)).div_ceil(&BigInt::from(8)) + 1;
            break;
        }
    }
    sum
}

/// Rational bounds on `ln x` for `x > 0`, accurate to about `10^−digits`.
pub fn ln_enclosure(x: &BigRational, digits: u32) -> (BigRational, BigRational) {
    assert!(x.is_positive(), "logarithm of non-positive number");
    let scale = ten_pow(digits + 10);
    // x = 2^k · y with 1 ≤ y < 2.
    let mut k: i64 = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = BigRational::from_integer(2.into());
    let pow2 = |k: i64| -> BigRational {
        let p = BigRational::from_integer(BigInt::one() << k.unsigned_abs());
        if k >= 0 {
            p
        } else {
            p.recip()
        }
    };
    let mut y = x / pow2(k);
    while y >= two {
        y /= &two;
        k += 1;
    }
    while y < BigRational::one() {
        y *= &two;
        k -= 1;
    }
    let one = BigRational::one();
    let t = (&y - &one) / (&y + &one);
    let (ly_lo, ly_hi) = atanh_fixed(&t, &scale);
    let (l2_lo, l2_hi) = atanh_fixed(&BigRational::new(1.into(), 3.into()), &scale);
    let kb = BigInt::from(k);
    let (k_lo, k_hi) = if k >= 0 {
        (&kb * &l2_lo, &kb * &l2_hi)
    } else {
        (&kb * &l2_hi, &kb * &l2_lo)
    };
    let lo = BigRational::new(2 * (k_lo + ly_lo), scale.clone());
    let hi = BigRational::new(2 * (k_hi + ly_hi), scale);
    (lo, hi)
}
