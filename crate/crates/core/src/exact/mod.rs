//! Exact arithmetic in `Q` and `Q(√d)`, Möbius actions, decimal enclosures
//! and outward-rounded floating intervals.

mod decimal;
mod interval;
mod matrix;
mod surd;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use decimal::{ln_enclosure, rational_to_decimal, DecimalApprox};
pub use interval::Interval;
pub use matrix::{mobius_apply, IntMatrix2};
pub use surd::{QuadraticSurd, DEFAULT_RADICAND_BOUND};

use crate::{Error, Result};

/// An exact element of `Q ∪ Q(√d)`.
///
/// Arithmetic between two surds requires a shared radicand; rationals mix
/// freely with either. Results that lose their radical collapse to
/// [`Exact::Rational`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Exact {
    Rational(BigRational),
    Surd(QuadraticSurd),
}

/// Arithmetic operation selector for [`surd_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `op` to `x` and `y` exactly.
pub fn surd_arith(x: &Exact, y: &Exact, op: ArithOp) -> Result<Exact> {
    match op {
        ArithOp::Add => x.add(y),
        ArithOp::Sub => x.sub(y),
        ArithOp::Mul => x.mul(y),
        ArithOp::Div => x.div(y),
    }
}

// (p, q, r, d) view with d = None for rationals.
struct Parts<'a> {
    p: &'a BigInt,
    q: Option<&'a BigInt>,
    r: &'a BigInt,
    d: Option<&'a BigInt>,
}

impl Exact {
    pub fn zero() -> Exact {
        Exact::Rational(BigRational::zero())
    }

    pub fn one() -> Exact {
        Exact::Rational(BigRational::one())
    }

    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Exact> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Exact::Rational(BigRational::new(num.into(), den)))
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn golden() -> Exact {
        QuadraticSurd::from_parts(1.into(), 1.into(), 2.into(), 5.into())
    }

    fn parts(&self) -> Parts<'_> {
        match self {
            Exact::Rational(x) => Parts {
                p: x.numer(),
                q: None,
                r: x.denom(),
                d: None,
            },
            Exact::Surd(s) => Parts {
                p: s.p(),
                q: Some(s.q()),
                r: s.r(),
                d: Some(s.d()),
            },
        }
    }

    /// The radicand of the field this number lives in, if irrational.
    pub fn radicand(&self) -> Option<&BigInt> {
        match self {
            Exact::Rational(_) => None,
            Exact::Surd(s) => Some(s.d()),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Exact::Rational(x) => Some(x),
            Exact::Surd(_) => None,
        }
    }

    pub fn as_surd(&self) -> Option<&QuadraticSurd> {
        match self {
            Exact::Rational(_) => None,
            Exact::Surd(s) => Some(s),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Exact::Rational(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Exact::Rational(x) if x.is_zero())
    }

    fn common_radicand<'a>(&'a self, other: &'a Exact) -> Result<Option<&'a BigInt>> {
        match (self.radicand(), other.radicand()) {
            (Some(a), Some(b)) if a != b => {
                Err(Error::MixedRadicands(a.to_string(), b.to_string()))
            }
            (Some(a), _) => Ok(Some(a)),
            (None, b) => Ok(b),
        }
    }

    fn build(p: BigInt, q: BigInt, r: BigInt, d: Option<&BigInt>) -> Exact {
        match d {
            Some(d) => QuadraticSurd::from_parts(p, q, r, d.clone()),
            None => Exact::Rational(BigRational::new(p, r)),
        }
    }

    pub fn add(&self, other: &Exact) -> Result<Exact> {
        if let (Exact::Rational(a), Exact::Rational(b)) = (self, other) {
            return Ok(Exact::Rational(a + b));
        }
        let d = self.common_radicand(other)?;
        let (x, y) = (self.parts(), other.parts());
        let zero = BigInt::zero();
        let (q1, q2) = (x.q.unwrap_or(&zero), y.q.unwrap_or(&zero));
        let p = x.p * y.r + y.p * x.r;
        let q = q1 * y.r + q2 * x.r;
        Ok(Exact::build(p, q, x.r * y.r, d))
    }

    pub fn sub(&self, other: &Exact) -> Result<Exact> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Exact) -> Result<Exact> {
        if let (Exact::Rational(a), Exact::Rational(b)) = (self, other) {
            return Ok(Exact::Rational(a * b));
        }
        let d = self.common_radicand(other)?;
        let (x, y) = (self.parts(), other.parts());
        let zero = BigInt::zero();
        let (q1, q2) = (x.q.unwrap_or(&zero), y.q.unwrap_or(&zero));
        let dd = d.expect("at least one surd");
        let p = x.p * y.p + q1 * q2 * dd;
        let q = x.p * q2 + y.p * q1;
        Ok(Exact::build(p, q, x.r * y.r, d))
    }

    pub fn recip(&self) -> Result<Exact> {
        match self {
            Exact::Rational(x) => {
                if x.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Exact::Rational(x.recip()))
                }
            }
            Exact::Surd(s) => {
                // r/(p + q√d) = r(p − q√d)/(p² − q²d); the norm is nonzero for square-free d.
                let norm = s.p() * s.p() - s.q() * s.q() * s.d();
                Ok(QuadraticSurd::from_parts(
                    s.r() * s.p(),
                    -(s.r() * s.q()),
                    norm,
                    s.d().clone(),
                ))
            }
        }
    }

    pub fn div(&self, other: &Exact) -> Result<Exact> {
        self.common_radicand(other)?;
        self.mul(&other.recip()?)
    }

    pub fn neg(&self) -> Exact {
        match self {
            Exact::Rational(x) => Exact::Rational(-x),
            Exact::Surd(s) => {
                QuadraticSurd::from_parts(-s.p(), -s.q(), s.r().clone(), s.d().clone())
            }
        }
    }

    pub fn abs(&self) -> Exact {
        if self.signum() == Sign::Minus {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Galois conjugate; rationals are fixed.
    pub fn conjugate(&self) -> Exact {
        match self {
            Exact::Rational(_) => self.clone(),
            Exact::Surd(s) => Exact::Surd(s.conjugate()),
        }
    }

    pub fn floor(&self) -> BigInt {
        match self {
            Exact::Rational(x) => x.floor().to_integer(),
            Exact::Surd(s) => s.floor(),
        }
    }

    /// Nearest integer, ties rounded up.
    pub fn round(&self) -> BigInt {
        self.add(&Exact::Rational(BigRational::new(1.into(), 2.into())))
            .expect("rational shift")
            .floor()
    }

    pub fn signum(&self) -> Sign {
        match self {
            Exact::Rational(x) => x.numer().sign(),
            Exact::Surd(s) => s.signum(),
        }
    }

    /// `self · n` for an integer `n`.
    pub fn scale(&self, n: &BigInt) -> Exact {
        let x = self.parts();
        let zero = BigInt::zero();
        Exact::build(x.p * n, x.q.unwrap_or(&zero) * n, x.r.clone(), x.d)
    }

    pub fn pow(&self, mut e: u32) -> Exact {
        let mut base = self.clone();
        let mut acc = Exact::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            e >>= 1;
        }
        acc
    }

    /// Total order on reals. Numbers from different quadratic fields are
    /// separated by refining decimal enclosures, which always terminates
    /// because such numbers are never equal.
    pub fn cmp_exact(&self, other: &Exact) -> Ordering {
        if let (Some(a), Some(b)) = (self.radicand(), other.radicand()) {
            if a != b {
                let mut digits = 20;
                loop {
                    let (alo, ahi) = self.enclosure(digits);
                    let (blo, bhi) = other.enclosure(digits);
                    if ahi < blo {
                        return Ordering::Less;
                    }
                    if bhi < alo {
                        return Ordering::Greater;
                    }
                    digits *= 2;
                }
            }
        }
        let diff = self.sub(other).expect("shared field");
        match diff.signum() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    /// Rational bounds `lo ≤ x ≤ hi` with `hi − lo ≤ 10^−digits`.
    pub fn enclosure(&self, digits: u32) -> (BigRational, BigRational) {
        match self {
            Exact::Rational(x) => (x.clone(), x.clone()),
            Exact::Surd(_) => {
                let scale = BigInt::from(10u32).pow(digits);
                let n = self.scale(&scale).floor();
                let lo = BigRational::new(n.clone(), scale.clone());
                let hi = BigRational::new(n + 1, scale);
                (lo, hi)
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Exact::Rational(x) => x.to_f64().unwrap_or(f64::NAN),
            Exact::Surd(s) => s.to_f64(),
        }
    }

    // Slow path for surds whose components cancel in floating point.
    pub(crate) fn to_f64_slow(&self) -> f64 {
        let mut digits = 24;
        loop {
            let scale = BigInt::from(10u32).pow(digits);
            let n = self.scale(&scale).floor();
            if n.bits() > 64 || digits > 4000 {
                return BigRational::new(n, scale).to_f64().unwrap_or(0.0);
            }
            digits *= 2;
        }
    }

    /// Outward-rounded floating enclosure.
    pub fn to_interval(&self) -> Interval {
        match self {
            Exact::Rational(x) => Interval::from_rational(x),
            Exact::Surd(_) => {
                let v = self.to_f64();
                Interval::new(v, v).widen_ulps(4)
            }
        }
    }

    /// Decimal expansion with `digits` fractional digits and its enclosure.
    pub fn to_decimal(&self, digits: u32) -> DecimalApprox {
        decimal::to_decimal(self, digits)
    }

    /// `(p, q, r, d)` as decimal strings, `q = 0, d = 1` for rationals.
    pub fn components(&self) -> [String; 4] {
        match self {
            Exact::Rational(x) => [
                x.numer().to_string(),
                "0".into(),
                x.denom().to_string(),
                "1".into(),
            ],
            Exact::Surd(s) => [
                s.p().to_string(),
                s.q().to_string(),
                s.r().to_string(),
                s.d().to_string(),
            ],
        }
    }
}

impl From<i64> for Exact {
    fn from(n: i64) -> Exact {
        Exact::Rational(BigRational::from_integer(n.into()))
    }
}

impl From<BigInt> for Exact {
    fn from(n: BigInt) -> Exact {
        Exact::Rational(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Exact {
    fn from(x: BigRational) -> Exact {
        Exact::Rational(x)
    }
}

impl From<QuadraticSurd> for Exact {
    fn from(s: QuadraticSurd) -> Exact {
        Exact::Surd(s)
    }
}

impl PartialOrd for Exact {
    fn partial_cmp(&self, other: &Exact) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exact {
    fn cmp(&self, other: &Exact) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let (a, b) = (self.to_f64(), other.to_f64());
        if a.is_finite() && b.is_finite() && (a - b).abs() > 1e-9 * (1.0 + a.abs().max(b.abs())) {
            return a.partial_cmp(&b).expect("finite");
        }
        self.cmp_exact(other)
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exact::Rational(x) => write!(f, "{x}"),
            Exact::Surd(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ExactRepr {
    p: String,
    q: String,
    r: String,
    d: String,
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let [p, q, r, d] = self.components();
        ExactRepr { p, q, r, d }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Exact, D::Error> {
        use serde::de::Error as _;
        let repr = ExactRepr::deserialize(deserializer)?;
        let parse = |s: &str| s.parse::<BigInt>().map_err(D::Error::custom);
        QuadraticSurd::new(
            parse(&repr.p)?,
            parse(&repr.q)?,
            parse(&repr.r)?,
            parse(&repr.d)?,
        )
        .map_err(D::Error::custom)
    }
}

/// `⌊√n⌋` for non-negative `n`.
pub(crate) fn isqrt(n: &BigInt) -> BigInt {
    num_integer::Roots::sqrt(n)
}
