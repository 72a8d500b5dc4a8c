use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Exact;
use crate::{Error, Result};

/// Integer 2×2 matrix `[[c, d], [e, f]]` acting on reals by
/// `x ↦ (c·x + d)/(e·x + f)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix2 {
    pub c: BigInt,
    pub d: BigInt,
    pub e: BigInt,
    pub f: BigInt,
}

impl IntMatrix2 {
    /// Rejects singular matrices.
    pub fn new(
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
        e: impl Into<BigInt>,
        f: impl Into<BigInt>,
    ) -> Result<Self> {
        let m = IntMatrix2 {
            c: c.into(),
            d: d.into(),
            e: e.into(),
            f: f.into(),
        };
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        IntMatrix2 {
            c: BigInt::one(),
            d: BigInt::zero(),
            e: BigInt::zero(),
            f: BigInt::one(),
        }
    }

    /// `[[0, 1], [1, −a0]]`: one Gauss-map step for a number with integer part `a0`.
    pub fn gauss_step(a0: &BigInt) -> Self {
        IntMatrix2 {
            c: BigInt::zero(),
            d: BigInt::one(),
            e: BigInt::one(),
            f: -a0,
        }
    }

    /// `[[1, −n], [0, 1]]`: translation by `−n`.
    pub fn shift(n: &BigInt) -> Self {
        IntMatrix2 {
            c: BigInt::one(),
            d: -n,
            e: BigInt::zero(),
            f: BigInt::one(),
        }
    }

    /// `[[a, 1], [1, 0]]`: prepends the partial quotient `a`, `x ↦ a + 1/x`.
    pub fn digit(a: &BigInt) -> Self {
        IntMatrix2 {
            c: a.clone(),
            d: BigInt::one(),
            e: BigInt::one(),
            f: BigInt::zero(),
        }
    }

    pub fn det(&self) -> BigInt {
        &self.c * &self.f - &self.d * &self.e
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn compose(&self, o: &IntMatrix2) -> IntMatrix2 {
        IntMatrix2 {
            c: &self.c * &o.c + &self.d * &o.e,
            d: &self.c * &o.d + &self.d * &o.f,
            e: &self.e * &o.c + &self.f * &o.e,
            f: &self.e * &o.d + &self.f * &o.f,
        }
    }

    /// Integer inverse, defined when `det = ±1`.
    pub fn inverse(&self) -> Option<IntMatrix2> {
        let det = self.det();
        if !det.abs().is_one() {
            return None;
        }
        Some(IntMatrix2 {
            c: &self.f * &det,
            d: -&self.d * &det,
            e: -&self.e * &det,
            f: &self.c * &det,
        })
    }

    /// Exact image `(c·x + d)/(e·x + f)`.
    pub fn apply(&self, x: &Exact) -> Result<Exact> {
        let den = x.scale(&self.e).add(&Exact::from(self.f.clone()))?;
        if den.is_zero() {
            return Err(Error::Pole);
        }
        let num = x.scale(&self.c).add(&Exact::from(self.d.clone()))?;
        num.div(&den)
    }
}

/// `mobius_apply(g, x)`.
pub fn mobius_apply(g: &IntMatrix2, x: &Exact) -> Result<Exact> {
    g.apply(x)
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.c, self.d, self.e, self.f)
    }
}
