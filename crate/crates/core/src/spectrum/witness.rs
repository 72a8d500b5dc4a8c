use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::contfrac::ContinuedFraction;
use crate::exact::{Exact, IntMatrix2};
use crate::{Error, Result};

/// Integer sequences `(k_n)`, `(m_n)` with `m_n²(k_n/m_n − α) → target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumWitness {
    #[serde(serialize_with = "ser_vec")]
    pub k: Vec<BigInt>,
    #[serde(serialize_with = "ser_vec")]
    pub m: Vec<BigInt>,
    pub target: Exact,
}

fn ser_vec<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl SpectrumWitness {
    /// Witness formed by the convergents with the given indices.
    pub fn from_convergents(
        alpha: &ContinuedFraction,
        indices: &[usize],
        target: Exact,
    ) -> Result<Self> {
        let n_max = indices.iter().copied().max().unwrap_or(0);
        let conv = alpha.convergents(n_max)?;
        Ok(SpectrumWitness {
            k: indices.iter().map(|&i| conv[i].p.clone()).collect(),
            m: indices.iter().map(|&i| conv[i].q.clone()).collect(),
            target,
        })
    }

    /// `|m_n²(k_n/m_n − α) − target|` for each listed pair.
    pub fn errors(&self, alpha: &Exact) -> Result<Vec<f64>> {
        self.k
            .iter()
            .zip(&self.m)
            .map(|(k, m)| {
                let v = Exact::from(k * m).sub(&alpha.scale(&(m * m)))?;
                Ok(v.sub(&self.target)?.abs().to_f64())
            })
            .collect()
    }

    /// Both sequences strictly monotone (`m` increasing).
    pub fn is_monotone(&self) -> bool {
        let m_up = self.m.windows(2).all(|w| w[0] < w[1]);
        let k_up = self.k.windows(2).all(|w| w[0] < w[1]);
        let k_down = self.k.windows(2).all(|w| w[0] > w[1]);
        m_up && (k_up || k_down)
    }

    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }
}

/// Transports a witness for `α` through `g = [[c, d], [e, f]]`:
/// `k' = ck + dm`, `m' = ek + fm` witnesses `det(g)·x` for `gα`.
///
/// Pairs are normalized to `m' > 0` (which leaves `m'²(k'/m' − gα)`
/// unchanged); pairs with `m' = 0` and an initial stretch that is not yet
/// monotone are dropped. Returns `gα` and the new witness.
pub fn mobius_transport_witness(
    g: &IntMatrix2,
    w: &SpectrumWitness,
    alpha: &Exact,
) -> Result<(Exact, SpectrumWitness)> {
    let image = g.apply(alpha)?;
    let det = g.det();
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let pairs: Vec<(BigInt, BigInt)> =
        w.k.iter()
            .zip(&w.m)
            .map(|(k, m)| (&g.c * k + &g.d * m, &g.e * k + &g.f * m))
            .filter(|(_, m)| !m.is_zero())
            .map(|(k, m)| if m.is_negative() { (-k, -m) } else { (k, m) })
            .collect();
    // Longest monotone suffix.
    let mut start = pairs.len().saturating_sub(1);
    if pairs.len() >= 2 {
        let up = pairs[pairs.len() - 1].0 > pairs[pairs.len() - 2].0;
        while start > 0 {
            let (a, b) = (&pairs[start - 1], &pairs[start]);
            let k_ok = if up { a.0 < b.0 } else { a.0 > b.0 };
            if !(k_ok && a.1 < b.1) {
                break;
            }
            start -= 1;
        }
    }
    let (k, m) = pairs.into_iter().skip(start).unzip();
    Ok((
        image,
        SpectrumWitness {
            k,
            m,
            target: w.target.scale(&det),
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contfrac::expand;
    use crate::exact::QuadraticSurd;

    fn golden_witness() -> (Exact, SpectrumWitness) {
        let phi = Exact::golden();
        let target = QuadraticSurd::new(0.into(), 1.into(), 5.into(), 5.into()).unwrap();
        let idx: Vec<usize> = (1..30).step_by(2).collect();
        (
            phi.clone(),
            SpectrumWitness::from_convergents(&expand(&phi), &idx, target).unwrap(),
        )
    }

    #[test]
    fn convergent_witness_converges() {
        let (phi, w) = golden_witness();
        let err = w.errors(&phi).unwrap();
        assert!(w.is_monotone());
        assert!(err.windows(2).all(|e| e[1] < e[0]));
        assert!(*err.last().unwrap() < 1e-10);
    }

    #[test]
    fn identity_and_scaling() {
        let (phi, w) = golden_witness();
        let (img, same) = mobius_transport_witness(&IntMatrix2::identity(), &w, &phi).unwrap();
        assert_eq!((img, same), (phi.clone(), w.clone()));
        let (img, scaled) =
            mobius_transport_witness(&IntMatrix2::new(3, 0, 0, 3).unwrap(), &w, &phi).unwrap();
        assert_eq!(img, phi);
        assert_eq!(scaled.target, w.target.scale(&BigInt::from(9)));
        assert!(scaled.errors(&phi).unwrap().last().unwrap() < &1e-8);
    }

    #[test]
    fn gauss_step_negates() {
        let x = QuadraticSurd::new(2.into(), 2.into(), 5.into(), 6.into()).unwrap();
        let report =
            crate::spectrum::quad_accumulation_set(&x, 40, crate::Exec::Sequential).unwrap();
        let point = &report.points[0];
        let w = SpectrumWitness::from_convergents(&expand(&x), &point.witness, point.value.clone())
            .unwrap();
        assert!(w.errors(&x).unwrap().last().unwrap() < &1e-9);
        let g = IntMatrix2::gauss_step(&x.floor());
        let (tx, moved) = mobius_transport_witness(&g, &w, &x).unwrap();
        assert_eq!(moved.target, point.value.neg());
        assert!(moved.is_monotone());
        assert!(moved.errors(&tx).unwrap().last().unwrap() < &1e-9);
    }

    #[test]
    fn pole_is_reported() {
        let (_, w) = golden_witness();
        let g = IntMatrix2::new(1, 0, 2, -1).unwrap();
        assert_eq!(
            mobius_transport_witness(&g, &w, &Exact::ratio(1, 2).unwrap()),
            Err(Error::Pole)
        );
    }
}
