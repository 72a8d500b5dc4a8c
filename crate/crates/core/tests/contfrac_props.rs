use approxspec::contfrac::{compare_alternate, eval_finite, expand, reversal_ratio, AltOrdering};
use approxspec::{ContinuedFraction, Exact};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn periodic() -> impl Strategy<Value = ContinuedFraction> {
    (
        -3i64..4,
        prop::collection::vec(1i64..7, 0..3),
        prop::collection::vec(1i64..7, 1..5),
    )
        .prop_map(|(a0, pre, period)| {
            ContinuedFraction::periodic(a0.into(), big(&pre), big(&period)).unwrap()
        })
}

fn finite_digits() -> impl Strategy<Value = Vec<i64>> {
    (-20i64..20, prop::collection::vec(1i64..30, 0..12)).prop_map(|(a0, mut rest)| {
        // Canonical form: a last digit of 1 would be absorbed into its predecessor.
        if let Some(last) = rest.last_mut() {
            if *last == 1 {
                *last = 2;
            }
        }
        let mut d = vec![a0];
        d.extend(rest);
        d
    })
}

proptest! {
    #[test]
    fn rational_round_trip(num in -10_000i64..10_000, den in 1i64..10_000) {
        let x = BigRational::new(num.into(), den.into());
        let cf = expand(&Exact::from(x.clone()));
        let digits = cf.prefix(cf.len().unwrap()).unwrap();
        prop_assert_eq!(eval_finite(&digits).unwrap(), x);
    }

    #[test]
    fn finite_expansion_is_canonical(d in finite_digits()) {
        let x = eval_finite(&big(&d)).unwrap();
        let cf = expand(&Exact::from(x));
        prop_assert_eq!(cf.prefix(cf.len().unwrap()).unwrap(), big(&d));
    }

    #[test]
    fn periodic_value_expands_back(cf in periodic()) {
        let x = cf.value().unwrap();
        prop_assert_eq!(expand(&x), cf);
    }

    #[test]
    fn text_round_trip(cf in periodic()) {
        let shown = cf.to_string();
        let back: ContinuedFraction = shown.parse().unwrap();
        prop_assert_eq!(back, cf);
    }

    // p_N q_{N−1} − p_{N−1} q_N = (−1)^{N−1} and |p_N/q_N − α| < 1/q_N².
    #[test]
    fn convergent_identities(cf in periodic()) {
        let alpha = cf.value().unwrap();
        let conv = cf.convergents(30).unwrap();
        for n in 1..conv.len() {
            let det = &conv[n].p * &conv[n - 1].q - &conv[n - 1].p * &conv[n].q;
            let expected = if n % 2 == 1 { BigInt::one() } else { -BigInt::one() };
            prop_assert_eq!(det, expected);
            let q = Exact::from(conv[n].q.clone());
            let err = Exact::from(conv[n].as_rational()).sub(&alpha).unwrap().abs().mul(&q.mul(&q).unwrap()).unwrap();
            prop_assert!(err < Exact::one());
        }
    }

    #[test]
    fn reversal_ratio_is_reversed_expansion(mut d in prop::collection::vec(1i64..9, 2..15)) {
        // Keep the expansion canonical so its length is d.len() + 1.
        *d.last_mut().unwrap() += 1;
        let mut digits = vec![0];
        digits.extend(&d);
        let cf = ContinuedFraction::finite(big(&digits)).unwrap();
        let n = d.len();
        let mut rev = vec![0];
        rev.extend(d.iter().rev());
        prop_assert_eq!(reversal_ratio(&cf, n).unwrap(), eval_finite(&big(&rev)).unwrap());
    }

    #[test]
    fn alternate_order_matches_value_order(x in periodic(), y in periodic()) {
        let (vx, vy) = (x.value().unwrap(), y.value().unwrap());
        match compare_alternate(&x, &y, 200) {
            AltOrdering::Less => prop_assert!(vx < vy),
            AltOrdering::Greater => prop_assert!(vx > vy),
            AltOrdering::EqualUpToDepth => prop_assert_eq!(vx, vy),
        }
    }

    #[test]
    fn gauss_step_shifts_digits(cf in periodic()) {
        let (a0, rest) = cf.gauss_step().unwrap();
        prop_assert_eq!(a0, cf.digit(0).unwrap());
        for i in 0..20 {
            prop_assert_eq!(rest.digit(i).unwrap(), cf.digit(i + 1).unwrap());
        }
        prop_assert!(rest.value().unwrap().floor().is_positive());
    }

    #[test]
    fn enclosure_brackets_value(cf in periodic(), den in 1u64..1_000_000) {
        let x = cf.value().unwrap();
        let (lo, hi) = cf.enclosure(&BigInt::from(den));
        prop_assert!(Exact::from(lo.clone()) < x && x < Exact::from(hi.clone()));
        prop_assert!(hi - lo <= BigRational::new(1.into(), den.into()));
    }
}

#[test]
fn stream_prefix_matches_euler_rule() {
    let e = approxspec::spectrum::euler();
    let d = e.prefix(12).unwrap();
    assert_eq!(d, big(&[2, 1, 2, 1, 1, 4, 1, 1, 6, 1, 1, 8]));
    assert_eq!(e.to_string(), "[2; 1, 2, 1, 1, 4, 1, 1, 6, 1, ...]");
    assert!((e.to_f64() - std::f64::consts::E).abs() < 1e-15);
}
