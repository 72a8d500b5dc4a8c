use approxspec::cantor::{
    cover_intervals, cover_nested, extrema, hausdorff_bounds, ifs_cover, CantorSpec,
    DEFAULT_COVER_BUDGET,
};
use approxspec::contfrac::eval_finite;
use approxspec::well::{all_in_lattice, eigenvalues, lambda_coeff, pu_spectrum, singular_scan};
use approxspec::words::{occurrence_check, WordGenerator};
use approxspec::{contfrac::expand, Exact, Exec};
use num_bigint::BigInt;
use proptest::prelude::*;

// Words built by literal concatenation of the blocks, as an oracle for the
// index arithmetic in `WordGenerator::letter`.
fn all_words(alphabet: &[i64], n: usize) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for w in all_words(alphabet, n - 1) {
        for &a in alphabet {
            let mut v = w.clone();
            v.push(a);
            out.push(v);
        }
    }
    out
}

fn concatenated(gen: WordGenerator, len: usize) -> Vec<i64> {
    let mut word = vec![];
    let mut n = 1;
    while word.len() < len {
        for w in all_words(gen.alphabet(), n) {
            match gen {
                WordGenerator::Spiked => {
                    for h in 1..=n as i64 {
                        word.extend(&w);
                        word.push(h);
                    }
                }
                _ => word.extend(&w),
            }
        }
        n += 1;
    }
    word.truncate(len);
    word
}

#[test]
fn words_match_concatenation() {
    for gen in [
        WordGenerator::Universal14,
        WordGenerator::Universal45,
        WordGenerator::Spiked,
    ] {
        let len = 20_000;
        assert_eq!(
            gen.prefix(len, Exec::Parallel),
            concatenated(gen, len),
            "{}",
            gen.name()
        );
        assert_eq!(
            gen.prefix_len_through(3) as usize,
            (1..=3).map(|n| gen.block_len(n) as usize).sum::<usize>()
        );
    }
}

#[test]
fn every_short_pattern_occurs_at_both_parities() {
    for pattern in all_words(&[1, 2, 3, 4], 3) {
        let r = occurrence_check(
            WordGenerator::Universal14,
            &pattern,
            200_000,
            1,
            Exec::Parallel,
        );
        assert!(
            r.satisfied,
            "{pattern:?}: {} even, {} odd",
            r.even_count, r.odd_count
        );
    }
}

fn alphabet() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::btree_set(1i64..8, 1..4).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Random points of F₀(A) lie in [min F, max F] and in the cover interval
    // of their own first n digits.
    #[test]
    fn cover_contains_sampled_points(a in alphabet(), picks in prop::collection::vec(0usize..8, 40), n in 1u32..4) {
        let spec = CantorSpec::new(a.clone()).unwrap();
        let digits: Vec<i64> = picks.iter().map(|&i| spec.alphabet()[i % spec.alphabet().len()]).collect();
        let mut cf = vec![BigInt::from(0)];
        cf.extend(digits.iter().map(|&d| BigInt::from(d)));
        let x = Exact::from(eval_finite(&cf).unwrap());
        let (min, max) = extrema(&spec);
        let width = max.sub(&min).unwrap();
        // The 40-digit truncation differs from an infinite point by far less than this slack.
        let slack = Exact::ratio(1, BigInt::from(10).pow(12)).unwrap();
        prop_assert!(min.sub(&slack).unwrap() <= x && x <= max.add(&slack).unwrap());
        let cover = cover_intervals(&spec, n, DEFAULT_COVER_BUDGET, Exec::Sequential).unwrap();
        let s = spec.alphabet().len();
        let idx = digits[..n as usize]
            .iter()
            .fold(0, |acc, d| acc * s + spec.alphabet().iter().position(|a| a == d).unwrap());
        let (lo, hi) = &cover[idx];
        prop_assert!(lo.sub(&slack).unwrap() <= x && x <= hi.add(&slack).unwrap());
        prop_assert!(width.is_zero() || lo >= &min && hi <= &max);
    }

    #[test]
    fn cover_is_nested_and_contracting(a in alphabet(), n in 1u32..4) {
        let spec = CantorSpec::new(a).unwrap();
        prop_assert!(cover_nested(&spec, n, DEFAULT_COVER_BUDGET, Exec::Parallel).unwrap());
        let est = ifs_cover(&spec, n, DEFAULT_COVER_BUDGET, Exec::Parallel).unwrap();
        prop_assert_eq!(est.interval_count, spec.alphabet().len().pow(n));
        prop_assert!(est.within_bound);
    }

    #[test]
    fn half_decision_matches_float(a in alphabet()) {
        let spec = CantorSpec::new(a).unwrap();
        let h = hausdorff_bounds(&spec, 30);
        let s = spec.alphabet().len() as f64;
        let m = extrema(&spec).0.to_f64() + spec.a_min() as f64;
        prop_assert!((h.upper_f64 - s.ln() / m.ln()).abs() < 1e-12 || m <= 1.0);
        prop_assert_eq!(h.below_half_exact, s * s < m);
    }

    #[test]
    fn rational_scans_are_discrete(r in -50i64..50, s in 2i64..30) {
        let cf = expand(&Exact::ratio(r, s).unwrap());
        let hits = singular_scan(&cf, (-3.0, 3.0), 300, Exec::Parallel);
        prop_assert!(all_in_lattice(&hits, &BigInt::from(s)));
    }

    #[test]
    fn box_coefficients_match_definition(an in 1i64..9, bn in 1i64..9, k in 1i64..30, m in 1i64..30) {
        let (a, b) = (Exact::ratio(an, 3).unwrap(), Exact::ratio(bn, 2).unwrap());
        let v = lambda_coeff(&a, &b, k, m);
        // k²/a² − m²/b² = 9k²/an² − 4m²/bn²
        let expected = Exact::ratio(9 * k * k * bn * bn - 4 * m * m * an * an, an * an * bn * bn).unwrap();
        prop_assert_eq!(v.as_exact(), Some(&expected));
    }
}

#[test]
fn surd_box_matches_floating_point() {
    let a = Exact::golden();
    let b = Exact::one();
    let eig = eigenvalues(&a, &b, 20, 20, Exec::Parallel).unwrap();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    for e in eig {
        let expected = (e.k * e.k) as f64 / (phi * phi) - (e.m * e.m) as f64;
        assert!((e.coeff.to_f64() - expected).abs() < 1e-9);
    }
}

#[test]
fn pu_energies_follow_formula() {
    let ox = Exact::golden();
    let rep = pu_spectrum(&ox, &Exact::one(), 30, 30, Exec::Sequential).unwrap();
    assert_eq!(rep.energies.len(), 31 * 31);
    let phi = ox.to_f64();
    for e in &rep.energies {
        let f = (e.n as f64 + 0.5) * phi - (e.m as f64 + 0.5);
        assert!((e.energy.to_f64() - f).abs() < 1e-12);
    }
    let par = pu_spectrum(&ox, &Exact::one(), 30, 30, Exec::Parallel).unwrap();
    assert_eq!(rep, par);
}
