//! Reproduction scripts: each one recomputes a reference number or claim
//! and reports measured against expected values with a PASS/FAIL verdict.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cantor::{extrema, hausdorff_bounds, sumset_interval, CantorSpec};
use crate::contfrac::{expand, ContinuedFraction};
use crate::exact::{Exact, IntMatrix2, QuadraticSurd};
use crate::spectrum::{
    approx_sequence, detect_clusters, euler, legendre_filter, markov_constant,
    mobius_transport_witness, quad_accumulation_set, secondary_convergent_terms, term_enclosures,
    MarkovEstimate, MarkovMode, SpectrumWitness, DEFAULT_CLUSTER_RADIUS,
};
use crate::well::{all_in_lattice, pu_spectrum, singular_scan, singular_scan_unrestricted};
use crate::words::{target_hit_scan, word_to_alpha, ScanOptions, WordGenerator};
use crate::{Error, Exec, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub measured: String,
    pub expected: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReproReport {
    pub name: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    /// Exact values produced along the way, keyed by name.
    pub exact: BTreeMap<String, Exact>,
    /// The same values as decimals at the configured precision.
    pub decimals: BTreeMap<String, String>,
}

impl ReproReport {
    fn new(name: &str) -> Self {
        ReproReport {
            name: name.into(),
            pass: true,
            checks: vec![],
            exact: BTreeMap::new(),
            decimals: BTreeMap::new(),
        }
    }

    fn check(
        &mut self,
        label: impl Into<String>,
        measured: impl ToString,
        expected: impl ToString,
        pass: bool,
    ) {
        self.pass &= pass;
        self.checks.push(Check {
            label: label.into(),
            measured: measured.to_string(),
            expected: expected.to_string(),
            pass,
        });
    }

    fn record(&mut self, name: impl Into<String>, value: Exact, digits: u32) {
        let name = name.into();
        self.decimals
            .insert(name.clone(), value.to_decimal(digits).text);
        self.exact.insert(name, value);
    }

    /// One line per check, `PASS`/`FAIL` first.
    pub fn lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let verdict = if c.pass { "PASS" } else { "FAIL" };
                format!(
                    "{verdict} {}: {} (measured {}, expected {})",
                    self.name, c.label, c.measured, c.expected
                )
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReproConfig {
    pub seed: u64,
    pub precision: u32,
    pub exec: Exec,
}

impl Default for ReproConfig {
    fn default() -> Self {
        ReproConfig {
            seed: 1,
            precision: 50,
            exec: Exec::Parallel,
        }
    }
}

/// Script names in criterion order.
pub const SCRIPTS: [&str; 11] = [
    "golden-markov",
    "period-four",
    "euler",
    "bracket-bounds",
    "legendre",
    "cantor-endpoints",
    "hausdorff",
    "mobius",
    "words",
    "rational",
    "pu-density",
];

pub fn run(name: &str, cfg: &ReproConfig) -> Result<ReproReport> {
    match name {
        "golden-markov" => golden_markov(cfg),
        "period-four" => period_four(cfg),
        "euler" => euler_case(cfg),
        "bracket-bounds" => bracket_bounds(cfg),
        "legendre" => legendre(cfg),
        "cantor-endpoints" => cantor_endpoints(cfg),
        "hausdorff" => hausdorff(cfg),
        "mobius" => mobius(cfg),
        "words" => words(cfg),
        "rational" => rational(cfg),
        "pu-density" => pu_density(cfg),
        _ => Err(Error::InvalidArgument(format!(
            "unknown repro script {name:?}; known: {}",
            SCRIPTS.join(", ")
        ))),
    }
}

fn surd(p: i64, q: i64, r: i64, d: i64) -> Exact {
    QuadraticSurd::new(p.into(), q.into(), r.into(), d.into()).expect("valid surd")
}

fn set_string(v: &[Exact]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn same_set(a: &[Exact], b: &[Exact]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.contains(x))
}

/// Random eventually periodic expansion: `a0 ∈ [0, 3]`, preperiod of length
/// `≤ 2`, period of length `1..=4`, digits in `[1, 6]`.
pub fn random_quadratic(rng: &mut impl Rng) -> Exact {
    let a0 = BigInt::from(rng.random_range(0..=3));
    let pre = (0..rng.random_range(0..=2))
        .map(|_| BigInt::from(rng.random_range(1..=6)))
        .collect();
    let period = (0..rng.random_range(1..=4))
        .map(|_| BigInt::from(rng.random_range(1..=6)))
        .collect();
    ContinuedFraction::periodic(a0, pre, period)
        .expect("valid digits")
        .value()
        .expect("periodic")
}

fn golden_markov(cfg: &ReproConfig) -> Result<ReproReport> {
    let mut r = ReproReport::new("golden-markov");
    let phi = Exact::golden();
    let inv = surd(0, 1, 5, 5);
    let set = quad_accumulation_set(&phi, 40, cfg.exec)?.values();
    let expected = [inv.neg(), inv.clone()];
    r.check(
        "accumulation set",
        set_string(&set),
        set_string(&expected),
        same_set(&set, &expected),
    );
    let mu = markov_constant(&expand(&phi), MarkovMode::ExactQuadratic, cfg.exec)?;
    let MarkovEstimate::Exact { value, .. } = mu else {
        unreachable!("exact mode")
    };
    r.check("markov constant", &value, &inv, value == inv);
    let ten = value.to_decimal(10).text;
    r.check(
        "markov decimal, 10 places",
        &ten,
        "0.4472135955",
        ten == "0.4472135955",
    );
    let t40 = approx_sequence(&expand(&phi), 40, cfg.exec)?[40]
        .value
        .to_f64()
        .abs();
    r.check(
        "|t_40| vs 0.4472135955",
        format!("{t40:.15}"),
        "0.4472135955 ± 1e-12",
        (t40 - 0.4472135955).abs() < 1e-12,
    );
    r.record("markov", value, cfg.precision);
    r.record("inverse_sqrt5", inv, cfg.precision);
    Ok(r)
}

fn period_four(cfg: &ReproConfig) -> Result<ReproReport> {
    let mut r = ReproReport::new("period-four");
    let x = surd(2, 2, 5, 6);
    let report = quad_accumulation_set(&x, 60, cfg.exec)?;
    let set = report.values();
    let expected = [surd(0, -5, 24, 6), surd(0, 1, 6, 6), surd(0, 1, 8, 6)];
    r.check(
        "expansion",
        &report.expansion,
        "[1; (2,1,1,1)^w]",
        report.expansion == "[1; (2,1,1,1)^w]",
    );
    r.check(
        "accumulation set (expected)",
        set_string(&set),
        set_string(&expected),
        same_set(&set, &expected),
    );
    // The direct limits of q_N(p_N − q_N·α) are the negatives of the expected set.
    let negated: Vec<Exact> = expected.iter().map(Exact::neg).collect();
    r.check(
        "accumulation set (sign-corrected)",
        set_string(&set),
        set_string(&negated),
        same_set(&set, &negated),
    );
    r.check("#D < period", set.len(), "3 (< 4)", set.len() == 3);
    r.check(
        "witnesses converge",
        report.points.iter().all(|p| p.verified),
        true,
        report.points.iter().all(|p| p.verified),
    );
    for (i, v) in set.into_iter().enumerate() {
        r.record(format!("point_{i}"), v, cfg.precision);
    }
    Ok(r)
}

fn euler_case(cfg: &ReproConfig) -> Result<ReproReport> {
    let mut r = ReproReport::new("euler");
    let e = euler();
    let m = 50;
    let terms = term_enclosures(&e, 0..3 * m + 2, cfg.exec);
    let t0 = terms[3 * m].abs();
    let t1 = terms[3 * m + 1].abs();
    r.check(
        format!("|t_{}|", 3 * m),
        t0,
        "0.5 ± 0.01",
        t0.max_distance(0.5) < 0.01,
    );
    r.check(format!("|t_{}|", 3 * m + 1), t1, "< 0.01", t1.hi < 0.01);
    for a in 1..=3i64 {
        let s = secondary_convergent_terms(&e, 3 * m + 1, &BigInt::from(a))?
            .value
            .interval()
            .abs();
        let target = a as f64 + 0.5;
        r.check(
            format!("secondary a={a} at N={}", 3 * m + 1),
            s,
            format!("{target} ± 0.02"),
            s.max_distance(target) < 0.02,
        );
    }
    let offenders: Vec<usize> = (21..terms.len())
        .filter(|&n| {
            let t = terms[n];
            t.hi > -0.5 && t.lo < 0.5 && t.abs().hi > 0.01
        })
        .collect();
    r.check(
        "terms in (-1/2, 1/2) beyond N=20 within 0.01 of 0",
        format!(
            "{} offenders, first {:?}",
            offenders.len(),
            offenders.first()
        ),
        "0 offenders",
        offenders.is_empty(),
    );
    Ok(r)
}

fn bracket_bounds(cfg: &ReproConfig) -> Result<ReproReport> {
    let mut r = ReproReport::new("bracket-bounds");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut corpus: Vec<(String, ContinuedFraction)> = (0..46)
        .map(|_| {
            let x = random_quadratic(&mut rng);
            (x.to_string(), expand(&x))
        })
        .collect();
    for w in [
        WordGenerator::Universal14,
        WordGenerator::Universal45,
        WordGenerator::Spiked,
    ] {
        corpus.push((w.name().into(), word_to_alpha(w)));
    }
    corpus.push(("e".into(), euler()));
    let depth = 1000;
    let mut violations = 0usize;
    let mut terms_checked = 0usize;
    for (_, cf) in &corpus {
        let terms = approx_sequence(cf, depth, cfg.exec)?;
        terms_checked += terms.len();
        violations += terms.iter().filter(|t| !t.bracket_holds()).count();
    }
    r.check(
        format!(
            "bracket violations over {} numbers, {terms_checked} terms",
            corpus.len()
        ),
        violations,
        0,
        violations == 0,
    );
    Ok(r)
}

fn legendre(cfg: &ReproConfig) -> Result<ReproReport> {
    let mut r = ReproReport::new("legendre");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    let mut counterexamples = 0;
    let mut hits = 0;
    let mut scan_mismatch = 0;
    for _ in 0..20 {
        let cf = expand(&random_quadratic(&mut rng));
        let rep = legendre_filter(&cf, 500, cfg.exec)?;
        hits += rep.hits.len();
        counterexamples += rep
            .hits
            .iter()
            .filter(|h| h.convergent_index.is_none())
            .count();
        let fast = singular_scan(&cf, (-1.0, 1.0), 200, cfg.exec);
        let slow = singular_scan_unrestricted(&cf, (-1.0, 1.0), 200, cfg.exec);
        scan_mismatch += usize::from(fast != slow);
    }
    r.check(
        format!("non-convergent hits among {hits}"),
        counterexamples,
        0,
        counterexamples == 0,
    );
    r.check(
        "restricted vs unrestricted scans differing",
        scan_mismatch,
        0,
        scan_mismatch == 0,
    );
    Ok(r)
}

fn cantor_endpoints(cfg: &ReproConfig) -> Result<ReproReport> {
    let mut r = ReproReport::new("cantor-endpoints");
    let four = CantorSpec::up_to(4)?;
    let (min4, _) = extrema(&four);
    let sqrt2_minus_1 = surd(-1, 1, 1, 2);
    let twice = min4.scale(&BigInt::from(2));
    r.check("2 min F(4)", &twice, &sqrt2_minus_1, twice == sqrt2_minus_1);
    let s = sumset_interval(&four, cfg.precision);
    let (lo, hi) = (2f64.sqrt() - 1.0, 4.0 * (2f64.sqrt() - 1.0));
    r.check(
        "sumset lo",
        &s.lo_decimal[..14],
        "0.414213562…",
        (s.lo.to_f64() - lo).abs() < 1e-12,
    );
    r.check(
        "sumset hi",
        &s.hi_decimal[..14],
        "1.656854249…",
        (s.hi.to_f64() - hi).abs() < 1e-12,
    );
    let (min45, _) = extrema(&CantorSpec::new(vec![4, 5])?);
    let expected = crate::literal::parse_exact("2*(sqrt(6/5)-1)")?;
    r.check("min F({4,5})", &min45, "2(√(6/5) − 1)", min45 == expected);
    r.record("min_f4", min4, cfg.precision);
    r.record("min_f45", min45, cfg.precision);
    Ok(r)
}

fn hausdorff(cfg: &ReproConfig) -> Result<ReproReport> {
    let mut r = ReproReport::new("hausdorff");
    let h = hausdorff_bounds(&CantorSpec::new(vec![4, 5])?, cfg.precision.max(50));
    r.check(
        "upper bound",
        &h.upper[..10],
        "0.4837 ± 0.0001",
        (h.upper_f64 - 0.4837).abs() <= 1e-4,
    );
    r.check(
        "upper < 1/2 (enclosure)",
        &h.upper_hi[..12],
        "< 0.5",
        h.below_half,
    );
    r.check(
        "upper < 1/2 (exact)",
        h.below_half_exact,
        true,
        h.below_half_exact,
    );
    r.check(
        "lower bound (constant)",
        format!("{:?}", h.lower),
        "Some(0.263)",
        h.lower == Some(0.263),
    );
    Ok(r)
}

fn random_sl2(rng: &mut impl Rng) -> IntMatrix2 {
    loop {
        let v: [i64; 4] = std::array::from_fn(|_| rng.random_range(-5..=5));
        if v[0] * v[3] - v[1] * v[2] == 1 {
            return IntMatrix2::new(v[0], v[1], v[2], v[3]).expect("det 1");
        }
    }
}

fn mobius(cfg: &ReproConfig) -> Result<ReproReport> {
    let mut r = ReproReport::new("mobius");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(2));
    let phi = Exact::golden();
    let cf = expand(&phi);
    let inv = surd(0, 1, 5, 5);
    let witnesses = [
        SpectrumWitness::from_convergents(
            &cf,
            &(0..=200).step_by(2).collect::<Vec<_>>(),
            inv.neg(),
        )?,
        SpectrumWitness::from_convergents(
            &cf,
            &(1..=199).step_by(2).collect::<Vec<_>>(),
            inv.clone(),
        )?,
    ];
    let mut worst = 0f64;
    let mut bad = 0;
    for i in 0..100 {
        let g = random_sl2(&mut rng);
        let w = &witnesses[i % 2];
        let (image, moved) = mobius_transport_witness(&g, w, &phi)?;
        let ok_target = moved.target == w.target.scale(&g.det());
        let err = moved
            .errors(&image)?
            .last()
            .copied()
            .unwrap_or(f64::INFINITY);
        worst = worst.max(err);
        bad += usize::from(!ok_target || !moved.is_monotone() || err >= 1e-9);
    }
    r.check(
        "transported witnesses off det(g)·x by ≥ 1e-9",
        bad,
        0,
        bad == 0,
    );
    r.check(
        "worst final error",
        format!("{worst:e}"),
        "< 1e-9",
        worst < 1e-9,
    );
    Ok(r)
}

fn words(cfg: &ReproConfig) -> Result<ReproReport> {
    let mut r = ReproReport::new("words");
    let depth = 100_000;
    let s2 = 2f64.sqrt();
    let (lo, hi) = (1.0 / (4.0 * s2), 1.0 / s2);
    let mut targets = vec![hi, -hi, lo, -lo];
    targets.extend((1..=10).map(|i| lo + (hi - lo) * i as f64 / 11.0));
    let opts = ScanOptions {
        depth,
        tol: 1e-3,
        include_secondary: false,
        z_max: 1,
    };
    let hits = target_hit_scan(
        &word_to_alpha(WordGenerator::Universal14),
        &targets,
        opts,
        cfg.exec,
    );
    let worst = hits.iter().map(|h| h.distance).fold(0.0, f64::max);
    r.check(
        "universal-14: worst distance over 14 targets",
        format!("{worst:e}"),
        "< 1e-3",
        worst < 1e-3,
    );

    let spiked = [0.7, 1.5, 2.5, 5.25];
    let opts = ScanOptions {
        depth,
        tol: 1e-2,
        include_secondary: true,
        z_max: 3,
    };
    let hits = target_hit_scan(
        &word_to_alpha(WordGenerator::Spiked),
        &spiked,
        opts,
        cfg.exec,
    );
    for h in &hits {
        r.check(
            format!("spiked: target {}", h.target),
            format!("{:e}", h.distance),
            "< 1e-2",
            h.distance < 1e-2,
        );
    }

    let terms = term_enclosures(
        &word_to_alpha(WordGenerator::Universal45),
        0..depth,
        cfg.exec,
    );
    let min_abs = terms
        .iter()
        .map(|t| t.abs().lo)
        .fold(f64::INFINITY, f64::min);
    let bound = 1.0 / 7.0 - 1e-3;
    r.check(
        "universal-45: min |t_N|",
        min_abs,
        format!("≥ {bound}"),
        min_abs >= bound,
    );
    Ok(r)
}

fn rational(cfg: &ReproConfig) -> Result<ReproReport> {
    let mut r = ReproReport::new("rational");
    let alpha = expand(&Exact::ratio(3, 7)?);
    let hits = singular_scan(&alpha, (-2.0, 2.0), 1000, cfg.exec);
    r.check(
        "scan values in (1/7)Z",
        all_in_lattice(&hits, &BigInt::from(7)),
        true,
        all_in_lattice(&hits, &BigInt::from(7)),
    );
    let values: Vec<(usize, f64)> = hits
        .iter()
        .map(|h| (h.m as usize, h.value.to_f64()))
        .collect();
    let clusters = detect_clusters(&values, DEFAULT_CLUSTER_RADIUS, 3);
    r.check("clusters", clusters.len(), 0, clusters.is_empty());
    let rejected = matches!(
        approx_sequence(&alpha, 5, cfg.exec),
        Err(Error::RationalInput)
    );
    r.check(
        "approximation sequence rejects rational input",
        rejected,
        true,
        rejected,
    );
    Ok(r)
}

fn pu_density(cfg: &ReproConfig) -> Result<ReproReport> {
    let mut r = ReproReport::new("pu-density");
    let one = Exact::one();
    let rep = pu_spectrum(&Exact::golden(), &one, 199, 199, cfg.exec)?;
    let min = rep.min_nonzero_abs_f64.unwrap_or(f64::NAN);
    r.check("Ω=(φ,1): min nonzero |E|", min, "< 1e-2", min < 1e-2);
    let omega = Exact::ratio(3, 2)?;
    let rep = pu_spectrum(&omega, &omega, 199, 199, cfg.exec)?;
    let gap = rep.min_gap.clone().unwrap_or_else(Exact::zero);
    r.check("Ω_x = Ω_y = 3/2: min gap", &gap, &omega, gap == omega);
    Ok(r)
}
