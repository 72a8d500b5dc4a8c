//! The three constructed infinite words: the universal words over
//! `{1,2,3,4}` and `{4,5}`, and the spiked word whose partial quotients are
//! unbounded. Letters are index-addressable, so deep scans never store the
//! word.

use std::sync::Arc;

use serde::Serialize;

use crate::contfrac::{ContinuedFraction, DigitSource};
use crate::exact::Interval;
use crate::spectrum::reversal_enclosures;
use crate::Exec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WordGenerator {
    /// `u_n = u_{n−1} v_n`, `v_n` = all length-`n` words over `{1,2,3,4}` in
    /// lexicographic order.
    Universal14,
    /// The same scheme over `{4,5}`.
    Universal45,
    /// `v_n` = `Copy(w)` for all length-`n` words `w` over `{1,2,3,4}`, where
    /// `Copy(w) = (w 1)(w 2)…(w n)`.
    Spiked,
}

impl WordGenerator {
    pub fn alphabet(self) -> &'static [i64] {
        match self {
            WordGenerator::Universal14 | WordGenerator::Spiked => &[1, 2, 3, 4],
            WordGenerator::Universal45 => &[4, 5],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WordGenerator::Universal14 => "universal-14",
            WordGenerator::Universal45 => "universal-45",
            WordGenerator::Spiked => "spiked",
        }
    }

    /// `|v_n|`.
    pub fn block_len(self, n: u32) -> u128 {
        let s = self.alphabet().len() as u128;
        let n128 = n as u128;
        match self {
            WordGenerator::Spiked => s.pow(n) * n128 * (n128 + 1),
            _ => s.pow(n) * n128,
        }
    }

    /// `|u_n|`.
    pub fn prefix_len_through(self, n: u32) -> u128 {
        (1..=n).map(|k| self.block_len(k)).sum()
    }

    /// Letter at 0-based position `i` (the partial quotient `a_{i+1}`).
    pub fn letter(self, i: u64) -> i64 {
        let alphabet = self.alphabet();
        let s = alphabet.len() as u128;
        let mut j = i as u128;
        let mut n = 1u32;
        while j >= self.block_len(n) {
            j -= self.block_len(n);
            n += 1;
        }
        let n128 = n as u128;
        // Digit `t` (most significant first) of word number `w` in base s.
        let word_letter = |w: u128, t: u128| alphabet[((w / s.pow(n - 1 - t as u32)) % s) as usize];
        match self {
            WordGenerator::Spiked => {
                let copy_len = n128 * (n128 + 1);
                let (w, r) = (j / copy_len, j % copy_len);
                let (h, t) = (r / (n128 + 1) + 1, r % (n128 + 1));
                if t < n128 {
                    word_letter(w, t)
                } else {
                    h as i64
                }
            }
            _ => word_letter(j / n128, j % n128),
        }
    }

    /// The first `len` letters.
    pub fn prefix(self, len: usize, exec: Exec) -> Vec<i64> {
        exec.map_range(0..len, |i| self.letter(i as u64))
    }
}

pub fn universal_word_14(prefix_len: usize) -> Vec<i64> {
    WordGenerator::Universal14.prefix(prefix_len, Exec::Sequential)
}

pub fn universal_word_45(prefix_len: usize) -> Vec<i64> {
    WordGenerator::Universal45.prefix(prefix_len, Exec::Sequential)
}

pub fn spiked_word(prefix_len: usize) -> Vec<i64> {
    WordGenerator::Spiked.prefix(prefix_len, Exec::Sequential)
}

#[derive(Clone, Copy, Debug)]
struct WordDigits(WordGenerator);

impl DigitSource for WordDigits {
    fn digit(&self, i: usize) -> i64 {
        if i == 0 {
            0
        } else {
            self.0.letter(i as u64 - 1)
        }
    }

    fn label(&self) -> String {
        format!("word:{}", self.0.name())
    }
}

/// `α = [0; a1, a2, …]` built from the word's letters.
pub fn word_to_alpha(word: WordGenerator) -> ContinuedFraction {
    ContinuedFraction::stream(Arc::new(WordDigits(word)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OccurrenceReport {
    pub pattern: Vec<i64>,
    pub scan_len: usize,
    /// 1-based starting positions `n` with `a_n … a_{n+k−1} = pattern`.
    pub positions: Vec<usize>,
    pub even_count: usize,
    pub odd_count: usize,
    pub min_count: usize,
    /// Both parities reached `min_count`.
    pub satisfied: bool,
}

/// All occurrences of `pattern` inside the first `scan_len` letters.
pub fn occurrence_check(
    word: WordGenerator,
    pattern: &[i64],
    scan_len: usize,
    min_count: usize,
    exec: Exec,
) -> OccurrenceReport {
    let text = word.prefix(scan_len, exec);
    let positions: Vec<usize> = if pattern.is_empty() || pattern.len() > text.len() {
        vec![]
    } else {
        text.windows(pattern.len())
            .enumerate()
            .filter(|(_, w)| *w == pattern)
            .map(|(i, _)| i + 1)
            .collect()
    };
    let even_count = positions.iter().filter(|&&p| p % 2 == 0).count();
    let odd_count = positions.len() - even_count;
    OccurrenceReport {
        pattern: pattern.to_vec(),
        scan_len,
        positions,
        even_count,
        odd_count,
        min_count,
        satisfied: even_count >= min_count && odd_count >= min_count,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum HitKind {
    Convergent,
    /// Secondary convergent `(a p_N + p_{N−1})/(a q_N + q_{N−1})`.
    Secondary {
        a: i64,
    },
}

/// Closest candidate found for one target.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TargetHit {
    pub target: f64,
    /// Term index `N`.
    pub index: usize,
    pub kind: HitKind,
    /// The pair `(k, m)` is scaled by `z`, multiplying the value by `z²`.
    pub z: u32,
    pub value: Interval,
    /// Largest distance from the enclosure to the target.
    pub distance: f64,
    pub within_tol: bool,
}

/// Options for [`target_hit_scan`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScanOptions {
    pub depth: usize,
    pub tol: f64,
    pub include_secondary: bool,
    /// Largest integer multiplier `z` applied to candidate pairs.
    pub z_max: u32,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            depth: 100_000,
            tol: 1e-3,
            include_secondary: true,
            z_max: 3,
        }
    }
}

const SCAN_CHUNK: usize = 2048;

/// For each target, the candidate value `m²(k/m − α)` closest to it among
/// convergents `N < depth`, optionally their secondary convergents, and
/// integer multiples `(zk, zm)` of both. Reports distances only.
pub fn target_hit_scan(
    alpha: &ContinuedFraction,
    targets: &[f64],
    opts: ScanOptions,
    exec: Exec,
) -> Vec<TargetHit> {
    let ratios = reversal_enclosures(alpha, opts.depth);
    let chunks = opts.depth.div_ceil(SCAN_CHUNK);
    let per_chunk: Vec<Vec<Option<TargetHit>>> = exec.map_range(0..chunks, |c| {
        let mut best: Vec<Option<TargetHit>> = vec![None; targets.len()];
        let mut offer = |value: Interval, index: usize, kind: HitKind, z: u32| {
            for (slot, &x) in best.iter_mut().zip(targets) {
                let distance = value.max_distance(x);
                if slot.as_ref().is_none_or(|b| distance < b.distance) {
                    *slot = Some(TargetHit {
                        target: x,
                        index,
                        kind,
                        z,
                        value,
                        distance,
                        within_tol: distance < opts.tol,
                    });
                }
            }
        };
        let start = c * SCAN_CHUNK;
        let end = (start + SCAN_CHUNK).min(opts.depth);
        for (n, &r) in (start..end).zip(&ratios[start..end]) {
            let tail = alpha.tail_interval(n + 1);
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            let t = tail.add(r).recip().scale(sign);
            let mut cands = vec![(t, HitKind::Convergent)];
            if opts.include_secondary {
                let next = alpha.digit_f64(n + 1).expect("infinite") as i64;
                for a in 1..next {
                    let af = a as f64;
                    let v = r
                        .add_f64(af)
                        .mul(tail.add_f64(-af))
                        .div(tail.add(r))
                        .scale(-sign);
                    cands.push((v, HitKind::Secondary { a }));
                }
            }
            for (v, kind) in cands {
                for z in 1..=opts.z_max.max(1) {
                    offer(v.scale((z * z) as f64), n, kind, z);
                }
            }
        }
        best
    });
    (0..targets.len())
        .map(|i| {
            per_chunk
                .iter()
                .filter_map(|b| b[i].clone())
                .min_by(|a, b| {
                    a.distance
                        .total_cmp(&b.distance)
                        .then(a.index.cmp(&b.index))
                })
                .expect("depth ≥ 1")
        })
        .collect()
}
