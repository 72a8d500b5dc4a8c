use serde::Serialize;

/// Default clustering radius for finite-depth accumulation detection.
pub const DEFAULT_CLUSTER_RADIUS: f64 = 1e-6;

/// A group of term values within `radius` of their neighbours.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cluster {
    pub center: f64,
    pub lo: f64,
    pub hi: f64,
    /// Term indices in increasing order.
    pub indices: Vec<usize>,
}

/// Groups `(index, value)` pairs whose sorted values are chained by gaps of
/// at most `radius`, keeping groups with at least `min_hits` distinct
/// indices. Identical values are counted once, so a rational `α` whose
/// terms repeat does not manufacture clusters.
pub fn detect_clusters(values: &[(usize, f64)], radius: f64, min_hits: usize) -> Vec<Cluster> {
    let mut sorted: Vec<(usize, f64)> = values
        .iter()
        .copied()
        .filter(|(_, v)| v.is_finite())
        .collect();
    sorted.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut out = Vec::new();
    let mut group: Vec<(usize, f64)> = Vec::new();
    let mut flush = |group: &mut Vec<(usize, f64)>| {
        let mut distinct: Vec<f64> = group.iter().map(|g| g.1).collect();
        distinct.dedup();
        if distinct.len() >= min_hits {
            let mut indices: Vec<usize> = group.iter().map(|g| g.0).collect();
            indices.sort_unstable();
            let center = group.iter().map(|g| g.1).sum::<f64>() / group.len() as f64;
            out.push(Cluster {
                center,
                lo: group[0].1,
                hi: group[group.len() - 1].1,
                indices,
            });
        }
        group.clear();
    };
    for v in sorted {
        if group.last().is_some_and(|last| v.1 - last.1 > radius) {
            flush(&mut group);
        }
        group.push(v);
    }
    flush(&mut group);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_groups_and_drops_singles() {
        let vals = [
            (1, 0.5),
            (2, 0.1),
            (3, 0.5000001),
            (4, 0.9),
            (5, 0.4999995),
            (7, 0.3),
        ];
        let c = detect_clusters(&vals, 1e-6, 3);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].indices, vec![1, 3, 5]);
        assert!((c[0].center - 0.5).abs() < 1e-6);
    }

    #[test]
    fn repeated_values_count_once() {
        let vals = [(1, 0.25), (2, 0.25), (3, 0.25), (4, 0.25)];
        assert!(detect_clusters(&vals, 1e-6, 3).is_empty());
    }
}
