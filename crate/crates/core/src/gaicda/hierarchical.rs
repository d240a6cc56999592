use super::{euclidean, Method, NormalizedFeatures, Partition, Provenance};
use crate::error::{Error, Result};

/// Agglomerative clustering with average linkage on Euclidean distance, cut
/// at `target` clusters.
///
/// Fully deterministic; `seed` is only recorded. Among equally distant
/// pairs the one with the lowest member indices merges first.
pub fn cluster_hierarchical(
    features: &NormalizedFeatures,
    target: usize,
    seed: u64,
) -> Result<Partition> {
    let n = features.len();
    if target == 0 {
        return Err(Error::InvalidParameter(
            "target clusters must be at least 1".into(),
        ));
    }
    if n < target {
        return Err(Error::TooFewDocuments {
            needed: target,
            got: n,
        });
    }

    // Cluster slots are keyed by their smallest member; inactive slots are None.
    let mut size: Vec<Option<usize>> = vec![Some(1); n];
    let mut dist: Vec<Vec<f64>> = features
        .rows
        .iter()
        .map(|a| features.rows.iter().map(|b| euclidean(a, b)).collect())
        .collect();
    let mut owner: Vec<usize> = (0..n).collect();

    for _ in 0..n - target {
        let mut best = (f64::INFINITY, 0, 0);
        for a in 0..n {
            if size[a].is_none() {
                continue;
            }
            for b in a + 1..n {
                if size[b].is_some() && dist[a][b] < best.0 {
                    best = (dist[a][b], a, b);
                }
            }
        }
        let (_, a, b) = best;
        let (sa, sb) = (size[a].unwrap() as f64, size[b].unwrap() as f64);
        for c in 0..n {
            if c != a && c != b && size[c].is_some() {
                let d = (sa * dist[a][c] + sb * dist[b][c]) / (sa + sb);
                dist[a][c] = d;
                dist[c][a] = d;
            }
        }
        size[a] = Some(size[a].unwrap() + size[b].unwrap());
        size[b] = None;
        owner.iter_mut().filter(|o| **o == b).for_each(|o| *o = a);
    }

    let provenance = Provenance::new(Method::Hierarchical, seed)
        .with("linkage", "average")
        .with("metric", "euclidean")
        .with("target_clusters", target);
    Partition::from_groups(features.doc_ids.clone(), &owner, provenance)
}
