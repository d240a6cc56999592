use super::{euclidean, NormalizedFeatures, Partition};
use crate::error::{Error, Result};

fn centroid(rows: &[Vec<f64>], members: &[usize]) -> Vec<f64> {
    let dim = rows[members[0]].len();
    let mut c = vec![0.0; dim];
    for &m in members {
        for (acc, x) in c.iter_mut().zip(&rows[m]) {
            *acc += x;
        }
    }
    c.iter_mut().for_each(|x| *x /= members.len() as f64);
    c
}

/// Merges the two clusters with the closest centroids until `target`
/// clusters remain. Ties go to the lowest label pair.
pub fn refine(
    partition: &Partition,
    features: &NormalizedFeatures,
    target: usize,
) -> Result<Partition> {
    if partition.k() < target {
        return Err(Error::TooFewClusters {
            k: partition.k(),
            target,
        });
    }
    if target == 0 {
        return Err(Error::InvalidParameter(
            "target clusters must be at least 1".into(),
        ));
    }
    if features.len() != partition.len() {
        return Err(Error::InvalidParameter(format!(
            "{} feature rows for {} documents",
            features.len(),
            partition.len()
        )));
    }

    let mut clusters = partition.clusters();
    let mut centroids: Vec<Vec<f64>> = clusters
        .iter()
        .map(|m| centroid(&features.rows, m))
        .collect();
    let merges = clusters.len() - target;
    while clusters.len() > target {
        let mut best = (f64::INFINITY, 0, 0);
        for a in 0..clusters.len() {
            for b in a + 1..clusters.len() {
                let d = euclidean(&centroids[a], &centroids[b]);
                if d < best.0 {
                    best = (d, a, b);
                }
            }
        }
        let (_, a, b) = best;
        let absorbed = clusters.remove(b);
        centroids.remove(b);
        clusters[a].extend(absorbed);
        centroids[a] = centroid(&features.rows, &clusters[a]);
    }

    let mut groups = vec![0; partition.len()];
    for (label, members) in clusters.iter().enumerate() {
        for &m in members {
            groups[m] = label;
        }
    }
    let mut provenance = partition.provenance.clone();
    provenance.params.remove("stage");
    provenance
        .params
        .insert("refine_merges".into(), merges.to_string());
    Partition::from_groups(partition.doc_ids().to_vec(), &groups, provenance)
}
