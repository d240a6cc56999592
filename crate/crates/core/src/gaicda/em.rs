use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Method, NormalizedFeatures, Partition, Provenance};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmOptions {
    pub max_iterations: usize,
    /// Stop once the log-likelihood improves by less than this.
    pub tolerance: f64,
    pub variance_floor: f64,
}

impl Default for EmOptions {
    fn default() -> Self {
        EmOptions {
            max_iterations: 200,
            tolerance: 1e-8,
            variance_floor: 1e-6,
        }
    }
}

/// A fitted diagonal-covariance Gaussian mixture.
#[derive(Debug, Clone)]
pub struct GmmFit {
    pub weights: Vec<f64>,
    pub means: Vec<Vec<f64>>,
    pub variances: Vec<Vec<f64>>,
    /// Log-likelihood evaluated at the start of each iteration.
    pub log_likelihoods: Vec<f64>,
    /// Component with the highest responsibility for each point.
    pub assignment: Vec<usize>,
    pub converged: bool,
}

const LN_2PI: f64 = 1.837_877_066_409_345_3;

fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + xs.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// Runs EM from `k` distinct data points chosen by `seed`; variances start
/// at the per-dimension data variance.
pub fn fit_gmm(rows: &[Vec<f64>], k: usize, seed: u64, options: &EmOptions) -> Result<GmmFit> {
    let n = rows.len();
    if k == 0 {
        return Err(Error::InvalidParameter(
            "need at least one component".into(),
        ));
    }
    if n < k {
        return Err(Error::TooFewDocuments { needed: k, got: n });
    }
    let dim = rows[0].len();
    let floor = options.variance_floor;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = rand::seq::index::sample(&mut rng, n, k).into_vec();
    picks.sort_unstable();
    let mut means: Vec<Vec<f64>> = picks.iter().map(|&i| rows[i].clone()).collect();

    let global_var: Vec<f64> = (0..dim)
        .map(|d| {
            let mean = rows.iter().map(|r| r[d]).sum::<f64>() / n as f64;
            let var = rows.iter().map(|r| (r[d] - mean).powi(2)).sum::<f64>() / n as f64;
            var.max(floor)
        })
        .collect();
    let mut variances = vec![global_var; k];
    let mut weights = vec![1.0 / k as f64; k];

    let mut resp = vec![vec![0.0; k]; n];
    let mut log_likelihoods = Vec::new();
    let mut converged = false;
    let mut scratch = vec![0.0; k];

    for _ in 0..options.max_iterations {
        // E-step
        let mut ll = 0.0;
        for (x, r) in rows.iter().zip(resp.iter_mut()) {
            for c in 0..k {
                let mut lp = weights[c].ln();
                for d in 0..dim {
                    let v = variances[c][d];
                    lp -= 0.5 * (LN_2PI + v.ln() + (x[d] - means[c][d]).powi(2) / v);
                }
                scratch[c] = lp;
            }
            let norm = log_sum_exp(&scratch);
            ll += norm;
            for c in 0..k {
                r[c] = (scratch[c] - norm).exp();
            }
        }
        let improved = log_likelihoods.last().map(|&prev: &f64| ll - prev);
        log_likelihoods.push(ll);
        if matches!(improved, Some(delta) if delta < options.tolerance) {
            converged = true;
            break;
        }

        // M-step
        for c in 0..k {
            let nk: f64 = resp.iter().map(|r| r[c]).sum();
            weights[c] = nk / n as f64;
            if nk <= f64::MIN_POSITIVE {
                continue;
            }
            for d in 0..dim {
                let mean = resp.iter().zip(rows).map(|(r, x)| r[c] * x[d]).sum::<f64>() / nk;
                let var = resp
                    .iter()
                    .zip(rows)
                    .map(|(r, x)| r[c] * (x[d] - mean).powi(2))
                    .sum::<f64>()
                    / nk;
                means[c][d] = mean;
                variances[c][d] = var.max(floor);
            }
        }
    }

    let assignment = resp
        .iter()
        .map(|r| {
            let mut best = 0;
            for c in 1..k {
                if r[c] > r[best] {
                    best = c;
                }
            }
            best
        })
        .collect();

    Ok(GmmFit {
        weights,
        means,
        variances,
        log_likelihoods,
        assignment,
        converged,
    })
}

/// Hard clustering by a diagonal Gaussian mixture with `target` components.
/// Components that end up empty are dropped, so `k` may fall below `target`.
pub fn cluster_em(features: &NormalizedFeatures, target: usize, seed: u64) -> Result<Partition> {
    let options = EmOptions::default();
    let fit = fit_gmm(&features.rows, target, seed, &options)?;
    let provenance = Provenance::new(Method::Em, seed)
        .with("covariance", "diagonal")
        .with("components", target)
        .with("max_iterations", options.max_iterations)
        .with("tolerance", options.tolerance)
        .with("variance_floor", options.variance_floor)
        .with("iterations", fit.log_likelihoods.len())
        .with("converged", fit.converged);
    Partition::from_groups(features.doc_ids.clone(), &fit.assignment, provenance)
}

#[cfg(test)]
mod tests {
    use rand::Rng;
    use rand_distr::{Distribution, Normal};

    use super::*;

    fn blobs(seed: u64) -> NormalizedFeatures {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let noise = Normal::new(0.0, 0.1).unwrap();
        let mut rows = Vec::new();
        for i in 0..20 {
            let c = if i < 10 { -2.0 } else { 2.0 };
            rows.push(vec![c + noise.sample(&mut rng), c + noise.sample(&mut rng)]);
        }
        NormalizedFeatures::from_rows((0..20).map(|i| format!("p{i:02}")).collect(), rows)
    }

    #[test]
    fn separated_blobs_recovered() {
        let data = blobs(3);
        let truth: Vec<usize> = (0..20).map(|i| usize::from(i >= 10)).collect();
        let hits = (0..100)
            .filter(|&seed| cluster_em(&data, 2, seed).unwrap().labels() == truth.as_slice())
            .count();
        assert!(hits >= 95, "{hits}/100");
    }

    #[test]
    fn one_component_is_one_cluster() {
        let data = blobs(1);
        for seed in 0..5 {
            assert_eq!(cluster_em(&data, 1, seed).unwrap().k(), 1);
        }
    }

    #[test]
    fn log_likelihood_never_decreases() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for seed in 0..20 {
            let rows: Vec<Vec<f64>> = (0..30)
                .map(|_| vec![rng.random::<f64>(), rng.random::<f64>() * 3.0])
                .collect();
            let fit = fit_gmm(&rows, 3, seed, &EmOptions::default()).unwrap();
            for w in fit.log_likelihoods.windows(2) {
                assert!(
                    w[1] >= w[0] - 1e-9 * w[0].abs().max(1.0),
                    "{} -> {}",
                    w[0],
                    w[1]
                );
            }
        }
    }

    #[test]
    fn too_few_points() {
        let f = NormalizedFeatures::from_rows(vec!["a".into()], vec![vec![0.0]]);
        assert!(matches!(
            cluster_em(&f, 2, 0),
            Err(Error::TooFewDocuments { .. })
        ));
    }

    #[test]
    fn identical_points_hit_floor_without_nan() {
        let f = NormalizedFeatures::from_rows(
            (0..4).map(|i| i.to_string()).collect(),
            vec![vec![1.0, 1.0]; 4],
        );
        let fit = fit_gmm(&f.rows, 2, 0, &EmOptions::default()).unwrap();
        assert!(fit.log_likelihoods.iter().all(|x| x.is_finite()));
        assert!(fit.variances.iter().flatten().all(|&v| v >= 1e-6));
    }
}
