//! Locus-based genetic partitioning.
//!
//! A chromosome holds one gene per node. Gene `i` names either a graph
//! neighbor of `i` or `i` itself; decoding takes the connected components of
//! the graph formed by the links `i -- gene[i]`. Uniform crossover and
//! neighbor-resampling mutation therefore never produce an invalid
//! chromosome. Fitness is weighted modularity; partitions with fewer
//! clusters than the target are ranked below every partition that has
//! enough, because the refinement step can only merge.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::graph::DocumentGraph;
use super::{canonical_labels, Method, Partition, Provenance};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GaParams {
    pub population_size: usize,
    pub generations: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub elitism_fraction: f64,
    pub target_clusters: usize,
    pub seed: u64,
}

impl Default for GaParams {
    fn default() -> Self {
        GaParams {
            population_size: 100,
            generations: 100,
            crossover_rate: 0.8,
            mutation_rate: 0.2,
            elitism_fraction: 0.1,
            target_clusters: 3,
            seed: 42,
        }
    }
}

impl GaParams {
    pub fn validate(&self) -> Result<()> {
        let prob = |name: &str, p: f64| {
            if (0.0..=1.0).contains(&p) {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} must be in [0, 1], got {p}"
                )))
            }
        };
        prob("crossover rate", self.crossover_rate)?;
        prob("mutation rate", self.mutation_rate)?;
        prob("elitism fraction", self.elitism_fraction)?;
        if self.population_size < 2 {
            return Err(Error::InvalidParameter(
                "population size must be at least 2".into(),
            ));
        }
        if self.generations == 0 {
            return Err(Error::InvalidParameter(
                "generations must be at least 1".into(),
            ));
        }
        if self.target_clusters == 0 {
            return Err(Error::InvalidParameter(
                "target clusters must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub(crate) fn provenance(&self) -> Provenance {
        Provenance::new(Method::Gaicda, self.seed)
            .with("population_size", self.population_size)
            .with("generations", self.generations)
            .with("crossover_rate", self.crossover_rate)
            .with("mutation_rate", self.mutation_rate)
            .with("elitism_fraction", self.elitism_fraction)
            .with("target_clusters", self.target_clusters)
    }
}

/// Weighted modularity of `labels` on `graph`. Zero for an edgeless graph.
pub fn modularity(graph: &DocumentGraph, labels: &[usize]) -> f64 {
    let total: f64 = graph.edges().iter().map(|e| e.weight).sum();
    if total <= 0.0 {
        return 0.0;
    }
    let k = labels.iter().max().map_or(0, |&m| m + 1);
    let mut inside = vec![0.0; k];
    let mut strength = vec![0.0; k];
    for e in graph.edges() {
        strength[labels[e.u]] += e.weight;
        strength[labels[e.v]] += e.weight;
        if labels[e.u] == labels[e.v] {
            inside[labels[e.u]] += e.weight;
        }
    }
    inside
        .iter()
        .zip(&strength)
        .map(|(w_in, s)| w_in / total - (s / (2.0 * total)).powi(2))
        .sum()
}

/// Connected components of the links `i -- genes[i]`, labelled by first
/// appearance.
pub fn decode_locus(genes: &[usize]) -> Vec<usize> {
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut parent: Vec<usize> = (0..genes.len()).collect();
    for (i, &g) in genes.iter().enumerate() {
        let (a, b) = (find(&mut parent, i), find(&mut parent, g));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let roots: Vec<usize> = (0..genes.len()).map(|i| find(&mut parent, i)).collect();
    canonical_labels(&roots)
}

struct Scored {
    genes: Vec<usize>,
    labels: Vec<usize>,
    fitness: f64,
}

const INFEASIBLE_PENALTY: f64 = 2.0;

fn evaluate(graph: &DocumentGraph, genes: Vec<usize>, target: usize) -> Scored {
    let labels = decode_locus(&genes);
    let k = labels.iter().max().map_or(0, |&m| m + 1);
    let q = modularity(graph, &labels);
    // modularity lies in [-1/2, 1], so the penalty separates the two tiers
    let fitness = if k >= target {
        q
    } else {
        q - INFEASIBLE_PENALTY
    };
    Scored {
        genes,
        labels,
        fitness,
    }
}

/// Partitions the graph; reproducible for a fixed `params.seed`.
pub fn cluster_ga(graph: &DocumentGraph, params: &GaParams) -> Result<Partition> {
    params.validate()?;
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::Empty("graph has no nodes"));
    }
    let alleles: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut a: Vec<usize> = graph.neighbors(i).iter().map(|&(v, _)| v).collect();
            a.push(i);
            a
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let random_gene =
        |rng: &mut ChaCha8Rng, i: usize| *alleles[i].choose(rng).expect("allele set contains self");

    let mut population: Vec<Scored> = (0..params.population_size)
        .map(|_| {
            let genes = (0..n).map(|i| random_gene(&mut rng, i)).collect();
            evaluate(graph, genes, params.target_clusters)
        })
        .collect();

    let elite = ((params.elitism_fraction * params.population_size as f64).ceil() as usize)
        .min(params.population_size);
    let mutable: Vec<usize> = (0..n).filter(|&i| alleles[i].len() > 1).collect();
    let mut best = best_of(&population);
    let mut best_genes_labels = (population[best].labels.clone(), population[best].fitness);

    for _ in 0..params.generations {
        let mut order: Vec<usize> = (0..population.len()).collect();
        order.sort_by(|&a, &b| {
            population[b]
                .fitness
                .total_cmp(&population[a].fitness)
                .then(a.cmp(&b))
        });

        let mut next: Vec<Scored> = order[..elite]
            .iter()
            .map(|&i| Scored {
                genes: population[i].genes.clone(),
                labels: population[i].labels.clone(),
                fitness: population[i].fitness,
            })
            .collect();

        while next.len() < params.population_size {
            let a = tournament(&population, &mut rng);
            let b = tournament(&population, &mut rng);
            let mut child = if rng.random::<f64>() < params.crossover_rate {
                population[a]
                    .genes
                    .iter()
                    .zip(&population[b].genes)
                    .map(|(&x, &y)| if rng.random::<bool>() { x } else { y })
                    .collect()
            } else {
                population[a].genes.clone()
            };
            if !mutable.is_empty() && rng.random::<f64>() < params.mutation_rate {
                let i = *mutable.choose(&mut rng).expect("non-empty");
                child[i] = random_gene(&mut rng, i);
            }
            next.push(evaluate(graph, child, params.target_clusters));
        }

        population = next;
        best = best_of(&population);
        if population[best].fitness > best_genes_labels.1 {
            best_genes_labels = (population[best].labels.clone(), population[best].fitness);
        }
    }

    let (labels, fitness) = best_genes_labels;
    let q = if fitness < -1.0 {
        fitness + INFEASIBLE_PENALTY
    } else {
        fitness
    };
    let provenance = params
        .provenance()
        .with("stage", "ga")
        .with("modularity", q);
    Partition::from_groups(graph.doc_ids().to_vec(), &labels, provenance)
}

fn best_of(population: &[Scored]) -> usize {
    let mut best = 0;
    for (i, s) in population.iter().enumerate() {
        if s.fitness > population[best].fitness {
            best = i;
        }
    }
    best
}

fn tournament(population: &[Scored], rng: &mut ChaCha8Rng) -> usize {
    let a = rng.random_range(0..population.len());
    let b = rng.random_range(0..population.len());
    if population[b].fitness > population[a].fitness
        || (population[b].fitness == population[a].fitness && b < a)
    {
        b
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cliques() -> DocumentGraph {
        let mut edges = Vec::new();
        for base in [0, 4] {
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.push((base + i, base + j, 1.0));
                }
            }
        }
        DocumentGraph::from_edges(8, &edges).unwrap()
    }

    #[test]
    fn decode_components() {
        assert_eq!(decode_locus(&[1, 0, 2, 2]), [0, 0, 1, 1]);
        assert_eq!(decode_locus(&[0, 1, 2]), [0, 1, 2]);
        assert_eq!(decode_locus(&[2, 2, 1, 3]), [0, 0, 0, 1]);
    }

    #[test]
    fn modularity_of_planted_cliques() {
        let g = two_cliques();
        let planted = [0, 0, 0, 0, 1, 1, 1, 1];
        assert!((modularity(&g, &planted) - 0.5).abs() < 1e-15);
        assert_eq!(modularity(&g, &[0; 8]), 0.0);
    }

    #[test]
    fn recovers_two_cliques() {
        let g = two_cliques();
        for seed in 0..10 {
            let params = GaParams {
                target_clusters: 2,
                seed,
                ..GaParams::default()
            };
            let p = cluster_ga(&g, &params).unwrap();
            assert_eq!(p.labels(), [0, 0, 0, 0, 1, 1, 1, 1], "seed {seed}");
        }
    }

    #[test]
    fn single_edge_merges() {
        let g = DocumentGraph::from_edges(2, &[(0, 1, 1.0)]).unwrap();
        let params = GaParams {
            target_clusters: 1,
            ..GaParams::default()
        };
        let p = cluster_ga(&g, &params).unwrap();
        assert_eq!(p.k(), 1);
    }

    #[test]
    fn deterministic_for_seed() {
        let g = two_cliques();
        let params = GaParams {
            target_clusters: 3,
            seed: 7,
            ..GaParams::default()
        };
        let a = cluster_ga(&g, &params).unwrap();
        let b = cluster_ga(&g, &params).unwrap();
        assert_eq!(a, b);
        assert!(a.k() >= 3);
    }

    #[test]
    fn rejects_bad_params() {
        let g = two_cliques();
        let bad = GaParams {
            mutation_rate: 1.5,
            ..GaParams::default()
        };
        assert!(cluster_ga(&g, &bad).is_err());
        let bad = GaParams {
            population_size: 1,
            ..GaParams::default()
        };
        assert!(cluster_ga(&g, &bad).is_err());
        let empty = DocumentGraph::from_edges(0, &[]).unwrap();
        assert!(cluster_ga(&empty, &GaParams::default()).is_err());
    }
}
