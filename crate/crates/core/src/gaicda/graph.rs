use std::collections::BTreeMap;

use super::{euclidean, NormalizedFeatures};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphParams {
    /// Largest ordering distance an edge may span (T).
    pub threshold: usize,
    /// Nearest neighbors each node links to inside its window.
    pub neighbors: usize,
}

impl Default for GraphParams {
    fn default() -> Self {
        GraphParams {
            threshold: 5,
            neighbors: 3,
        }
    }
}

impl GraphParams {
    pub fn validate(&self) -> Result<()> {
        if self.threshold == 0 {
            return Err(Error::InvalidParameter(
                "threshold T must be at least 1".into(),
            ));
        }
        if self.neighbors == 0 {
            return Err(Error::InvalidParameter(
                "neighbor count must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Undirected weighted edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

#[derive(Debug, Clone)]
pub struct DocumentGraph {
    doc_ids: Vec<String>,
    /// `ordering[pos]` is the node at that position.
    ordering: Vec<usize>,
    position: Vec<usize>,
    threshold: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl DocumentGraph {
    /// Builds a graph from explicit edges; every node gets its own index as
    /// position. Used for hand-made graphs.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(a, b, w) in edges {
            if a == b || a >= n || b >= n {
                return Err(Error::InvalidParameter(format!("bad edge ({a}, {b})")));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "edge weight {w} must be positive"
                )));
            }
            map.insert((a.min(b), a.max(b)), w);
        }
        Ok(Self::assemble(
            (0..n).map(|i| i.to_string()).collect(),
            (0..n).collect(),
            n.max(1),
            map,
        ))
    }

    fn assemble(
        doc_ids: Vec<String>,
        ordering: Vec<usize>,
        threshold: usize,
        edges: BTreeMap<(usize, usize), f64>,
    ) -> Self {
        let n = doc_ids.len();
        let mut position = vec![0; n];
        for (pos, &node) in ordering.iter().enumerate() {
            position[node] = pos;
        }
        let mut adjacency = vec![Vec::new(); n];
        let edges: Vec<Edge> = edges
            .into_iter()
            .map(|((u, v), weight)| {
                adjacency[u].push((v, weight));
                adjacency[v].push((u, weight));
                Edge { u, v, weight }
            })
            .collect();
        for list in &mut adjacency {
            list.sort_by_key(|&(v, _)| v);
        }
        DocumentGraph {
            doc_ids,
            ordering,
            position,
            threshold,
            edges,
            adjacency,
        }
    }

    pub fn node_count(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    pub fn position(&self, node: usize) -> usize {
        self.position[node]
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `node` with edge weights, sorted by neighbor index.
    pub fn neighbors(&self, node: usize) -> &[(usize, f64)] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        self.adjacency[u]
            .iter()
            .find(|&&(x, _)| x == v)
            .map(|&(_, w)| w)
    }
}

/// Links each document to its nearest neighbors among those within
/// `threshold` positions of it in the feature ordering.
///
/// Nodes are ordered lexicographically by their normalized feature rows
/// (ties by row index, which follows docId order). Edge weight is `exp(-d^2 / (2 sigma^2))` where
/// `sigma` is the mean pairwise distance of the batch.
pub fn build_graph(features: &NormalizedFeatures, params: &GraphParams) -> Result<DocumentGraph> {
    params.validate()?;
    let n = features.len();
    if n < 2 {
        return Err(Error::TooFewDocuments { needed: 2, got: n });
    }
    let rows = &features.rows;

    let mut ordering: Vec<usize> = (0..n).collect();
    ordering.sort_by(|&a, &b| {
        rows[a]
            .iter()
            .zip(&rows[b])
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut position = vec![0; n];
    for (pos, &node) in ordering.iter().enumerate() {
        position[node] = pos;
    }

    let mut dist = vec![vec![0.0; n]; n];
    let mut total = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let d = euclidean(&rows[i], &rows[j]);
            dist[i][j] = d;
            dist[j][i] = d;
            total += d;
        }
    }
    let sigma = total / (n * (n - 1) / 2) as f64;
    let weight = |d: f64| {
        if sigma > 0.0 {
            (-d * d / (2.0 * sigma * sigma))
                .exp()
                .max(f64::MIN_POSITIVE)
        } else {
            1.0
        }
    };

    let mut edges = BTreeMap::new();
    for u in 0..n {
        let pos = position[u];
        let lo = pos.saturating_sub(params.threshold);
        let hi = (pos + params.threshold).min(n - 1);
        let mut window: Vec<usize> = ordering[lo..=hi]
            .iter()
            .copied()
            .filter(|&v| v != u)
            .collect();
        window.sort_by(|&a, &b| dist[u][a].total_cmp(&dist[u][b]).then(a.cmp(&b)));
        for &v in window.iter().take(params.neighbors) {
            edges.insert((u.min(v), u.max(v)), weight(dist[u][v]));
        }
    }

    Ok(DocumentGraph::assemble(
        features.doc_ids.clone(),
        ordering,
        params.threshold,
        edges,
    ))
}
