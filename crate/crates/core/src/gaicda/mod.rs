//! Graph-based genetic clustering of documents, plus two baselines.
//!
//! [`classify_gaicda`] runs the whole chain:
//! standardize the selected features, build a similarity graph whose edges
//! only join documents that are close in a fixed node ordering, partition the
//! graph with a locus-encoded genetic algorithm maximizing weighted
//! modularity, and finally merge the nearest clusters until the target count
//! is reached.
//!
//! The node ordering (lexicographic on the standardized features), the
//! Gaussian similarity kernel and the GA operators are reconstructions; all
//! of them are exposed through [`GraphParams`] and [`GaParams`].

mod em;
mod ga;
mod graph;
mod hierarchical;
mod refine;

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::texture::{Feature, FeatureVector};

pub use em::{cluster_em, fit_gmm, EmOptions, GmmFit};
pub use ga::{cluster_ga, decode_locus, modularity, GaParams};
pub use graph::{build_graph, DocumentGraph, Edge, GraphParams};
pub use hierarchical::cluster_hierarchical;
pub use refine::refine;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Gaicda,
    Hierarchical,
    Em,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Gaicda => "gaicda",
            Method::Hierarchical => "hierarchical",
            Method::Em => "em",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Method::Gaicda, Method::Hierarchical, Method::Em]
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method {s:?}")))
    }
}

/// Which classifier produced a partition, and with what settings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub method: Method,
    pub seed: u64,
    pub params: BTreeMap<String, String>,
}

impl Provenance {
    pub fn new(method: Method, seed: u64) -> Self {
        Provenance {
            method,
            seed,
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

/// Assignment of documents to clusters `0..k`.
///
/// Labels are numbered in order of first appearance, so two partitions that
/// group the same documents compare equal regardless of how they were built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    doc_ids: Vec<String>,
    labels: Vec<usize>,
    k: usize,
    pub provenance: Provenance,
}

impl Partition {
    /// Builds a partition from arbitrary per-document group keys.
    pub fn from_groups(
        doc_ids: Vec<String>,
        groups: &[usize],
        provenance: Provenance,
    ) -> Result<Self> {
        if doc_ids.len() != groups.len() {
            return Err(Error::InvalidParameter(format!(
                "{} documents but {} labels",
                doc_ids.len(),
                groups.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = doc_ids.iter().find(|id| !seen.insert(id.as_str())) {
            return Err(Error::DuplicateDocument(dup.clone()));
        }
        let labels = canonical_labels(groups);
        let k = labels.iter().max().map_or(0, |&m| m + 1);
        Ok(Partition {
            doc_ids,
            labels,
            k,
            provenance,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doc_ids.is_empty()
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label_of(&self, doc_id: &str) -> Option<usize> {
        self.doc_ids
            .iter()
            .position(|d| d == doc_id)
            .map(|i| self.labels[i])
    }

    pub fn assignment(&self) -> impl Iterator<Item = (&str, usize)> {
        self.doc_ids
            .iter()
            .map(String::as_str)
            .zip(self.labels.iter().copied())
    }

    /// Member indices of each cluster.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l].push(i);
        }
        out
    }

    /// Writes `docId,cluster,method,seed` rows with a header.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "docId,cluster,method,seed")?;
        for (doc, label) in self.assignment() {
            writeln!(
                out,
                "{},{},{},{}",
                doc, label, self.provenance.method, self.provenance.seed
            )?;
        }
        Ok(())
    }

    /// Flat `key=value` parameter record.
    pub fn write_params<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "method={}", self.provenance.method)?;
        writeln!(out, "seed={}", self.provenance.seed)?;
        writeln!(out, "documents={}", self.len())?;
        writeln!(out, "clusters={}", self.k)?;
        for (key, value) in &self.provenance.params {
            writeln!(out, "{key}={value}")?;
        }
        Ok(())
    }

    pub fn parse_csv(text: &str, origin: &str) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse {
            origin: origin.to_string(),
            line,
            message,
        };
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim_end() == "docId,cluster,method,seed" => {}
            _ => return Err(err(1, "expected header docId,cluster,method,seed".into())),
        }
        let mut ids = Vec::new();
        let mut groups = Vec::new();
        let mut prov: Option<(Method, u64)> = None;
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.trim_end().split(',').collect();
            if f.len() != 4 {
                return Err(err(idx + 1, format!("expected 4 fields, got {}", f.len())));
            }
            let label = f[1]
                .parse::<usize>()
                .map_err(|_| err(idx + 1, format!("bad cluster {:?}", f[1])))?;
            let method = f[2]
                .parse::<Method>()
                .map_err(|e| err(idx + 1, e.to_string()))?;
            let seed = f[3]
                .parse::<u64>()
                .map_err(|_| err(idx + 1, format!("bad seed {:?}", f[3])))?;
            match prov {
                None => prov = Some((method, seed)),
                Some(p) if p != (method, seed) => {
                    return Err(err(
                        idx + 1,
                        "mixed method/seed within one partition".into(),
                    ))
                }
                _ => {}
            }
            ids.push(f[0].to_string());
            groups.push(label);
        }
        let (method, seed) = prov.ok_or(Error::Empty("partition file has no rows"))?;
        Partition::from_groups(ids, &groups, Provenance::new(method, seed))
    }
}

pub(crate) fn canonical_labels(groups: &[usize]) -> Vec<usize> {
    let mut map = BTreeMap::new();
    groups
        .iter()
        .map(|g| {
            let next = map.len();
            *map.entry(*g).or_insert(next)
        })
        .collect()
}

/// Standardized feature rows for one batch of documents.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedFeatures {
    pub doc_ids: Vec<String>,
    pub features: Vec<Feature>,
    /// One row per document, columns in `features` order.
    pub rows: Vec<Vec<f64>>,
}

impl NormalizedFeatures {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Wraps already-prepared rows (used by tests and custom pipelines).
    pub fn from_rows(doc_ids: Vec<String>, rows: Vec<Vec<f64>>) -> Self {
        NormalizedFeatures {
            doc_ids,
            features: Vec::new(),
            rows,
        }
    }
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Z-scores each selected feature over the batch (population variance).
/// A constant column becomes all zeros.
///
/// Rows come out sorted by docId, so every later tie-break that prefers
/// the lowest index prefers the lowest docId, whatever the input order.
pub fn normalize_features(
    vectors: &[FeatureVector],
    subset: &[Feature],
) -> Result<NormalizedFeatures> {
    let mut sorted: Vec<&FeatureVector> = vectors.iter().collect();
    sorted.sort_by(|a, b| a.doc_id.cmp(&b.doc_id));
    if let Some(w) = sorted.windows(2).find(|w| w[0].doc_id == w[1].doc_id) {
        return Err(Error::DuplicateDocument(w[0].doc_id.clone()));
    }
    let vectors = sorted;
    if vectors.len() < 2 {
        return Err(Error::TooFewDocuments {
            needed: 2,
            got: vectors.len(),
        });
    }
    if subset.is_empty() {
        return Err(Error::InvalidParameter("empty feature subset".into()));
    }
    let n = vectors.len() as f64;
    let mut rows = vec![Vec::with_capacity(subset.len()); vectors.len()];
    for &feature in subset {
        let column: Vec<f64> = vectors.iter().map(|v| v.get(feature)).collect();
        let constant = column.iter().all(|&x| x == column[0]);
        let mean = column.iter().sum::<f64>() / n;
        let var = column.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
        let sd = var.sqrt();
        for (row, x) in rows.iter_mut().zip(&column) {
            row.push(if constant || sd == 0.0 {
                0.0
            } else {
                (x - mean) / sd
            });
        }
    }
    Ok(NormalizedFeatures {
        doc_ids: vectors.iter().map(|v| v.doc_id.clone()).collect(),
        features: subset.to_vec(),
        rows,
    })
}

/// Full pipeline: normalize, build the graph, run the GA, merge to target.
pub fn classify_gaicda(
    vectors: &[FeatureVector],
    subset: &[Feature],
    graph_params: &GraphParams,
    ga_params: &GaParams,
) -> Result<Partition> {
    ga_params.validate()?;
    graph_params.validate()?;
    if vectors.len() < ga_params.target_clusters.max(2) {
        return Err(Error::TooFewDocuments {
            needed: ga_params.target_clusters.max(2),
            got: vectors.len(),
        });
    }
    let normalized = normalize_features(vectors, subset)?;
    let graph = build_graph(&normalized, graph_params)?;
    let raw = cluster_ga(&graph, ga_params)?;
    let pre_refine_k = raw.k();
    let mut refined = refine(&raw, &normalized, ga_params.target_clusters)?;

    let subset_names: Vec<&str> = subset.iter().map(|f| f.name()).collect();
    refined.provenance = ga_params
        .provenance()
        .with("features", subset_names.join(","))
        .with("threshold_t", graph_params.threshold)
        .with("neighbor_count", graph_params.neighbors)
        .with("edges", graph.edges().len())
        .with("ga_clusters", pre_refine_k);
    Ok(refined)
}
