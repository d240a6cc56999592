#![allow(dead_code)]

use std::collections::BTreeMap;

use glyphrun::corpus::{generate_synthetic, ScriptModel, Split, SynthConfig};
use glyphrun::texture::document_features;
use glyphrun::{encode_text, FeatureVector, Script, TableSet};

/// Features and labels of the default synthetic test split (15 documents).
pub fn synthetic_test_set(seed: u64) -> (Vec<FeatureVector>, BTreeMap<String, Script>) {
    let models: Vec<ScriptModel> = Script::ALL
        .into_iter()
        .map(ScriptModel::default_for)
        .collect();
    let ds = generate_synthetic(
        &models,
        &SynthConfig {
            seed,
            ..SynthConfig::default()
        },
    )
    .unwrap();
    let tables = TableSet::defaults();
    let mut vectors = Vec::new();
    let mut truth = BTreeMap::new();
    for d in ds.split(Split::Test) {
        let seq = encode_text(&d.text, &tables, &d.doc_id)
            .unwrap()
            .with_script(d.script);
        vectors.push(document_features(&seq).unwrap());
        truth.insert(d.doc_id.clone(), d.script);
    }
    (vectors, truth)
}

/// All set partitions of `0..n` as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn grow(prefix: &mut Vec<usize>, n: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for label in 0..=max + 1 {
            prefix.push(label);
            grow(prefix, n, max.max(label), out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    grow(&mut vec![0], n, 0, &mut out);
    out
}

/// Modularity straight from the definition with an explicit weight matrix.
pub fn modularity_by_definition(n: usize, edges: &[(usize, usize, f64)], labels: &[usize]) -> f64 {
    let mut a = vec![vec![0.0; n]; n];
    for &(u, v, w) in edges {
        a[u][v] = w;
        a[v][u] = w;
    }
    let strength: Vec<f64> = a.iter().map(|r| r.iter().sum()).collect();
    let two_m: f64 = strength.iter().sum();
    if two_m == 0.0 {
        return 0.0;
    }
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                q += a[i][j] - strength[i] * strength[j] / two_m;
            }
        }
    }
    q / two_m
}
