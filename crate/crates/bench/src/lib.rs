//! Fixtures shared by the benchmarks.

use glyphrun::corpus::{generate_synthetic, SynthConfig};
use glyphrun::texture::document_features;
use glyphrun::{encode_text, CodeSequence, FeatureVector, Script, ScriptModel, Split, TableSet};

/// Encoded test documents of the default synthetic corpus.
pub fn test_sequences(seed: u64) -> Vec<CodeSequence> {
    let models: Vec<ScriptModel> = Script::ALL
        .into_iter()
        .map(ScriptModel::default_for)
        .collect();
    let dataset = generate_synthetic(
        &models,
        &SynthConfig {
            seed,
            ..SynthConfig::default()
        },
    )
    .expect("default models generate");
    let tables = TableSet::defaults();
    dataset
        .split(Split::Test)
        .map(|d| {
            encode_text(&d.text, &tables, &d.doc_id)
                .expect("synthetic text is mapped")
                .with_script(d.script)
        })
        .collect()
}

pub fn test_features(seed: u64) -> Vec<FeatureVector> {
    test_sequences(seed)
        .iter()
        .map(|s| document_features(s).expect("non-empty"))
        .collect()
}
