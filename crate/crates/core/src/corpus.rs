//! Document collections: reading corpus trees, synthesizing stand-in corpora
//! from per-script letter frequencies, and manifests.
//!
//! On disk a corpus looks like `<root>/{train,test}/{cyrillic,latin,glagolitic}/*.txt`.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Normal;
use sha2::{Digest, Sha256};

use crate::alphabet::{ClassLookup, MappingTable, Script, LEVELS};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Split {
    Train,
    Test,
}

impl Split {
    pub const ALL: [Split; 2] = [Split::Train, Split::Test];

    pub fn name(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Test => "test",
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Split {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "train" => Ok(Split::Train),
            "test" => Ok(Split::Test),
            other => Err(Error::InvalidParameter(format!("unknown split {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub doc_id: String,
    pub script: Script,
    pub split: Split,
    pub text: String,
}

impl Document {
    pub fn sha256(&self) -> String {
        hex::encode(Sha256::digest(self.text.as_bytes()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    documents: Vec<Document>,
}

impl Dataset {
    pub fn new(documents: Vec<Document>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for doc in &documents {
            if !seen.insert(doc.doc_id.as_str()) {
                return Err(Error::DuplicateDocument(doc.doc_id.clone()));
            }
            if doc.text.is_empty() {
                return Err(Error::EmptyDocument(doc.doc_id.clone()));
            }
        }
        Ok(Dataset { documents })
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn split(&self, split: Split) -> impl Iterator<Item = &Document> {
        self.documents.iter().filter(move |d| d.split == split)
    }

    pub fn split_of(&self, doc_id: &str) -> Option<Split> {
        self.documents
            .iter()
            .find(|d| d.doc_id == doc_id)
            .map(|d| d.split)
    }

    /// `docId,script,split,chars,sha256` with a header row, sorted by docId
    /// so the digest does not depend on document order.
    pub fn manifest(&self) -> String {
        let mut out = String::from("docId,script,split,chars,sha256\n");
        let mut sorted: Vec<&Document> = self.documents.iter().collect();
        sorted.sort_by(|a, b| a.doc_id.cmp(&b.doc_id));
        for d in sorted {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                d.doc_id,
                d.script.dir_name(),
                d.split,
                d.text.chars().count(),
                d.sha256()
            ));
        }
        out
    }

    /// Digest of the manifest; changes whenever any text, label or split does.
    pub fn manifest_hash(&self) -> String {
        hex::encode(Sha256::digest(self.manifest().as_bytes()))
    }

    /// Writes the documents into the corpus layout under `root`, plus
    /// `manifest.csv`. The doc id `train/latin/latin_001` becomes
    /// `train/latin/latin_001.txt`.
    pub fn write_tree(&self, root: &Path) -> Result<()> {
        for d in &self.documents {
            let path = root.join(format!("{}.txt", d.doc_id));
            if let Some(parent) = path.parent() {
                std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
            }
            std::fs::write(&path, &d.text).map_err(|e| Error::io(&path, e))?;
        }
        let manifest = root.join("manifest.csv");
        std::fs::write(&manifest, self.manifest()).map_err(|e| Error::io(&manifest, e))
    }
}

/// Reads `<root>/{train,test}/<script>/*.txt`. Other files are ignored;
/// a script directory with an unknown name is an error.
pub fn ingest_directory(root: &Path) -> Result<Dataset> {
    if !root.is_dir() {
        return Err(Error::io(
            root,
            std::io::Error::new(std::io::ErrorKind::NotFound, "corpus directory not found"),
        ));
    }
    let mut documents = Vec::new();
    for split in Split::ALL {
        let split_dir = root.join(split.name());
        if !split_dir.is_dir() {
            continue;
        }
        for script_dir in sorted_entries(&split_dir)? {
            if !script_dir.is_dir() {
                continue;
            }
            let name = script_dir
                .file_name()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            let script: Script = name
                .parse()
                .map_err(|_| Error::UnknownScript(script_dir.display().to_string()))?;
            for file in sorted_entries(&script_dir)? {
                if !file.is_file() || file.extension().is_none_or(|e| e != "txt") {
                    continue;
                }
                let bytes = std::fs::read(&file).map_err(|e| Error::io(&file, e))?;
                let text =
                    String::from_utf8(bytes).map_err(|_| Error::NotUtf8 { path: file.clone() })?;
                if text.trim().is_empty() {
                    return Err(Error::EmptyDocument(file.display().to_string()));
                }
                let stem = file.file_stem().unwrap_or_default().to_string_lossy();
                documents.push(Document {
                    doc_id: format!("{}/{}/{}", split, script.dir_name(), stem),
                    script,
                    split,
                    text,
                });
            }
        }
    }
    if documents.is_empty() {
        return Err(Error::Empty("corpus contains no documents"));
    }
    Dataset::new(documents)
}

fn sorted_entries(dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        out.push(entry.map_err(|e| Error::io(dir, e))?.path());
    }
    out.sort();
    Ok(out)
}

/// Per-script letter distribution and document-length model.
#[derive(Debug, Clone, PartialEq)]
pub struct ScriptModel {
    pub script: Script,
    /// Normalized to sum to one.
    frequencies: Vec<(char, f64)>,
    pub mean_length: f64,
    pub std_length: f64,
    bigrams: Option<BigramTable>,
}

/// Optional first-order transitions: after `prev`, the next letter is drawn
/// from `rows[prev]` instead of the unigram frequencies. Letters without a
/// row fall back to the unigram draw.
#[derive(Debug, Clone, PartialEq)]
pub struct BigramTable {
    rows: BTreeMap<char, Vec<(char, f64)>>,
}

impl BigramTable {
    pub fn load(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        let text = String::from_utf8(bytes).map_err(|_| Error::NotUtf8 {
            path: path.to_path_buf(),
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    /// `<prev>TAB<next>TAB<weight>` lines; `#` starts a comment line.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse {
            origin: origin.to_string(),
            line,
            message,
        };
        let single = |field: &str, line: usize| {
            let mut chars = field.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => Ok(c),
                _ => Err(err(line, format!("expected one character, got {field:?}"))),
            }
        };
        let mut rows: BTreeMap<char, Vec<(char, f64)>> = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(err(lineno, "expected <prev>TAB<next>TAB<weight>".into()));
            }
            let (prev, next) = (single(fields[0], lineno)?, single(fields[1], lineno)?);
            let w = fields[2]
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|w| w.is_finite() && *w >= 0.0)
                .ok_or_else(|| err(lineno, format!("bad weight {:?}", fields[2])))?;
            let row = rows.entry(prev).or_default();
            if row.iter().any(|(c, _)| *c == next) {
                return Err(err(lineno, format!("pair {prev:?}{next:?} listed twice")));
            }
            row.push((next, w));
        }
        for (prev, row) in &mut rows {
            let total: f64 = row.iter().map(|(_, w)| w).sum();
            if total <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{origin}: transitions after {prev:?} sum to zero"
                )));
            }
            row.iter_mut().for_each(|(_, w)| *w /= total);
        }
        Ok(BigramTable { rows })
    }

    /// Normalized transition probabilities after `prev`, if listed.
    pub fn row(&self, prev: char) -> Option<&[(char, f64)]> {
        self.rows.get(&prev).map(Vec::as_slice)
    }

    fn letters(&self) -> impl Iterator<Item = char> + '_ {
        self.rows
            .iter()
            .flat_map(|(&p, row)| std::iter::once(p).chain(row.iter().map(|(c, _)| *c)))
    }
}

const DEFAULT_LATIN_FREQ: &str = include_str!("../data/latin.freq");
const DEFAULT_CYRILLIC_FREQ: &str = include_str!("../data/cyrillic.freq");
const DEFAULT_GLAGOLITIC_FREQ: &str = include_str!("../data/glagolitic.freq");

impl ScriptModel {
    pub fn new(
        script: Script,
        weights: Vec<(char, f64)>,
        mean_length: f64,
        std_length: f64,
    ) -> Result<Self> {
        let invalid = |m: String| Error::InvalidParameter(format!("{script} model: {m}"));
        if weights.is_empty() {
            return Err(invalid("no letters".into()));
        }
        if let Some(&(ch, w)) = weights.iter().find(|(_, w)| !(w.is_finite() && *w >= 0.0)) {
            return Err(invalid(format!("bad weight {w} for {ch:?}")));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(&(ch, _)) = weights.iter().find(|(c, _)| !seen.insert(*c)) {
            return Err(invalid(format!("{ch:?} listed twice")));
        }
        let total: f64 = weights.iter().map(|(_, w)| w).sum();
        if total <= 0.0 {
            return Err(invalid("weights sum to zero".into()));
        }
        if !(mean_length > 0.0 && std_length > 0.0) {
            return Err(invalid("length parameters must be positive".into()));
        }
        Ok(ScriptModel {
            script,
            frequencies: weights.into_iter().map(|(c, w)| (c, w / total)).collect(),
            mean_length,
            std_length,
            bigrams: None,
        })
    }

    /// Switches sampling to the given transitions. Every letter in the
    /// table must also appear in the unigram frequencies.
    pub fn with_bigrams(mut self, table: BigramTable) -> Result<Self> {
        if let Some(c) = table
            .letters()
            .find(|c| !self.frequencies.iter().any(|(f, _)| f == c))
        {
            return Err(Error::InvalidParameter(format!(
                "{} model: bigram letter {c:?} has no unigram frequency",
                self.script
            )));
        }
        self.bigrams = Some(table);
        Ok(self)
    }

    pub fn bigrams(&self) -> Option<&BigramTable> {
        self.bigrams.as_ref()
    }

    pub fn default_for(script: Script) -> Self {
        let (text, origin) = match script {
            Script::Latin => (DEFAULT_LATIN_FREQ, "latin.freq"),
            Script::Cyrillic => (DEFAULT_CYRILLIC_FREQ, "cyrillic.freq"),
            Script::Glagolitic => (DEFAULT_GLAGOLITIC_FREQ, "glagolitic.freq"),
        };
        Self::parse(text, origin).expect("shipped model is valid")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        let text = String::from_utf8(bytes).map_err(|_| Error::NotUtf8 {
            path: path.to_path_buf(),
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    /// `script: <name>` header, optional `mean_length:` / `std_length:`,
    /// then `<character>TAB<relative frequency>` lines.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse {
            origin: origin.to_string(),
            line,
            message,
        };
        let mut script = None;
        let mut mean = 2000.0;
        let mut std = 500.0;
        let mut weights = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some((ch, w)) = line.split_once('\t') {
                let mut chars = ch.chars();
                let c = match (chars.next(), chars.next()) {
                    (Some(c), None) => c,
                    _ => return Err(err(lineno, format!("expected one character, got {ch:?}"))),
                };
                let w = w
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| err(lineno, format!("bad frequency {w:?}")))?;
                weights.push((c, w));
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| err(lineno, format!("malformed line {line:?}")))?;
            let number = || {
                value
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| err(lineno, format!("bad number {value:?}")))
            };
            match key.trim() {
                "script" => {
                    script = Some(
                        value
                            .parse::<Script>()
                            .map_err(|e| err(lineno, e.to_string()))?,
                    )
                }
                "mean_length" => mean = number()?,
                "std_length" => std = number()?,
                other => return Err(err(lineno, format!("unknown header {other:?}"))),
            }
        }
        let script = script.ok_or_else(|| err(0, "missing `script:` header".into()))?;
        Self::new(script, weights, mean, std)
    }

    pub fn frequencies(&self) -> &[(char, f64)] {
        &self.frequencies
    }

    /// Checks every letter has a class in `table`.
    pub fn validate_against(&self, table: &impl ClassLookup) -> Result<()> {
        match self
            .frequencies
            .iter()
            .find(|(c, _)| table.classify(*c).is_none())
        {
            Some(&(c, _)) => Err(Error::NoMapping(c)),
            None => Ok(()),
        }
    }

    pub(crate) fn sampler(&self) -> WeightedIndex<f64> {
        WeightedIndex::new(self.frequencies.iter().map(|(_, p)| *p)).expect("validated weights")
    }

    /// Draws `n` letters: independently, or as a chain when transitions
    /// are attached (the first letter always comes from the unigrams).
    pub fn sample_letters<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<char> {
        let dist = self.sampler();
        let Some(bigrams) = &self.bigrams else {
            return (0..n)
                .map(|_| self.frequencies[dist.sample(rng)].0)
                .collect();
        };
        let rows: BTreeMap<char, WeightedIndex<f64>> = bigrams
            .rows
            .iter()
            .map(|(&p, row)| {
                let w = WeightedIndex::new(row.iter().map(|(_, w)| *w)).expect("normalized row");
                (p, w)
            })
            .collect();
        let mut out: Vec<char> = Vec::with_capacity(n);
        for _ in 0..n {
            let next = match out.last().and_then(|p| rows.get(p).map(|d| (p, d))) {
                Some((p, d)) => bigrams.rows[p][d.sample(rng)].0,
                None => self.frequencies[dist.sample(rng)].0,
            };
            out.push(next);
        }
        out
    }
}

/// Distribution over the four codes induced by a letter model's unigram
/// frequencies.
pub fn code_distribution(model: &ScriptModel, table: &MappingTable) -> Result<[f64; LEVELS]> {
    let mut out = [0.0; LEVELS];
    for &(ch, p) in model.frequencies() {
        let class = table.classify(ch).ok_or(Error::NoMapping(ch))?;
        out[class.code() as usize] += p;
    }
    Ok(out)
}

/// Document counts for one script.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitCounts {
    pub script: Script,
    pub train: usize,
    pub test: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub counts: Vec<SplitCounts>,
    pub seed: u64,
    /// Shortest document, in letters.
    pub min_length: usize,
}

impl Default for SynthConfig {
    /// 100 training documents (34/33/33) and 5 test documents per script.
    fn default() -> Self {
        SynthConfig {
            counts: vec![
                SplitCounts {
                    script: Script::Cyrillic,
                    train: 34,
                    test: 5,
                },
                SplitCounts {
                    script: Script::Latin,
                    train: 33,
                    test: 5,
                },
                SplitCounts {
                    script: Script::Glagolitic,
                    train: 33,
                    test: 5,
                },
            ],
            seed: 42,
            min_length: 200,
        }
    }
}

/// Seed for one document, independent of every other document's.
fn document_seed(seed: u64, script: Script, split: Split, index: usize) -> u64 {
    let digest = Sha256::new()
        .chain_update(seed.to_le_bytes())
        .chain_update(script.dir_name().as_bytes())
        .chain_update(split.name().as_bytes())
        .chain_update((index as u64).to_le_bytes())
        .finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"))
}

const WORDS_PER_LINE: usize = 10;

fn synth_text(model: &ScriptModel, rng: &mut ChaCha8Rng, min_length: usize) -> String {
    let normal = Normal::new(model.mean_length, model.std_length).expect("positive std");
    let length = (normal.sample(rng).round().max(0.0) as usize).max(min_length);
    let letters = model.sample_letters(length, rng);

    let mut text = String::with_capacity(length * 3);
    let mut pos = 0;
    let mut words = 0;
    while pos < letters.len() {
        let word = rng.random_range(2..=9).min(letters.len() - pos);
        text.extend(&letters[pos..pos + word]);
        pos += word;
        words += 1;
        text.push(if words % WORDS_PER_LINE == 0 || pos == letters.len() {
            '\n'
        } else {
            ' '
        });
    }
    text
}

/// Samples a corpus letter by letter from the script models. Every document
/// has its own seed derived from `(seed, script, split, index)`.
pub fn generate_synthetic(models: &[ScriptModel], config: &SynthConfig) -> Result<Dataset> {
    let mut documents = Vec::new();
    for split in Split::ALL {
        for counts in &config.counts {
            let model = models
                .iter()
                .find(|m| m.script == counts.script)
                .ok_or_else(|| {
                    Error::InvalidParameter(format!("no model for {}", counts.script))
                })?;
            let n = match split {
                Split::Train => counts.train,
                Split::Test => counts.test,
            };
            for index in 0..n {
                let mut rng = ChaCha8Rng::seed_from_u64(document_seed(
                    config.seed,
                    counts.script,
                    split,
                    index,
                ));
                let name = counts.script.dir_name();
                documents.push(Document {
                    doc_id: format!("{split}/{name}/{name}_{:03}", index + 1),
                    script: counts.script,
                    split,
                    text: synth_text(model, &mut rng, config.min_length.max(1)),
                });
            }
        }
    }
    Dataset::new(documents)
}

/// Writes the manifest CSV.
pub fn write_manifest<W: Write>(mut out: W, dataset: &Dataset) -> std::io::Result<()> {
    out.write_all(dataset.manifest().as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::TableSet;

    fn models() -> Vec<ScriptModel> {
        Script::ALL
            .into_iter()
            .map(ScriptModel::default_for)
            .collect()
    }

    #[test]
    fn default_models_are_normalized_and_mapped() {
        let tables = TableSet::defaults();
        for m in models() {
            let total: f64 = m.frequencies().iter().map(|(_, p)| p).sum();
            assert!((total - 1.0).abs() < 1e-9);
            m.validate_against(tables.get(m.script).unwrap()).unwrap();
        }
    }

    #[test]
    fn default_corpus_size() {
        let ds = generate_synthetic(&models(), &SynthConfig::default()).unwrap();
        assert_eq!(ds.split(Split::Train).count(), 100);
        assert_eq!(ds.split(Split::Test).count(), 15);
        for script in Script::ALL {
            assert_eq!(
                ds.split(Split::Test).filter(|d| d.script == script).count(),
                5
            );
        }
        assert!(ds.documents().iter().all(|d| d
            .text
            .chars()
            .filter(|c| !c.is_whitespace())
            .count()
            >= 200));
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate_synthetic(&models(), &SynthConfig::default()).unwrap();
        let b = generate_synthetic(&models(), &SynthConfig::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.manifest_hash(), b.manifest_hash());
        let c = generate_synthetic(
            &models(),
            &SynthConfig {
                seed: 43,
                ..SynthConfig::default()
            },
        )
        .unwrap();
        assert_ne!(a.manifest_hash(), c.manifest_hash());
    }

    #[test]
    fn scripts_generate_independently() {
        let full = generate_synthetic(&models(), &SynthConfig::default()).unwrap();
        let only_latin = SynthConfig {
            counts: vec![SplitCounts {
                script: Script::Latin,
                train: 33,
                test: 5,
            }],
            ..SynthConfig::default()
        };
        let latin = generate_synthetic(&models(), &only_latin).unwrap();
        let from_full: Vec<&Document> = full
            .documents()
            .iter()
            .filter(|d| d.script == Script::Latin)
            .collect();
        assert_eq!(from_full, latin.documents().iter().collect::<Vec<_>>());
    }

    #[test]
    fn manifest_hash_tracks_labels() {
        let doc = |script, split| Document {
            doc_id: "a".into(),
            script,
            split,
            text: "bob".into(),
        };
        let base = Dataset::new(vec![doc(Script::Latin, Split::Train)]).unwrap();
        let relabeled = Dataset::new(vec![doc(Script::Cyrillic, Split::Train)]).unwrap();
        let moved = Dataset::new(vec![doc(Script::Latin, Split::Test)]).unwrap();
        assert_ne!(base.manifest_hash(), relabeled.manifest_hash());
        assert_ne!(base.manifest_hash(), moved.manifest_hash());
        assert!(base
            .manifest()
            .starts_with("docId,script,split,chars,sha256\na,latin,train,3,"));
    }

    #[test]
    fn code_distribution_examples() {
        let latin = MappingTable::default_for(Script::Latin);
        let only_o = ScriptModel::new(Script::Latin, vec![('o', 1.0)], 10.0, 1.0).unwrap();
        assert_eq!(
            code_distribution(&only_o, &latin).unwrap(),
            [1.0, 0.0, 0.0, 0.0]
        );
        let uniform = ScriptModel::new(
            Script::Latin,
            vec![('o', 1.0), ('b', 1.0), ('p', 1.0), ('j', 1.0)],
            10.0,
            1.0,
        )
        .unwrap();
        assert_eq!(code_distribution(&uniform, &latin).unwrap(), [0.25; 4]);
        let foreign = ScriptModel::new(Script::Latin, vec![('ж', 1.0)], 10.0, 1.0).unwrap();
        assert!(matches!(
            code_distribution(&foreign, &latin),
            Err(Error::NoMapping('ж'))
        ));
    }

    #[test]
    fn model_parse_errors() {
        assert!(ScriptModel::parse("a\t1\n", "m").is_err());
        assert!(ScriptModel::parse("script: Latin\na\tx\n", "m").is_err());
        assert!(ScriptModel::parse("script: Latin\na\t1\na\t2\n", "m").is_err());
        assert!(ScriptModel::parse("script: Latin\n", "m").is_err());
        let m = ScriptModel::parse("script: Latin\nmean_length: 50\na\t3\nb\t1\n", "m").unwrap();
        assert_eq!(m.frequencies(), [('a', 0.75), ('b', 0.25)]);
        assert_eq!(m.mean_length, 50.0);
    }

    #[test]
    fn missing_model_is_an_error() {
        let only_latin = vec![ScriptModel::default_for(Script::Latin)];
        assert!(generate_synthetic(&only_latin, &SynthConfig::default()).is_err());
    }
}
