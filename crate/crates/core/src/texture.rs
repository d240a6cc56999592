//! Gray-level run-length statistics of a coded document.
//!
//! A run is a maximal block of equal consecutive codes. `p(i, j)` counts the
//! runs of level `i` and length `j`; the five classic run-length features
//! (short/long run emphasis, gray-level and run-length nonuniformity, run
//! percentage) are normalized sums over that matrix.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::alphabet::{CodeSequence, Script, LEVELS};
use crate::error::{Error, Result};

/// Run counts by gray level (rows) and run length (columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLengthMatrix {
    /// `counts[level][len - 1]`; every row has `max_run_length` columns.
    counts: Vec<Vec<u64>>,
    n_runs: u64,
    n_pixels: u64,
}

impl RunLengthMatrix {
    /// Runs over a bare code slice.
    pub fn from_codes(codes: &[u8]) -> Result<Self> {
        Self::build(codes, &[], "<codes>")
    }

    /// Runs over an encoded document, honoring its forced segment breaks.
    pub fn from_sequence(seq: &CodeSequence) -> Result<Self> {
        Self::build(seq.codes(), seq.segment_starts(), &seq.doc_id)
    }

    fn build(codes: &[u8], breaks: &[usize], doc_id: &str) -> Result<Self> {
        if codes.is_empty() {
            return Err(Error::EmptyDocument(doc_id.to_string()));
        }
        let mut runs: Vec<(usize, usize)> = Vec::new();
        let mut breaks = breaks.iter().copied().peekable();
        let mut start = 0;
        for i in 1..=codes.len() {
            let forced = breaks.next_if_eq(&i).is_some();
            if i == codes.len() || forced || codes[i] != codes[start] {
                let level = codes[start] as usize;
                if level >= LEVELS {
                    return Err(Error::InvalidParameter(format!(
                        "code {level} is outside 0..=3"
                    )));
                }
                runs.push((level, i - start));
                start = i;
            }
        }

        let max_len = runs.iter().map(|&(_, len)| len).max().unwrap_or(0);
        let mut counts = vec![vec![0u64; max_len]; LEVELS];
        for &(level, len) in &runs {
            counts[level][len - 1] += 1;
        }
        Ok(RunLengthMatrix {
            counts,
            n_runs: runs.len() as u64,
            n_pixels: codes.len() as u64,
        })
    }

    /// `p(level, len)`; zero outside the observed range. `len` is 1-based.
    pub fn get(&self, level: usize, len: usize) -> u64 {
        if len == 0 {
            return 0;
        }
        self.counts
            .get(level)
            .and_then(|row| row.get(len - 1))
            .copied()
            .unwrap_or(0)
    }

    pub fn levels(&self) -> usize {
        self.counts.len()
    }

    /// Longest observed run (N).
    pub fn max_run_length(&self) -> usize {
        self.counts.first().map_or(0, Vec::len)
    }

    pub fn n_runs(&self) -> u64 {
        self.n_runs
    }

    pub fn n_pixels(&self) -> u64 {
        self.n_pixels
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.counts
    }

    /// The four derived structures (pixel-number matrix, per-level and
    /// per-length run counts, length-one run counts).
    pub fn derive(&self) -> DerivedRunStats {
        let pixel_number = self
            .counts
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(j, &p)| p * (j as u64 + 1))
                    .collect()
            })
            .collect();
        let gray_run_number = self.counts.iter().map(|row| row.iter().sum()).collect();
        let run_length_run_number = (0..self.max_run_length())
            .map(|j| self.counts.iter().map(|row| row[j]).sum())
            .collect();
        let run_length_one = self
            .counts
            .iter()
            .map(|row| row.first().copied().unwrap_or(0))
            .collect();
        DerivedRunStats {
            pixel_number,
            gray_run_number,
            run_length_run_number,
            run_length_one,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedRunStats {
    /// `p_p(i, j) = p(i, j) * j`
    pub pixel_number: Vec<Vec<u64>>,
    /// `p_g(i) = sum_j p(i, j)`
    pub gray_run_number: Vec<u64>,
    /// `p_r(j) = sum_i p(i, j)`
    pub run_length_run_number: Vec<u64>,
    /// `p_o(i) = p(i, 1)`
    pub run_length_one: Vec<u64>,
}

/// The five run-length features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Feature {
    Sre,
    Lre,
    Gln,
    Rln,
    Rp,
}

impl Feature {
    pub const ALL: [Feature; 5] = [
        Feature::Sre,
        Feature::Lre,
        Feature::Gln,
        Feature::Rln,
        Feature::Rp,
    ];

    /// Subset that separates the three scripts.
    pub const DEFAULT_SUBSET: [Feature; 3] = [Feature::Sre, Feature::Lre, Feature::Rp];

    pub fn name(self) -> &'static str {
        match self {
            Feature::Sre => "sre",
            Feature::Lre => "lre",
            Feature::Gln => "gln",
            Feature::Rln => "rln",
            Feature::Rp => "rp",
        }
    }

    /// Parses a comma-separated list such as `sre,lre,rp`, returned in
    /// canonical order without duplicates.
    pub fn parse_list(s: &str) -> Result<Vec<Feature>> {
        let mut out: Vec<Feature> = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(Error::InvalidParameter("empty feature subset".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Feature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Feature::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown feature {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub doc_id: String,
    pub script: Option<Script>,
    pub sre: f64,
    pub lre: f64,
    pub gln: f64,
    pub rln: f64,
    pub rp: f64,
}

impl FeatureVector {
    pub fn get(&self, feature: Feature) -> f64 {
        match feature {
            Feature::Sre => self.sre,
            Feature::Lre => self.lre,
            Feature::Gln => self.gln,
            Feature::Rln => self.rln,
            Feature::Rp => self.rp,
        }
    }
}

/// Evaluates the five features from the per-length and per-level run counts.
pub fn compute_features(m: &RunLengthMatrix, doc_id: &str) -> FeatureVector {
    let derived = m.derive();
    let n_runs = m.n_runs() as f64;

    let mut sre = 0.0;
    let mut lre = 0.0;
    let mut rln = 0.0;
    for (j, &pr) in derived.run_length_run_number.iter().enumerate() {
        let len = (j + 1) as f64;
        let pr = pr as f64;
        sre += pr / (len * len);
        lre += pr * len * len;
        rln += pr * pr;
    }
    let gln: f64 = derived
        .gray_run_number
        .iter()
        .map(|&pg| (pg as f64) * (pg as f64))
        .sum();

    FeatureVector {
        doc_id: doc_id.to_string(),
        script: None,
        sre: sre / n_runs,
        lre: lre / n_runs,
        gln: gln / n_runs,
        rln: rln / n_runs,
        rp: n_runs / m.n_pixels() as f64,
    }
}

/// Features of one encoded document.
pub fn document_features(seq: &CodeSequence) -> Result<FeatureVector> {
    let m = RunLengthMatrix::from_sequence(seq)?;
    let mut fv = compute_features(&m, &seq.doc_id);
    fv.script = seq.source_script;
    Ok(fv)
}

/// One feature vector per document, in input order.
pub fn feature_matrix(docs: &[CodeSequence]) -> Result<Vec<FeatureVector>> {
    docs.iter().map(document_features).collect()
}

pub const FEATURE_CSV_HEADER: &str = "docId,script,sre,lre,gln,rln,rp";

/// Writes the feature CSV; values carry 17 significant digits.
pub fn write_features_csv<W: Write>(mut out: W, vectors: &[FeatureVector]) -> std::io::Result<()> {
    writeln!(out, "{FEATURE_CSV_HEADER}")?;
    for v in vectors {
        let script = v.script.map_or("", Script::dir_name);
        write!(out, "{},{}", v.doc_id, script)?;
        for f in Feature::ALL {
            write!(out, ",{:.16e}", v.get(f))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn parse_features_csv(text: &str, origin: &str) -> Result<Vec<FeatureVector>> {
    let mut lines = text.lines().enumerate();
    let err = |line: usize, message: String| Error::Parse {
        origin: origin.to_string(),
        line,
        message,
    };
    match lines.next() {
        Some((_, header)) if header.trim_end() == FEATURE_CSV_HEADER => {}
        _ => return Err(err(1, format!("expected header {FEATURE_CSV_HEADER:?}"))),
    }
    let mut out = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.trim_end().split(',').collect();
        if fields.len() != 7 {
            return Err(err(
                idx + 1,
                format!("expected 7 fields, got {}", fields.len()),
            ));
        }
        let num = |k: usize| {
            fields[k]
                .parse::<f64>()
                .map_err(|_| err(idx + 1, format!("bad number {:?}", fields[k])))
        };
        let script = match fields[1] {
            "" => None,
            s => Some(
                s.parse::<Script>()
                    .map_err(|e| err(idx + 1, e.to_string()))?,
            ),
        };
        out.push(FeatureVector {
            doc_id: fields[0].to_string(),
            script,
            sre: num(2)?,
            lre: num(3)?,
            gln: num(4)?,
            rln: num(5)?,
            rp: num(6)?,
        });
    }
    Ok(out)
}
