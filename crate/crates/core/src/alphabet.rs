//! Letter classification by text-line zone occupancy and text encoding.
//!
//! A text line is bounded by four virtual lines (top, upper, base, bottom)
//! which split it into an upper, middle and lower zone. Every letter falls
//! into one of four classes depending on which zones it covers, and each
//! class carries a number code (0..=3) and a gray level. Encoding a document
//! replaces every mapped letter by its code, producing a one-row image with
//! four gray levels.
//!
//! Per-script class assignments live in plain-text tables so they can be
//! corrected without recompiling:
//!
//! ```text
//! # comment
//! script: Latin
//! fold: lowercase
//! b<TAB>A
//! ```
//!
//! Entry lines hold the character, a tab, and one of `S`, `A`, `D`, `F`.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Number of distinct script-type codes (and gray levels).
pub const LEVELS: usize = 4;

/// The three alphabets this crate knows how to tell apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Script {
    Cyrillic,
    Latin,
    Glagolitic,
}

impl Script {
    pub const ALL: [Script; 3] = [Script::Cyrillic, Script::Latin, Script::Glagolitic];

    pub fn name(self) -> &'static str {
        match self {
            Script::Cyrillic => "Cyrillic",
            Script::Latin => "Latin",
            Script::Glagolitic => "Glagolitic",
        }
    }

    /// Lowercase name used for corpus directories and CSV columns.
    pub fn dir_name(self) -> &'static str {
        match self {
            Script::Cyrillic => "cyrillic",
            Script::Latin => "latin",
            Script::Glagolitic => "glagolitic",
        }
    }

    /// Whether `ch` lies in one of the Unicode blocks assigned to this script.
    pub fn contains(self, ch: char) -> bool {
        let c = ch as u32;
        match self {
            Script::Latin => {
                ch.is_ascii_alphabetic()
                    || (0x00C0..=0x024F).contains(&c) && c != 0x00D7 && c != 0x00F7
                    || (0x1E00..=0x1EFF).contains(&c)
            }
            Script::Cyrillic => (0x0400..=0x052F).contains(&c),
            Script::Glagolitic => {
                (0x2C00..=0x2C5F).contains(&c) || (0x1E000..=0x1E02F).contains(&c)
            }
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Script {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Script::ALL
            .into_iter()
            .find(|script| script.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownScript(s.to_string()))
    }
}

/// Zone-occupancy class of a letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum ScriptClass {
    /// Middle zone only.
    Short = 0,
    /// Middle and upper zone.
    Ascender = 1,
    /// Middle and lower zone.
    Descender = 2,
    /// All three zones.
    Full = 3,
}

impl ScriptClass {
    pub const ALL: [ScriptClass; LEVELS] = [
        ScriptClass::Short,
        ScriptClass::Ascender,
        ScriptClass::Descender,
        ScriptClass::Full,
    ];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Self> {
        Self::ALL.get(code as usize).copied()
    }

    /// Equidistant gray levels 0, 85, 170, 255.
    pub fn gray_level(self) -> u8 {
        self.code() * 85
    }

    pub fn from_gray_level(gray: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.gray_level() == gray)
    }

    /// Single-letter tag used in table files (S, A, D, F).
    pub fn letter(self) -> char {
        match self {
            ScriptClass::Short => 'S',
            ScriptClass::Ascender => 'A',
            ScriptClass::Descender => 'D',
            ScriptClass::Full => 'F',
        }
    }

    pub fn from_letter(letter: &str) -> Option<Self> {
        match letter {
            "S" => Some(ScriptClass::Short),
            "A" => Some(ScriptClass::Ascender),
            "D" => Some(ScriptClass::Descender),
            "F" => Some(ScriptClass::Full),
            _ => None,
        }
    }
}

/// Case folding applied to a character before table lookup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CaseFold {
    #[default]
    Lowercase,
    None,
}

impl CaseFold {
    pub fn apply(self, ch: char) -> char {
        match self {
            CaseFold::None => ch,
            CaseFold::Lowercase => {
                let mut lower = ch.to_lowercase();
                match (lower.next(), lower.next()) {
                    (Some(single), None) => single,
                    _ => ch,
                }
            }
        }
    }
}

/// What to do when a table lists a character outside its script's blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BlockPolicy {
    #[default]
    Warn,
    Error,
}

/// Anything that can assign a zone class to a character.
pub trait ClassLookup {
    fn classify(&self, ch: char) -> Option<ScriptClass>;
}

/// Letter → class table for one script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingTable {
    script: Script,
    entries: BTreeMap<char, ScriptClass>,
    fold: CaseFold,
    version: String,
}

const DEFAULT_LATIN: &str = include_str!("../data/latin.table");
const DEFAULT_CYRILLIC: &str = include_str!("../data/cyrillic.table");
const DEFAULT_GLAGOLITIC: &str = include_str!("../data/glagolitic.table");

impl MappingTable {
    /// Builds a table directly; entries are assumed to be already case-folded.
    pub fn new(
        script: Script,
        entries: impl IntoIterator<Item = (char, ScriptClass)>,
        fold: CaseFold,
        version: impl Into<String>,
    ) -> Result<Self> {
        let origin = format!("<{script} table>");
        let mut map = BTreeMap::new();
        for (ch, class) in entries {
            if map.insert(ch, class).is_some() {
                return Err(Error::DuplicateEntry { origin, ch });
            }
        }
        Ok(MappingTable {
            script,
            entries: map,
            fold,
            version: version.into(),
        })
    }

    /// The shipped default table for `script`.
    pub fn default_for(script: Script) -> Self {
        let (text, origin) = match script {
            Script::Latin => (DEFAULT_LATIN, "latin.table"),
            Script::Cyrillic => (DEFAULT_CYRILLIC, "cyrillic.table"),
            Script::Glagolitic => (DEFAULT_GLAGOLITIC, "glagolitic.table"),
        };
        Self::parse(text, origin, BlockPolicy::Error).expect("shipped table is valid")
    }

    pub fn load(path: impl AsRef<Path>, policy: BlockPolicy) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        let text = String::from_utf8(bytes).map_err(|_| Error::NotUtf8 {
            path: path.to_path_buf(),
        })?;
        Self::parse(&text, &path.display().to_string(), policy)
    }

    /// Parses the table format. `origin` is only used in diagnostics.
    pub fn parse(text: &str, origin: &str, policy: BlockPolicy) -> Result<Self> {
        let parse_err = |line: usize, message: String| Error::Parse {
            origin: origin.to_string(),
            line,
            message,
        };

        let mut script = None;
        let mut fold = CaseFold::default();
        let mut version = String::from("unversioned");
        let mut raw: Vec<(usize, char, ScriptClass)> = Vec::new();

        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.strip_suffix('\r').unwrap_or(line);
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some((ch, tag)) = line.split_once('\t') {
                let mut chars = ch.chars();
                let ch = match (chars.next(), chars.next()) {
                    (Some(c), None) => c,
                    _ => {
                        return Err(parse_err(
                            lineno,
                            format!("expected one character, got {ch:?}"),
                        ))
                    }
                };
                let class = ScriptClass::from_letter(tag.trim()).ok_or_else(|| {
                    parse_err(
                        lineno,
                        format!("unknown class {tag:?}, expected S, A, D or F"),
                    )
                })?;
                raw.push((lineno, ch, class));
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| parse_err(lineno, format!("malformed line {line:?}")))?;
            let value = value.trim();
            match key.trim() {
                "script" => {
                    script = Some(
                        value
                            .parse::<Script>()
                            .map_err(|e| parse_err(lineno, e.to_string()))?,
                    )
                }
                "fold" => {
                    fold = match value {
                        "lowercase" => CaseFold::Lowercase,
                        "none" => CaseFold::None,
                        other => {
                            return Err(parse_err(lineno, format!("unknown fold rule {other:?}")))
                        }
                    }
                }
                "version" => version = value.to_string(),
                other => return Err(parse_err(lineno, format!("unknown header {other:?}"))),
            }
        }

        let script = script.ok_or_else(|| parse_err(0, "missing `script:` header".into()))?;
        let mut entries = BTreeMap::new();
        for (lineno, ch, class) in raw {
            let key = fold.apply(ch);
            if !script.contains(key) {
                match policy {
                    BlockPolicy::Error => {
                        return Err(Error::OutsideBlock {
                            origin: origin.to_string(),
                            ch: key,
                            script,
                        })
                    }
                    BlockPolicy::Warn => {
                        log::warn!("{origin}:{lineno}: {key:?} is outside the {script} block")
                    }
                }
            }
            if entries.insert(key, class).is_some() {
                return Err(Error::DuplicateEntry {
                    origin: origin.to_string(),
                    ch: key,
                });
            }
        }

        Ok(MappingTable {
            script,
            entries,
            fold,
            version,
        })
    }

    pub fn script(&self) -> Script {
        self.script
    }

    pub fn fold(&self) -> CaseFold {
        self.fold
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (char, ScriptClass)> + '_ {
        self.entries.iter().map(|(&c, &k)| (c, k))
    }

    pub fn contains(&self, ch: char) -> bool {
        self.classify(ch).is_some()
    }
}

impl ClassLookup for MappingTable {
    fn classify(&self, ch: char) -> Option<ScriptClass> {
        self.entries.get(&self.fold.apply(ch)).copied()
    }
}

/// Several tables consulted in order; the first hit wins.
///
/// Encoding a document of unknown script uses the set of all three default
/// tables. Their blocks are disjoint, so order only matters for custom tables.
#[derive(Debug, Clone)]
pub struct TableSet {
    tables: Vec<MappingTable>,
}

impl TableSet {
    pub fn new(tables: Vec<MappingTable>) -> Self {
        TableSet { tables }
    }

    pub fn defaults() -> Self {
        Self::new(
            Script::ALL
                .into_iter()
                .map(MappingTable::default_for)
                .collect(),
        )
    }

    pub fn get(&self, script: Script) -> Option<&MappingTable> {
        self.tables.iter().find(|t| t.script() == script)
    }

    /// Replaces (or adds) the table for its script.
    pub fn set(&mut self, table: MappingTable) {
        match self
            .tables
            .iter_mut()
            .find(|t| t.script() == table.script())
        {
            Some(slot) => *slot = table,
            None => self.tables.push(table),
        }
    }

    pub fn tables(&self) -> &[MappingTable] {
        &self.tables
    }
}

impl ClassLookup for TableSet {
    fn classify(&self, ch: char) -> Option<ScriptClass> {
        self.tables.iter().find_map(|t| t.classify(ch))
    }
}

/// A document reduced to its ordered script-type codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSequence {
    pub doc_id: String,
    codes: Vec<u8>,
    pub source_script: Option<Script>,
    pub skipped: usize,
    /// Indices where a run is forced to end before `codes[i]`, even when
    /// `codes[i - 1] == codes[i]`. Empty unless runs break at whitespace.
    segment_starts: Vec<usize>,
}

impl CodeSequence {
    /// Wraps raw codes; every code must be in `0..=3`.
    pub fn from_codes(doc_id: impl Into<String>, codes: Vec<u8>) -> Result<Self> {
        let doc_id = doc_id.into();
        if let Some(bad) = codes.iter().find(|&&c| c as usize >= LEVELS) {
            return Err(Error::InvalidParameter(format!(
                "document {doc_id}: code {bad} is outside 0..=3"
            )));
        }
        if codes.is_empty() {
            return Err(Error::EmptyDocument(doc_id));
        }
        Ok(CodeSequence {
            doc_id,
            codes,
            source_script: None,
            skipped: 0,
            segment_starts: Vec::new(),
        })
    }

    pub fn with_script(mut self, script: Script) -> Self {
        self.source_script = Some(script);
        self
    }

    pub fn codes(&self) -> &[u8] {
        &self.codes
    }

    pub fn segment_starts(&self) -> &[usize] {
        &self.segment_starts
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// The code string used by the coded-document export.
    pub fn digits(&self) -> String {
        self.codes.iter().map(|&c| char::from(b'0' + c)).collect()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EncodeOptions {
    /// End runs at whitespace instead of joining letters across words.
    pub break_runs_at_space: bool,
}

/// Encodes `text` with default options (runs continue across words).
pub fn encode_text(text: &str, lookup: &impl ClassLookup, doc_id: &str) -> Result<CodeSequence> {
    encode_text_with(text, lookup, doc_id, EncodeOptions::default())
}

pub fn encode_text_with(
    text: &str,
    lookup: &impl ClassLookup,
    doc_id: &str,
    options: EncodeOptions,
) -> Result<CodeSequence> {
    let mut codes = Vec::with_capacity(text.len());
    let mut segment_starts = Vec::new();
    let mut skipped = 0;
    let mut pending_break = false;

    for ch in text.chars() {
        match lookup.classify(ch) {
            Some(class) => {
                if pending_break && !codes.is_empty() {
                    segment_starts.push(codes.len());
                }
                pending_break = false;
                codes.push(class.code());
            }
            None => {
                skipped += 1;
                if options.break_runs_at_space && ch.is_whitespace() {
                    pending_break = true;
                }
            }
        }
    }

    if codes.is_empty() {
        return Err(Error::EmptyDocument(doc_id.to_string()));
    }
    Ok(CodeSequence {
        doc_id: doc_id.to_string(),
        codes,
        source_script: None,
        skipped,
        segment_starts,
    })
}

/// Replaces each code by its class gray level.
pub fn to_gray_image(seq: &CodeSequence) -> Vec<u8> {
    seq.codes()
        .iter()
        .map(|&c| ScriptClass::ALL[c as usize].gray_level())
        .collect()
}

/// Inverse of [`to_gray_image`]; `None` if a pixel is not one of the four levels.
pub fn codes_from_gray(pixels: &[u8]) -> Option<Vec<u8>> {
    pixels
        .iter()
        .map(|&g| ScriptClass::from_gray_level(g).map(ScriptClass::code))
        .collect()
}

/// Writes `<docId>\t<digits>` lines.
pub fn write_coded<W: Write>(mut out: W, seqs: &[CodeSequence]) -> std::io::Result<()> {
    for seq in seqs {
        writeln!(out, "{}\t{}", seq.doc_id, seq.digits())?;
    }
    Ok(())
}

/// Parses the coded-document export back into sequences.
pub fn parse_coded(text: &str, origin: &str) -> Result<Vec<CodeSequence>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse {
            origin: origin.to_string(),
            line: idx + 1,
            message,
        };
        let (doc_id, digits) = line
            .split_once('\t')
            .ok_or_else(|| err("expected <docId>TAB<digits>".into()))?;
        let codes = digits
            .bytes()
            .map(|b| match b {
                b'0'..=b'3' => Ok(b - b'0'),
                _ => Err(err(format!("invalid code digit {:?}", b as char))),
            })
            .collect::<Result<Vec<u8>>>()?;
        out.push(CodeSequence::from_codes(doc_id, codes)?);
    }
    Ok(out)
}
