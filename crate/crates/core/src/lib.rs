//! Script identification (Cyrillic, Latin, Glagolitic) from the run-length
//! texture of text-line zone codes.
//!
//! The pipeline has three stages:
//!
//! 1. [`alphabet`]: every letter is replaced by the code of its zone class
//!    (short, ascender, descender, full), giving a 1-D four-level image.
//! 2. [`texture`]: the gray-level run-length matrix of that image and its
//!    five features (SRE, LRE, GLN, RLN, RP).
//! 3. [`gaicda`]: documents become nodes of a similarity graph which a
//!    genetic algorithm partitions; clusters are then merged down to the
//!    requested count. Hierarchical and EM baselines live alongside.
//!
//! [`evaluation`] scores partitions against ground truth and [`corpus`]
//! reads document trees or generates synthetic ones.

pub mod alphabet;
pub mod corpus;
pub mod error;
pub mod evaluation;
pub mod gaicda;
pub mod texture;

pub use alphabet::{
    encode_text, encode_text_with, ClassLookup, CodeSequence, EncodeOptions, MappingTable, Script,
    ScriptClass, TableSet,
};
pub use corpus::{Dataset, Document, ScriptModel, Split};
pub use error::{Error, Result};
pub use evaluation::{score, EvalReport};
pub use gaicda::{classify_gaicda, GaParams, GraphParams, Method, Partition};
pub use texture::{compute_features, Feature, FeatureVector, RunLengthMatrix};
