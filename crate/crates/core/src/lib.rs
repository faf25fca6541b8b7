//! Rune-level analysis of diacritized text.
//!
//! A *rune* is one base letter together with the (possibly empty) set of
//! diacritic marks attached to it. Everything in this crate is computed over
//! rune sequences: corpus-level surprisal metrics, descriptive usage
//! statistics, fixed-size corpus sampling, a frequency-based diacritics
//! restorer, and the accuracy/correlation harness used to compare them.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, corpus
//! readers and the command-line tool live in the `runestat` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod baseline;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod metrics;
pub mod profiler;
pub mod sampling;
pub mod script;
pub mod stats;

pub use baseline::{BaselineModel, ModelMeta};
pub use corpus::{Corpus, Sentence};
pub use error::Error;
pub use eval::{evaluate, EvalReport};
pub use metrics::{metric_report, FrequencyTables, MetricReport, RuneMetrics};
pub use profiler::{profile, CorpusProfile, SystemClass};
pub use sampling::{sample, SamplingConfig, XorShift64Star};
pub use script::{
    normalize_decompose, render, segment_runes, strip, BaseChar, DiacriticMark, RenderForm, Rune,
    ScriptProfile, Segmentation,
};
pub use stats::{correlate_table, pearson, CorrelationReport, TableCorrelation, TableRow};

pub type Result<T, E = Error> = core::result::Result<T, E>;
