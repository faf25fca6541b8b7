//! File formats, corpus readers and the `runestat` command-line tool.

#![forbid(unsafe_code)]

use std::path::PathBuf;
use std::thread;

use runestat_core::{Corpus, FrequencyTables};

pub mod cli;
pub mod formats;
pub mod io;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: invalid UTF-8 at byte {offset}", path.display())]
    InvalidUtf8 { path: PathBuf, offset: usize },
    #[error("{}: line {line}: {message}", path.display())]
    Conllu {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{0}")]
    Format(String),
    #[error("unknown profile {0:?}: not a built-in name or an existing file")]
    UnknownProfile(String),
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    InFile {
        path: PathBuf,
        source: runestat_core::Error,
    },
    #[error(transparent)]
    Core(#[from] runestat_core::Error),
}

impl Error {
    /// 2 for files that cannot be read, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } | Error::UnknownProfile(_) => 2,
            _ => 1,
        }
    }
}

/// Counts a corpus on up to `parts` threads. The merge is associative and
/// commutative, so the result does not depend on `parts`.
pub fn parallel_tables(corpus: &Corpus, parts: usize) -> FrequencyTables {
    let n = corpus.sentences.len();
    let parts = parts.clamp(1, n.max(1));
    if parts == 1 {
        return runestat_core::metrics::build_tables(corpus);
    }
    let chunk = n.div_ceil(parts);
    thread::scope(|s| {
        let handles: Vec<_> = corpus
            .sentences
            .chunks(chunk)
            .map(|c| s.spawn(move || FrequencyTables::from_runes(c.iter().flat_map(|x| x.runes()))))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("counting thread panicked"))
            .fold(FrequencyTables::new(), |acc, t| acc.merged(&t))
    })
}
