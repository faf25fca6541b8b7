//! Corpus readers and writers.

use std::fs;
use std::path::{Path, PathBuf};

use runestat_core::{normalize_decompose, Corpus, ScriptProfile, Sentence};

use crate::Error;

/// Reads a file and checks it is UTF-8, reporting the first bad byte.
pub fn read_utf8(path: &Path) -> Result<String, Error> {
    let bytes = fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidUtf8 {
        path: path.to_path_buf(),
        offset: e.utf8_error().valid_up_to(),
    })
}

/// One sentence per non-empty line.
pub fn read_plaintext(path: &Path, profile: &ScriptProfile) -> Result<Corpus, Error> {
    let text = read_utf8(path)?;
    Ok(Corpus::from_lines(text.split('\n'), profile))
}

/// Surface text of each sentence block: `(first line number, text)`.
pub fn parse_conllu(text: &str) -> Result<Vec<(usize, String)>, ConlluError> {
    let mut out = Vec::new();
    let mut block = Block::default();
    for (i, line) in text.split('\n').enumerate() {
        let lineno = i + 1;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            if let Some(s) = block.finish() {
                out.push(s);
            }
            continue;
        }
        if block.start == 0 {
            block.start = lineno;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(t) = comment.trim_start().strip_prefix("text") {
                if let Some(t) = t.trim_start().strip_prefix('=') {
                    block.text = Some(t.trim().to_string());
                }
            }
            continue;
        }
        block.push_token(line, lineno)?;
    }
    if let Some(s) = block.finish() {
        out.push(s);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ConlluError {
    pub line: usize,
    pub message: String,
}

#[derive(Default)]
struct Block {
    start: usize,
    text: Option<String>,
    surface: String,
    covered_until: usize,
    has_tokens: bool,
}

impl Block {
    fn push_token(&mut self, line: &str, lineno: usize) -> Result<(), ConlluError> {
        let cols: Vec<&str> = line.split('\t').collect();
        let err = |message: String| ConlluError {
            line: lineno,
            message,
        };
        if cols.len() != 10 {
            return Err(err(format!(
                "expected 10 tab-separated columns, found {}",
                cols.len()
            )));
        }
        let (id, form, misc) = (cols[0], cols[1], cols[9]);
        let space_after = !misc.split('|').any(|f| f == "SpaceAfter=No");
        if let Some((a, b)) = id.split_once('-') {
            let last: usize = match (a.parse::<usize>(), b.parse::<usize>()) {
                (Ok(a), Ok(b)) if a <= b => b,
                _ => return Err(err(format!("bad range id {id:?}"))),
            };
            self.covered_until = last;
            self.emit(form, space_after);
        } else if id.contains('.') {
            // empty node, not part of the surface string
            if id.split('.').any(|p| p.parse::<usize>().is_err()) {
                return Err(err(format!("bad empty-node id {id:?}")));
            }
        } else {
            let n: usize = id
                .parse()
                .map_err(|_| err(format!("bad token id {id:?}")))?;
            if n > self.covered_until {
                self.emit(form, space_after);
            }
        }
        self.has_tokens = true;
        Ok(())
    }

    fn emit(&mut self, form: &str, space_after: bool) {
        self.surface.push_str(form);
        if space_after {
            self.surface.push(' ');
        }
    }

    fn finish(&mut self) -> Option<(usize, String)> {
        let b = std::mem::take(self);
        let text = match b.text {
            Some(t) => t,
            None if b.has_tokens => b.surface.trim_end().to_string(),
            None => return None,
        };
        Some((b.start, text))
    }
}

pub fn read_conllu(path: &Path, profile: &ScriptProfile) -> Result<Corpus, Error> {
    let text = read_utf8(path)?;
    let blocks = parse_conllu(&text).map_err(|e| Error::Conllu {
        path: path.to_path_buf(),
        line: e.line,
        message: e.message,
    })?;
    let sentences = blocks
        .into_iter()
        .filter(|(_, t)| !t.trim().is_empty())
        .map(|(line, t)| Sentence::new(t, line, profile))
        .collect();
    Ok(Corpus::new(sentences, profile))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum InputFormat {
    /// `.conllu` files are read as CoNLL-U, everything else as plain text
    #[default]
    Auto,
    Text,
    Conllu,
}

pub fn read_corpus(
    path: &Path,
    profile: &ScriptProfile,
    format: InputFormat,
) -> Result<Corpus, Error> {
    let conllu = match format {
        InputFormat::Conllu => true,
        InputFormat::Text => false,
        InputFormat::Auto => path.extension().is_some_and(|e| e == "conllu"),
    };
    if conllu {
        read_conllu(path, profile)
    } else {
        read_plaintext(path, profile)
    }
}

/// One decomposed sentence per line, with a trailing newline.
pub fn sentences_to_text(corpus: &Corpus) -> String {
    let mut out = String::new();
    for s in &corpus.sentences {
        out.push_str(&normalize_decompose(s.raw_text()));
        out.push('\n');
    }
    out
}

/// Ensures text ends with exactly one newline.
pub fn with_trailing_newline(mut text: String) -> String {
    while text.ends_with('\n') {
        text.pop();
    }
    text.push('\n');
    text
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: PathBuf::from(path),
        source,
    })
}
