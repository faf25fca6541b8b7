use alloc::string::String;
use alloc::vec::Vec;

use crate::script::{segment_runes, Rune, ScriptProfile, Segmentation};

/// One line of a corpus together with its runes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sentence {
    raw_text: String,
    segmentation: Segmentation,
    line_index: usize,
}

impl Sentence {
    pub fn new(raw_text: impl Into<String>, line_index: usize, profile: &ScriptProfile) -> Self {
        let raw_text = raw_text.into();
        let segmentation = segment_runes(&raw_text, profile);
        Sentence {
            raw_text,
            segmentation,
            line_index,
        }
    }

    pub fn raw_text(&self) -> &str {
        &self.raw_text
    }

    pub fn runes(&self) -> &[Rune] {
        &self.segmentation.runes
    }

    pub fn segmentation(&self) -> &Segmentation {
        &self.segmentation
    }

    pub fn words(&self) -> impl Iterator<Item = &[Rune]> + '_ {
        self.segmentation.words()
    }

    /// Position of the sentence in its source (1-based line number for
    /// plain text, first line of the block for CoNLL-U).
    pub fn line_index(&self) -> usize {
        self.line_index
    }
}

/// A collection of sentences segmented under one script profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corpus {
    pub sentences: Vec<Sentence>,
    pub language: String,
    pub family: String,
    pub profile_name: String,
}

impl Corpus {
    pub fn new(sentences: Vec<Sentence>, profile: &ScriptProfile) -> Self {
        Corpus {
            sentences,
            language: String::new(),
            family: String::new(),
            profile_name: profile.name().into(),
        }
    }

    /// Builds a corpus from lines; blank lines are skipped and line numbers
    /// start at 1.
    pub fn from_lines<'a, I>(lines: I, profile: &ScriptProfile) -> Self
    where
        I: IntoIterator<Item = &'a str>,
    {
        let sentences = lines
            .into_iter()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| Sentence::new(l.trim_end_matches('\r'), i + 1, profile))
            .collect();
        Corpus::new(sentences, profile)
    }

    pub fn with_labels(mut self, language: impl Into<String>, family: impl Into<String>) -> Self {
        self.language = language.into();
        self.family = family.into();
        self
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn rune_count(&self) -> usize {
        self.sentences.iter().map(|s| s.runes().len()).sum()
    }

    pub fn orphan_marks(&self) -> usize {
        self.sentences
            .iter()
            .map(|s| s.segmentation().orphan_marks)
            .sum()
    }

    pub fn runes(&self) -> impl Iterator<Item = &Rune> + '_ {
        self.sentences.iter().flat_map(|s| s.runes().iter())
    }

    /// Same labels and profile, different sentences.
    pub fn with_sentences(&self, sentences: Vec<Sentence>) -> Corpus {
        Corpus {
            sentences,
            language: self.language.clone(),
            family: self.family.clone(),
            profile_name: self.profile_name.clone(),
        }
    }
}
