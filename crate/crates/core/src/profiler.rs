//! Descriptive diacritic usage statistics for one corpus.

use alloc::collections::BTreeSet;

use crate::script::Rune;
use crate::{Corpus, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SystemClass {
    /// No letter carries more than one mark.
    Single,
    /// At least one letter carries two or more marks.
    Multi,
}

impl SystemClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            SystemClass::Single => "Single",
            SystemClass::Multi => "Multi",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusProfile {
    /// Mark tokens per hundred rune tokens.
    pub density_pct: f64,
    /// Share of all rune tokens carrying two or more marks.
    pub multi_diacritic_pct: f64,
    pub pct_words_diacritized: f64,
    pub pct_lines_diacritized: f64,
    /// Marks per word, over words with at least one mark.
    pub mean_diacs_per_diacritized_word: f64,
    /// Distinct rune types that carry at least one mark.
    pub distinct_marked_runes: usize,
    pub system_class: SystemClass,
    pub orphan_marks: usize,
}

fn pct(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        0.0
    } else {
        100.0 * part as f64 / whole as f64
    }
}

pub fn profile(corpus: &Corpus) -> Result<CorpusProfile> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let (mut runes, mut marks, mut multi) = (0usize, 0usize, 0usize);
    let (mut words, mut diac_words, mut marks_in_diac_words) = (0usize, 0usize, 0usize);
    let mut diac_lines = 0usize;
    let mut marked_types: BTreeSet<Rune> = BTreeSet::new();

    for sentence in &corpus.sentences {
        let mut line_marks = 0usize;
        for word in sentence.words() {
            let word_marks: usize = word.iter().map(|r| r.marks().len()).sum();
            words += 1;
            if word_marks > 0 {
                diac_words += 1;
                marks_in_diac_words += word_marks;
            }
        }
        for r in sentence.runes() {
            runes += 1;
            let k = r.marks().len();
            marks += k;
            line_marks += k;
            if k >= 2 {
                multi += 1;
            }
            if k > 0 && !marked_types.contains(r) {
                marked_types.insert(r.key());
            }
        }
        if line_marks > 0 {
            diac_lines += 1;
        }
    }
    if words == 0 {
        return Err(Error::NoWords);
    }
    Ok(CorpusProfile {
        density_pct: pct(marks, runes),
        multi_diacritic_pct: pct(multi, runes),
        pct_words_diacritized: pct(diac_words, words),
        pct_lines_diacritized: pct(diac_lines, corpus.len()),
        mean_diacs_per_diacritized_word: if diac_words == 0 {
            0.0
        } else {
            marks_in_diac_words as f64 / diac_words as f64
        },
        distinct_marked_runes: marked_types.len(),
        system_class: if multi > 0 {
            SystemClass::Multi
        } else {
            SystemClass::Single
        },
        orphan_marks: corpus.orphan_marks(),
    })
}
