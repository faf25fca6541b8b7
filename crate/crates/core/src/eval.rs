//! Word- and rune-level restoration accuracy.
//!
//! Comparison is case-folded and works on canonical mark sets, so two
//! encodings of the same diacritized letter match. Words are the
//! whitespace-delimited groups of the gold text that contain a letter.

use crate::script::simple_lowercase;
use crate::{Corpus, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalReport {
    pub word_accuracy: f64,
    pub rune_accuracy: f64,
    pub n_words: usize,
    pub n_runes: usize,
    pub correct_words: usize,
    pub correct_runes: usize,
}

pub fn evaluate(gold: &Corpus, hyp: &Corpus) -> Result<EvalReport> {
    if gold.len() != hyp.len() {
        return Err(Error::LineCountMismatch {
            gold: gold.len(),
            hyp: hyp.len(),
        });
    }
    let (mut n_words, mut n_runes, mut ok_words, mut ok_runes) = (0, 0, 0, 0);
    for (g, h) in gold.sentences.iter().zip(&hyp.sentences) {
        let (gr, hr) = (g.runes(), h.runes());
        let fold = |c: char| simple_lowercase(c);
        let mismatch = gr
            .iter()
            .zip(hr)
            .position(|(a, b)| fold(a.base().0) != fold(b.base().0))
            .or_else(|| (gr.len() != hr.len()).then(|| gr.len().min(hr.len())));
        if let Some(position) = mismatch {
            return Err(Error::BaseMismatch {
                line: g.line_index(),
                position: position + 1,
            });
        }
        let correct: alloc::vec::Vec<bool> =
            gr.iter().zip(hr).map(|(a, b)| a.eq_folded(b)).collect();
        n_runes += correct.len();
        ok_runes += correct.iter().filter(|&&c| c).count();
        let seg = g.segmentation();
        let ends = seg.word_starts.iter().skip(1).copied().chain([gr.len()]);
        for (&start, end) in seg.word_starts.iter().zip(ends) {
            n_words += 1;
            if correct[start..end].iter().all(|&c| c) {
                ok_words += 1;
            }
        }
    }
    if n_runes == 0 {
        return Err(Error::EmptyCorpus);
    }
    Ok(EvalReport {
        word_accuracy: 100.0 * ok_words as f64 / n_words as f64,
        rune_accuracy: 100.0 * ok_runes as f64 / n_runes as f64,
        n_words,
        n_runes,
        correct_words: ok_words,
        correct_runes: ok_runes,
    })
}
