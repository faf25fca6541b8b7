//! Frequency-based diacritics restorer.
//!
//! Words are looked up by their stripped, case-folded letters and receive
//! their most frequent training form. Words never seen in training fall back
//! to the most frequent rune for each letter. Ties go to the form whose
//! decomposed codepoint sequence sorts first.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use sha2::{Digest, Sha256};
use unicode_normalization::UnicodeNormalization;

use crate::script::{BaseChar, CharClass, Rune, ScriptProfile};
use crate::Corpus;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelMeta {
    pub profile: String,
    pub casefold: bool,
    /// SHA-256 over the decomposed training sentences, newline separated.
    pub training_digest: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaselineModel {
    pub meta: ModelMeta,
    pub word_map: BTreeMap<Vec<BaseChar>, Vec<Rune>>,
    pub char_map: BTreeMap<BaseChar, Rune>,
}

fn decomposed(runes: &[Rune]) -> String {
    runes.iter().map(Rune::decomposed).collect()
}

/// Picks the most frequent key, breaking ties on the smallest decomposed
/// rendering.
fn modal<K: Clone>(counts: &BTreeMap<K, u64>, render: impl Fn(&K) -> String) -> Option<K> {
    counts
        .iter()
        .map(|(k, &n)| (n, render(k), k))
        .min_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)))
        .map(|(_, _, k)| k.clone())
}

impl BaselineModel {
    pub fn train(corpus: &Corpus, profile: &ScriptProfile) -> BaselineModel {
        let mut words: BTreeMap<Vec<BaseChar>, BTreeMap<Vec<Rune>, u64>> = BTreeMap::new();
        let mut chars: BTreeMap<BaseChar, BTreeMap<Rune, u64>> = BTreeMap::new();
        let mut hasher = Sha256::new();

        for sentence in &corpus.sentences {
            let text: String = sentence.raw_text().nfd().collect();
            hasher.update(text.as_bytes());
            hasher.update(b"\n");
            for word in sentence.words() {
                let form: Vec<Rune> = word.iter().map(Rune::key).collect();
                let key: Vec<BaseChar> = form.iter().map(Rune::base).collect();
                *words.entry(key).or_default().entry(form).or_insert(0) += 1;
            }
            for r in sentence.runes() {
                *chars
                    .entry(r.base())
                    .or_default()
                    .entry(r.key())
                    .or_insert(0) += 1;
            }
        }

        let word_map = words
            .into_iter()
            .filter_map(|(k, forms)| modal(&forms, |f| decomposed(f)).map(|f| (k, f)))
            .collect();
        let char_map = chars
            .into_iter()
            .filter_map(|(k, forms)| modal(&forms, Rune::decomposed).map(|f| (k, f)))
            .collect();

        let mut training_digest = String::new();
        for byte in hasher.finalize() {
            let _ = write!(training_digest, "{byte:02x}");
        }
        BaselineModel {
            meta: ModelMeta {
                profile: profile.name().into(),
                casefold: profile.casefold(),
                training_digest,
            },
            word_map,
            char_map,
        }
    }

    /// Restores marks on `text`.
    ///
    /// Existing marks are discarded and replaced by the model's prediction.
    /// Letters keep their input casing, all other characters are copied
    /// through, and the result is in decomposed form.
    pub fn diacritize(&self, text: &str, profile: &ScriptProfile) -> String {
        let mut out = String::with_capacity(text.len() * 2);
        let mut token: Vec<char> = Vec::new();
        for c in text.nfd() {
            if c.is_whitespace() {
                self.restore_token(&token, profile, &mut out);
                token.clear();
                out.push(c);
            } else {
                token.push(c);
            }
        }
        self.restore_token(&token, profile, &mut out);
        out.nfd().collect()
    }

    fn restore_token(&self, token: &[char], profile: &ScriptProfile, out: &mut String) {
        let key: Vec<BaseChar> = token
            .iter()
            .filter(|&&c| profile.classify(c) == CharClass::Letter)
            .map(|&c| profile.base_of(c))
            .collect();
        let word = self.word_map.get(&key);
        let mut letter = 0;
        for &c in token {
            match profile.classify(c) {
                CharClass::Letter => {
                    out.push(c);
                    let predicted = match word {
                        Some(form) => Some(&form[letter]),
                        None => self.char_map.get(&key[letter]),
                    };
                    if let Some(r) = predicted {
                        out.extend(r.marks().iter().map(|m| m.codepoint()));
                    }
                    letter += 1;
                }
                CharClass::Mark => {}
                CharClass::Other => out.push(c),
            }
        }
    }
}
