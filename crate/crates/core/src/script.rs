//! Rune model: decomposition, segmentation into runes, stripping and
//! rendering.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use unicode_general_category::{get_general_category, GeneralCategory};
use unicode_normalization::char::canonical_combining_class;
use unicode_normalization::UnicodeNormalization;

use crate::{Error, Result};

/// Formats a scalar value as `U+XXXX`.
pub fn codepoint_label(c: char) -> String {
    alloc::format!("U+{:04X}", c as u32)
}

/// Parses a `U+XXXX` label (the `U+` prefix is optional).
pub fn parse_codepoint(label: &str) -> Option<char> {
    let hex = label
        .strip_prefix("U+")
        .or_else(|| label.strip_prefix("u+"))
        .unwrap_or(label);
    if hex.is_empty() || hex.len() > 6 {
        return None;
    }
    u32::from_str_radix(hex, 16).ok().and_then(char::from_u32)
}

/// Simple (single character) lowercase mapping. Characters whose lowercase
/// form expands to several characters are returned unchanged.
pub fn simple_lowercase(c: char) -> char {
    let mut lower = c.to_lowercase();
    match (lower.next(), lower.next()) {
        (Some(l), None) => l,
        _ => c,
    }
}

fn simple_uppercase(c: char) -> char {
    let mut upper = c.to_uppercase();
    match (upper.next(), upper.next()) {
        (Some(u), None) => u,
        _ => c,
    }
}

/// A combining sign attached to a base letter.
///
/// Marks order by canonical combining class first and codepoint second,
/// which is the order they take inside a [`Rune`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiacriticMark {
    codepoint: char,
    canonical_class: u8,
}

impl DiacriticMark {
    pub fn new(codepoint: char) -> Self {
        DiacriticMark {
            codepoint,
            canonical_class: canonical_combining_class(codepoint),
        }
    }

    pub fn codepoint(&self) -> char {
        self.codepoint
    }

    pub fn canonical_class(&self) -> u8 {
        self.canonical_class
    }
}

impl Ord for DiacriticMark {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.canonical_class, self.codepoint).cmp(&(other.canonical_class, other.codepoint))
    }
}

impl PartialOrd for DiacriticMark {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DiacriticMark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U+{:04X}", self.codepoint as u32)
    }
}

/// A base letter, in the (optionally case-folded) form used for counting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BaseChar(pub char);

impl BaseChar {
    pub fn codepoint(&self) -> char {
        self.0
    }
}

impl fmt::Display for BaseChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U+{:04X}", self.0 as u32)
    }
}

/// One base letter plus its duplicate-free marks.
///
/// Marks are kept in canonical encoding order (stable by combining class),
/// which is what rendering needs: marks of equal class do not commute under
/// composition. Identity uses the marks sorted by class and then codepoint,
/// so equality, ordering and hashing depend on the base and the mark set
/// only. The recorded source casing never takes part in rune identity.
#[derive(Clone, Debug)]
pub struct Rune {
    base: BaseChar,
    marks: Vec<DiacriticMark>,
    identity: Vec<DiacriticMark>,
    uppercase: bool,
}

impl Rune {
    pub fn new<I>(base: char, marks: I) -> Self
    where
        I: IntoIterator<Item = char>,
    {
        Self::from_parts(
            BaseChar(base),
            marks.into_iter().map(DiacriticMark::new).collect(),
            false,
        )
    }

    pub fn unmarked(base: char) -> Self {
        Rune {
            base: BaseChar(base),
            marks: Vec::new(),
            identity: Vec::new(),
            uppercase: false,
        }
    }

    pub fn from_parts(base: BaseChar, marks: Vec<DiacriticMark>, uppercase: bool) -> Self {
        let mut ordered: Vec<DiacriticMark> = Vec::with_capacity(marks.len());
        for m in marks {
            if !ordered.iter().any(|o| o.codepoint == m.codepoint) {
                ordered.push(m);
            }
        }
        ordered.sort_by_key(|m| m.canonical_class);
        let mut identity = ordered.clone();
        identity.sort();
        Rune {
            base,
            marks: ordered,
            identity,
            uppercase,
        }
    }

    pub fn base(&self) -> BaseChar {
        self.base
    }

    /// Marks in encoding order.
    pub fn marks(&self) -> &[DiacriticMark] {
        &self.marks
    }

    /// Marks sorted by combining class, then codepoint.
    pub fn mark_set(&self) -> &[DiacriticMark] {
        &self.identity
    }

    pub fn is_marked(&self) -> bool {
        !self.marks.is_empty()
    }

    /// Whether the letter this rune was read from was uppercase.
    pub fn original_uppercase(&self) -> bool {
        self.uppercase
    }

    pub fn with_original_uppercase(mut self, uppercase: bool) -> Self {
        self.uppercase = uppercase;
        self
    }

    pub fn stripped(&self) -> Rune {
        Rune {
            base: self.base,
            marks: Vec::new(),
            identity: Vec::new(),
            uppercase: self.uppercase,
        }
    }

    /// Copy with the casing flag cleared, used as a table key.
    pub fn key(&self) -> Rune {
        Rune {
            uppercase: false,
            ..self.clone()
        }
    }

    /// Rune equality after lowercasing both bases.
    pub fn eq_folded(&self, other: &Rune) -> bool {
        simple_lowercase(self.base.0) == simple_lowercase(other.base.0)
            && self.identity == other.identity
    }

    /// Appends the decomposed encoding of this rune, restoring the source
    /// casing when it was recorded.
    pub fn write_decomposed(&self, out: &mut String) {
        let base = if self.uppercase {
            simple_uppercase(self.base.0)
        } else {
            self.base.0
        };
        out.push(base);
        out.extend(self.marks.iter().map(|m| m.codepoint));
    }

    /// Decomposed encoding of the case-folded rune.
    pub fn decomposed(&self) -> String {
        let mut s = String::new();
        s.push(self.base.0);
        s.extend(self.marks.iter().map(|m| m.codepoint));
        s
    }

    /// `U+0061+U+0301` style key.
    pub fn label(&self) -> String {
        let mut s = codepoint_label(self.base.0);
        for m in &self.marks {
            s.push('+');
            s.push_str(&codepoint_label(m.codepoint));
        }
        s
    }

    /// Inverse of [`Rune::label`].
    pub fn parse_label(label: &str) -> Option<Rune> {
        let mut parts = label.split('+');
        // "U+0061+U+0301" splits into "U", "0061", "U", "0301".
        let mut cps = Vec::new();
        while let Some(p) = parts.next() {
            let hex = if p == "U" || p == "u" {
                parts.next()?
            } else {
                p
            };
            cps.push(parse_codepoint(hex)?);
        }
        let (&base, marks) = cps.split_first()?;
        Some(Rune::new(base, marks.iter().copied()))
    }
}

impl PartialEq for Rune {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.identity == other.identity
    }
}

impl Eq for Rune {}

impl Ord for Rune {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base
            .cmp(&other.base)
            .then_with(|| self.identity.cmp(&other.identity))
    }
}

impl PartialOrd for Rune {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Rune {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.base.hash(state);
        self.identity.hash(state);
    }
}

impl fmt::Display for Rune {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.decomposed())
    }
}

/// How a character takes part in segmentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharClass {
    Letter,
    Mark,
    Other,
}

/// Per-script adjustments to mark detection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptProfile {
    name: String,
    extra_mark_allowlist: BTreeSet<char>,
    mark_denylist: BTreeSet<char>,
    casefold: bool,
}

impl ScriptProfile {
    pub fn new(
        name: impl Into<String>,
        extra_mark_allowlist: BTreeSet<char>,
        mark_denylist: BTreeSet<char>,
        casefold: bool,
    ) -> Result<Self> {
        let name = name.into();
        if let Some(&c) = extra_mark_allowlist.intersection(&mark_denylist).next() {
            return Err(Error::ProfileConflict {
                profile: name,
                codepoint: codepoint_label(c),
            });
        }
        Ok(ScriptProfile {
            name,
            extra_mark_allowlist,
            mark_denylist,
            casefold,
        })
    }

    pub fn latin_generic() -> Self {
        ScriptProfile {
            name: "latin-generic".into(),
            extra_mark_allowlist: BTreeSet::new(),
            mark_denylist: BTreeSet::new(),
            casefold: true,
        }
    }

    /// Hebrew points count as diacritics; cantillation accents do not.
    pub fn hebrew() -> Self {
        ScriptProfile {
            name: "hebrew".into(),
            extra_mark_allowlist: BTreeSet::new(),
            mark_denylist: ('\u{0591}'..='\u{05AF}').collect(),
            casefold: true,
        }
    }

    /// Harakat, shadda, sukun and dagger alef count as diacritics; Quranic
    /// annotation signs do not.
    pub fn arabic() -> Self {
        let deny = ('\u{0610}'..='\u{061A}')
            .chain('\u{06D6}'..='\u{06DC}')
            .chain('\u{06DF}'..='\u{06E4}')
            .chain(['\u{06E7}', '\u{06E8}'])
            .chain('\u{06EA}'..='\u{06ED}')
            .collect();
        ScriptProfile {
            name: "arabic".into(),
            extra_mark_allowlist: BTreeSet::new(),
            mark_denylist: deny,
            casefold: true,
        }
    }

    /// Vowel signs, virama, nukta and the nasalisation signs all count.
    pub fn bengali() -> Self {
        ScriptProfile {
            name: "bengali".into(),
            extra_mark_allowlist: BTreeSet::new(),
            mark_denylist: BTreeSet::new(),
            casefold: true,
        }
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "latin-generic" | "latin" => Some(Self::latin_generic()),
            "hebrew" => Some(Self::hebrew()),
            "arabic" => Some(Self::arabic()),
            "bengali" => Some(Self::bengali()),
            _ => None,
        }
    }

    pub const BUILTIN_NAMES: [&'static str; 4] = ["latin-generic", "hebrew", "arabic", "bengali"];

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn extra_mark_allowlist(&self) -> &BTreeSet<char> {
        &self.extra_mark_allowlist
    }

    pub fn mark_denylist(&self) -> &BTreeSet<char> {
        &self.mark_denylist
    }

    pub fn casefold(&self) -> bool {
        self.casefold
    }

    pub fn classify(&self, c: char) -> CharClass {
        if self.extra_mark_allowlist.contains(&c) {
            return CharClass::Mark;
        }
        if self.mark_denylist.contains(&c) {
            return CharClass::Other;
        }
        use GeneralCategory::*;
        match get_general_category(c) {
            NonspacingMark | SpacingMark => CharClass::Mark,
            UppercaseLetter | LowercaseLetter | TitlecaseLetter | ModifierLetter | OtherLetter => {
                CharClass::Letter
            }
            _ => CharClass::Other,
        }
    }

    /// Counting form of a letter.
    pub fn base_of(&self, letter: char) -> BaseChar {
        if self.casefold {
            BaseChar(simple_lowercase(letter))
        } else {
            BaseChar(letter)
        }
    }
}

impl Default for ScriptProfile {
    fn default() -> Self {
        Self::latin_generic()
    }
}

/// Canonical decomposition (NFD).
pub fn normalize_decompose(text: &str) -> String {
    text.nfd().collect()
}

/// Runes of one line (or document), grouped into whitespace-delimited words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Segmentation {
    pub runes: Vec<Rune>,
    /// Index into `runes` where each word starts.
    pub word_starts: Vec<usize>,
    /// Marks dropped because no letter preceded them on their line.
    pub orphan_marks: usize,
}

impl Segmentation {
    pub fn words(&self) -> impl Iterator<Item = &[Rune]> + '_ {
        let ends = self
            .word_starts
            .iter()
            .skip(1)
            .copied()
            .chain(core::iter::once(self.runes.len()));
        self.word_starts
            .iter()
            .zip(ends)
            .map(move |(&s, e)| &self.runes[s..e])
    }

    pub fn word_count(&self) -> usize {
        self.word_starts.len()
    }

    pub fn mark_tokens(&self) -> usize {
        self.runes.iter().map(|r| r.marks.len()).sum()
    }
}

/// Splits text into runes. Input need not be decomposed already.
///
/// Marks attach to the nearest preceding letter on the same line; a mark
/// with no such letter is counted in `orphan_marks` and dropped.
/// Characters that are neither letters nor marks produce nothing, but
/// whitespace starts a new word.
pub fn segment_runes(text: &str, profile: &ScriptProfile) -> Segmentation {
    let mut seg = Segmentation::default();
    let mut current: Option<(BaseChar, bool, Vec<DiacriticMark>)> = None;
    let mut at_word_start = true;

    fn flush(seg: &mut Segmentation, cur: &mut Option<(BaseChar, bool, Vec<DiacriticMark>)>) {
        if let Some((base, upper, marks)) = cur.take() {
            seg.runes.push(Rune::from_parts(base, marks, upper));
        }
    }

    for c in text.nfd() {
        match profile.classify(c) {
            CharClass::Letter => {
                flush(&mut seg, &mut current);
                if at_word_start {
                    seg.word_starts.push(seg.runes.len());
                    at_word_start = false;
                }
                current = Some((profile.base_of(c), c.is_uppercase(), Vec::new()));
            }
            CharClass::Mark => match current.as_mut() {
                Some((_, _, marks)) => marks.push(DiacriticMark::new(c)),
                None => seg.orphan_marks += 1,
            },
            CharClass::Other => {
                if c == '\n' || c == '\r' {
                    flush(&mut seg, &mut current);
                }
                if c.is_whitespace() {
                    at_word_start = true;
                }
            }
        }
    }
    flush(&mut seg, &mut current);
    seg
}

/// Removes every mark, keeping bases.
pub fn strip(runes: &[Rune]) -> Vec<Rune> {
    runes.iter().map(Rune::stripped).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderForm {
    Decomposed,
    Composed,
}

/// Serializes runes back to text (letters and marks only).
pub fn render(runes: &[Rune], form: RenderForm) -> String {
    let mut out = String::new();
    for r in runes {
        r.write_decomposed(&mut out);
    }
    match form {
        RenderForm::Decomposed => out.nfd().collect(),
        RenderForm::Composed => out.nfc().collect(),
    }
}

/// Text-level stripping: removes every mark from `text` and keeps all other
/// characters, including case and separators. Output is decomposed.
pub fn strip_text(text: &str, profile: &ScriptProfile) -> String {
    text.nfd()
        .filter(|&c| profile.classify(c) != CharClass::Mark)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    const SPANISH: &str = "El niño bebió café en la mañana";
    const HEBREW: &str = "הַיֶּלֶד שָׁתָה קָפֶה בַּבֹּקֶר";

    fn distinct_marks(seg: &Segmentation) -> usize {
        seg.runes
            .iter()
            .flat_map(|r| r.marks().iter().map(|m| m.codepoint()))
            .collect::<BTreeSet<_>>()
            .len()
    }

    #[test]
    fn decomposes_precomposed_latin() {
        assert_eq!(normalize_decompose("\u{00E1}"), "a\u{0301}");
        assert_eq!(normalize_decompose("\u{1EAF}"), "a\u{0306}\u{0301}");
        assert_eq!(normalize_decompose("abc"), "abc");
        let once = normalize_decompose("Ắ ñ");
        assert_eq!(normalize_decompose(&once), once);
    }

    #[test]
    fn spanish_example_counts() {
        let seg = segment_runes(SPANISH, &ScriptProfile::latin_generic());
        assert_eq!(seg.runes.len(), 25);
        assert_eq!(seg.runes.iter().filter(|r| r.is_marked()).count(), 4);
        assert_eq!(seg.mark_tokens(), 4);
        assert_eq!(distinct_marks(&seg), 2);
        assert_eq!(seg.word_count(), 7);
        assert_eq!(seg.orphan_marks, 0);
    }

    #[test]
    fn hebrew_example_counts() {
        let seg = segment_runes(HEBREW, &ScriptProfile::hebrew());
        assert_eq!(seg.runes.len(), 14);
        assert_eq!(seg.mark_tokens(), 14);
        assert_eq!(distinct_marks(&seg), 6);
    }

    #[test]
    fn empty_text_has_no_runes() {
        let seg = segment_runes("", &ScriptProfile::default());
        assert!(seg.runes.is_empty());
        assert_eq!(seg.word_count(), 0);
    }

    #[test]
    fn strip_spanish_example() {
        let seg = segment_runes(SPANISH, &ScriptProfile::default());
        let stripped = strip(&seg.runes);
        assert_eq!(stripped.len(), 25);
        assert!(stripped.iter().all(|r| !r.is_marked()));
        let letters: String = stripped.iter().map(|r| r.base().0).collect();
        assert_eq!(letters, "elninobebiocafeenlamanana");
        assert_eq!(strip(&stripped), stripped);
    }

    #[test]
    fn strip_drops_marks() {
        let runes = vec![Rune::new('a', ['\u{0301}']), Rune::new('n', ['\u{0303}'])];
        assert_eq!(
            strip(&runes),
            vec![Rune::unmarked('a'), Rune::unmarked('n')]
        );
    }

    #[test]
    fn render_forms() {
        let r = [Rune::new('a', ['\u{0301}'])];
        assert_eq!(render(&r, RenderForm::Composed), "\u{00E1}");
        let r = [Rune::new('a', ['\u{0306}', '\u{0301}'])];
        assert_eq!(render(&r, RenderForm::Composed), "\u{1EAF}");
        // same mark set, other encoding order: same rune, different glyph
        let swapped = Rune::new('a', ['\u{0301}', '\u{0306}']);
        assert_eq!(swapped, r[0]);
        assert_ne!(render(&[swapped], RenderForm::Composed), "\u{1EAF}");
        let bet = [Rune::new('\u{05D1}', ['\u{05B8}', '\u{05BC}'])];
        let out = render(&bet, RenderForm::Decomposed);
        // three codepoints, qamats (class 18) before dagesh (class 21)
        assert_eq!(
            out.chars().collect::<Vec<_>>(),
            vec!['\u{05D1}', '\u{05B8}', '\u{05BC}']
        );
        assert_eq!(out, normalize_decompose("\u{05D1}\u{05BC}\u{05B8}"));
    }

    #[test]
    fn marks_sorted_by_class_then_codepoint() {
        // dagesh (class 21) sorts after qamats (class 18)
        let r = Rune::new('\u{05D1}', ['\u{05BC}', '\u{05B8}']);
        let cps: Vec<char> = r.marks().iter().map(|m| m.codepoint()).collect();
        assert_eq!(cps, vec!['\u{05B8}', '\u{05BC}']);
        // breve and acute share class 230: encoding order kept, identity sorted
        let r = segment_runes("\u{1EAF}", &ScriptProfile::default())
            .runes
            .remove(0);
        let enc: Vec<char> = r.marks().iter().map(|m| m.codepoint()).collect();
        let set: Vec<char> = r.mark_set().iter().map(|m| m.codepoint()).collect();
        assert_eq!(enc, vec!['\u{0306}', '\u{0301}']);
        assert_eq!(set, vec!['\u{0301}', '\u{0306}']);
    }

    #[test]
    fn duplicate_marks_collapse() {
        let seg = segment_runes("a\u{0301}\u{0301}", &ScriptProfile::default());
        assert_eq!(seg.runes, vec![Rune::new('a', ['\u{0301}'])]);
        assert_eq!(seg.mark_tokens(), 1);
    }

    #[test]
    fn case_fold_keeps_identity() {
        let p = ScriptProfile::default();
        let upper = segment_runes("É", &p).runes;
        let lower = segment_runes("é", &p).runes;
        assert_eq!(upper, lower);
        assert!(upper[0].original_uppercase());
        assert!(!lower[0].original_uppercase());
    }

    #[test]
    fn casefold_off_keeps_case() {
        let p = ScriptProfile::new("cs", BTreeSet::new(), BTreeSet::new(), false).unwrap();
        assert_ne!(segment_runes("É", &p).runes, segment_runes("é", &p).runes);
    }

    #[test]
    fn orphan_marks_are_counted_per_line() {
        let seg = segment_runes("\u{0301}ab\n\u{0300}c", &ScriptProfile::default());
        assert_eq!(seg.orphan_marks, 2);
        assert_eq!(seg.runes.len(), 3);
        assert!(seg.runes.iter().all(|r| !r.is_marked()));
        // whitespace does not detach a mark from the preceding letter
        let seg = segment_runes("a \u{0301}", &ScriptProfile::default());
        assert_eq!(seg.orphan_marks, 0);
        assert_eq!(seg.runes, vec![Rune::new('a', ['\u{0301}'])]);
    }

    #[test]
    fn non_letters_produce_no_runes() {
        let seg = segment_runes("a1, b-c! 42 --", &ScriptProfile::default());
        let bases: String = seg.runes.iter().map(|r| r.base().0).collect();
        assert_eq!(bases, "abc");
        assert_eq!(seg.word_count(), 2);
        let words: Vec<usize> = seg.words().map(<[Rune]>::len).collect();
        assert_eq!(words, vec![1, 2]);
    }

    #[test]
    fn profile_lists() {
        let allow: BTreeSet<char> = ['\u{02BC}'].into_iter().collect();
        let p = ScriptProfile::new("x", allow.clone(), BTreeSet::new(), true).unwrap();
        // U+02BC is a modifier letter; allowlisting turns it into a mark
        assert_eq!(
            segment_runes("a\u{02BC}", &p).runes,
            vec![Rune::new('a', ['\u{02BC}'])]
        );
        assert!(matches!(
            ScriptProfile::new("y", allow.clone(), allow, true),
            Err(Error::ProfileConflict { .. })
        ));
        let heb = ScriptProfile::hebrew();
        // etnahta is cantillation
        assert_eq!(heb.classify('\u{0591}'), CharClass::Other);
        assert_eq!(heb.classify('\u{05BC}'), CharClass::Mark);
    }

    #[test]
    fn turkish_dotted_capital_i() {
        // U+0130 decomposes to I + U+0307, so it yields i with a dot above
        let seg = segment_runes("\u{0130}", &ScriptProfile::default());
        assert_eq!(seg.runes, vec![Rune::new('i', ['\u{0307}'])]);
    }

    #[test]
    fn labels_round_trip() {
        let r = Rune::new('a', ['\u{0306}', '\u{0301}']);
        assert_eq!(r.label(), "U+0061+U+0306+U+0301");
        assert_eq!(Rune::parse_label(&r.label()), Some(r));
        assert_eq!(
            Rune::parse_label("U+05D1"),
            Some(Rune::unmarked('\u{05D1}'))
        );
        assert_eq!(Rune::parse_label("nonsense"), None);
        assert_eq!(parse_codepoint("U+05BC"), Some('\u{05BC}'));
        assert_eq!(codepoint_label('a').to_string(), "U+0061");
    }

    #[test]
    fn strip_text_keeps_separators() {
        assert_eq!(
            strip_text("¡Él, niño!", &ScriptProfile::default()),
            "¡El, nino!"
        );
    }
}
