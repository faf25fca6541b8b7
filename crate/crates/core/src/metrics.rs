//! Frequency tables and the four corpus-level diacritic metrics.
//!
//! All surprisals use the natural logarithm. For a rune `r` with base `c`:
//!
//! * rune surprisal `RS(r) = -ln(#(r) / #(c))`
//! * diacritic token surprisal `DTS(r) = -Σ_{d∈r} ln(#(d,c) / #(c))`
//! * diacritic structural surprisal `DSS(r) = -Σ_{d∈r} ln(|T_d(c)| / |T(c)|)`
//! * density `Σ_d #(d) / Σ_c #(c)`
//!
//! where `#(c)` counts every occurrence of base `c`, marked or not, `T(c)` is
//! the set of rune types over `c` and `T_d(c)` those containing mark `d`.
//! The DTS denominator is `#(c)`, not the number of marks seen on `c`.
//! Corpus means are token weighted over all runes, unmarked ones included.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::script::{BaseChar, DiacriticMark, Rune};
use crate::{Corpus, Error, Result};

/// Token counts and type sets accumulated over a corpus.
///
/// Keys absent from a map have count zero. Tables built over disjoint parts
/// of a corpus can be [merged](FrequencyTables::merge) in any order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FrequencyTables {
    rune_count: BTreeMap<Rune, u64>,
    mark_char_count: BTreeMap<(DiacriticMark, BaseChar), u64>,
    base_count: BTreeMap<BaseChar, u64>,
    rune_types: BTreeMap<BaseChar, BTreeSet<Rune>>,
    mark_types: BTreeMap<(DiacriticMark, BaseChar), BTreeSet<Rune>>,
    total_marks: u64,
    total_bases: u64,
}

impl FrequencyTables {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_runes<'a, I>(runes: I) -> Self
    where
        I: IntoIterator<Item = &'a Rune>,
    {
        let mut t = Self::new();
        for r in runes {
            t.add(r);
        }
        t
    }

    pub fn add(&mut self, rune: &Rune) {
        self.add_weighted(&rune.key(), 1);
    }

    fn add_weighted(&mut self, rune: &Rune, n: u64) {
        let base = rune.base();
        self.keep_smallest_encoding(rune);
        *self.rune_count.entry(rune.clone()).or_insert(0) += n;
        *self.base_count.entry(base).or_insert(0) += n;
        self.rune_types
            .entry(base)
            .or_default()
            .insert(rune.clone());
        for &m in rune.marks() {
            *self.mark_char_count.entry((m, base)).or_insert(0) += n;
            self.mark_types
                .entry((m, base))
                .or_default()
                .insert(rune.clone());
        }
        self.total_marks += n * rune.marks().len() as u64;
        self.total_bases += n;
    }

    /// Runes that differ only in the order of same-class marks share a key.
    /// The stored key is the one with the smallest mark sequence, so it does
    /// not depend on which spelling was counted first.
    fn keep_smallest_encoding(&mut self, rune: &Rune) {
        let Some((old, &n)) = self.rune_count.get_key_value(rune) else {
            return;
        };
        if old.marks() <= rune.marks() {
            return;
        }
        let base = rune.base();
        self.rune_count.remove(rune);
        self.rune_count.insert(rune.clone(), n);
        if let Some(set) = self.rune_types.get_mut(&base) {
            set.replace(rune.clone());
        }
        for m in rune.marks() {
            if let Some(set) = self.mark_types.get_mut(&(*m, base)) {
                set.replace(rune.clone());
            }
        }
    }

    /// Adds `other` into `self`.
    pub fn merge(&mut self, other: &FrequencyTables) {
        for (r, &n) in &other.rune_count {
            self.add_weighted(r, n);
        }
    }

    pub fn merged(mut self, other: &FrequencyTables) -> Self {
        self.merge(other);
        self
    }

    /// Rebuilds tables from per-rune counts, e.g. after deserialization.
    /// Every derived table follows from the rune counts.
    pub fn from_rune_counts<I>(counts: I) -> Self
    where
        I: IntoIterator<Item = (Rune, u64)>,
    {
        let mut t = Self::new();
        for (r, n) in counts {
            if n > 0 {
                t.add_weighted(&r.key(), n);
            }
        }
        t
    }

    pub fn rune_counts(&self) -> &BTreeMap<Rune, u64> {
        &self.rune_count
    }

    pub fn mark_char_counts(&self) -> &BTreeMap<(DiacriticMark, BaseChar), u64> {
        &self.mark_char_count
    }

    pub fn base_counts(&self) -> &BTreeMap<BaseChar, u64> {
        &self.base_count
    }

    pub fn rune_types(&self) -> &BTreeMap<BaseChar, BTreeSet<Rune>> {
        &self.rune_types
    }

    pub fn mark_types(&self) -> &BTreeMap<(DiacriticMark, BaseChar), BTreeSet<Rune>> {
        &self.mark_types
    }

    pub fn rune_count(&self, r: &Rune) -> u64 {
        self.rune_count.get(r).copied().unwrap_or(0)
    }

    pub fn base_count(&self, c: BaseChar) -> u64 {
        self.base_count.get(&c).copied().unwrap_or(0)
    }

    pub fn total_marks(&self) -> u64 {
        self.total_marks
    }

    pub fn total_bases(&self) -> u64 {
        self.total_bases
    }

    pub fn distinct_marks(&self) -> usize {
        self.mark_char_count
            .keys()
            .map(|(m, _)| m.codepoint())
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn is_empty(&self) -> bool {
        self.total_bases == 0
    }
}

pub fn build_tables(corpus: &Corpus) -> FrequencyTables {
    FrequencyTables::from_runes(corpus.runes())
}

fn neg_ln_ratio(num: u64, den: u64) -> f64 {
    // -ln(1) is exactly 0; keep it non-negative rather than -0.0
    if num == den {
        0.0
    } else {
        -libm::log(num as f64 / den as f64)
    }
}

pub fn rune_surprisal(r: &Rune, t: &FrequencyTables) -> Result<f64> {
    let n = t.rune_count(r);
    if n == 0 {
        return Err(Error::UnseenRune(r.label()));
    }
    Ok(neg_ln_ratio(n, t.base_count(r.base())))
}

pub fn diacritic_token_surprisal(r: &Rune, t: &FrequencyTables) -> Result<f64> {
    let base = r.base();
    let mut total = 0.0;
    // summing in set order keeps the result independent of encoding order
    for &m in r.mark_set() {
        let n = t.mark_char_count.get(&(m, base)).copied().unwrap_or(0);
        if n == 0 {
            return Err(Error::UnseenMark {
                mark: alloc::format!("{m}"),
                base: alloc::format!("{base}"),
            });
        }
        total += neg_ln_ratio(n, t.base_count(base));
    }
    Ok(total)
}

pub fn diacritic_structural_surprisal(r: &Rune, t: &FrequencyTables) -> Result<f64> {
    let base = r.base();
    let types = t
        .rune_types
        .get(&base)
        .ok_or_else(|| Error::UnseenBase(alloc::format!("{base}")))?
        .len() as u64;
    let mut total = 0.0;
    for &m in r.mark_set() {
        let with_mark = t.mark_types.get(&(m, base)).map_or(0, BTreeSet::len) as u64;
        if with_mark == 0 {
            return Err(Error::UnseenMark {
                mark: alloc::format!("{m}"),
                base: alloc::format!("{base}"),
            });
        }
        total += neg_ln_ratio(with_mark, types);
    }
    Ok(total)
}

pub fn density(t: &FrequencyTables) -> Result<f64> {
    if t.total_bases == 0 {
        return Err(Error::EmptyCorpus);
    }
    Ok(t.total_marks as f64 / t.total_bases as f64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RuneMetrics {
    pub rune: Rune,
    pub count: u64,
    pub rs: f64,
    pub dts: f64,
    pub dss: f64,
}

/// Density plus token-weighted means of RS, DTS and DSS.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricReport {
    pub density: f64,
    pub mean_rs: f64,
    pub mean_dts: f64,
    pub mean_dss: f64,
    pub rune_token_count: u64,
    pub per_rune: Option<Vec<RuneMetrics>>,
}

impl MetricReport {
    pub fn from_tables(t: &FrequencyTables, per_rune: bool) -> Result<Self> {
        let density = density(t)?;
        let (mut rs, mut dts, mut dss) = (0.0, 0.0, 0.0);
        let mut breakdown = Vec::new();
        for (r, &n) in &t.rune_count {
            let row = RuneMetrics {
                rune: r.clone(),
                count: n,
                rs: rune_surprisal(r, t)?,
                dts: diacritic_token_surprisal(r, t)?,
                dss: diacritic_structural_surprisal(r, t)?,
            };
            let w = n as f64;
            rs += w * row.rs;
            dts += w * row.dts;
            dss += w * row.dss;
            if per_rune {
                breakdown.push(row);
            }
        }
        let total = t.total_bases as f64;
        Ok(MetricReport {
            density,
            mean_rs: rs / total,
            mean_dts: dts / total,
            mean_dss: dss / total,
            rune_token_count: t.total_bases,
            per_rune: per_rune.then_some(breakdown),
        })
    }
}

pub fn metric_report(corpus: &Corpus) -> Result<MetricReport> {
    MetricReport::from_tables(&build_tables(corpus), false)
}
