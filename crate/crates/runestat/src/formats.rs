//! JSON documents (script profiles, frequency tables, baseline models) and
//! TSV result tables.
//!
//! Runes are written as codepoint labels: `U+006E+U+0303` is n with a
//! combining tilde. Words are space-separated rune labels.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use runestat_core::script::{codepoint_label, parse_codepoint};
use runestat_core::{
    BaseChar, BaselineModel, FrequencyTables, ModelMeta, Rune, ScriptProfile, TableRow,
};

use crate::io::read_utf8;
use crate::Error;

pub const FORMAT_VERSION: u32 = 1;

fn bad(what: &str, detail: impl std::fmt::Display) -> Error {
    Error::Format(format!("{what}: {detail}"))
}

fn parse_rune(label: &str) -> Result<Rune, Error> {
    Rune::parse_label(label).ok_or_else(|| bad("bad rune label", label))
}

fn parse_base(label: &str) -> Result<BaseChar, Error> {
    parse_codepoint(label)
        .map(BaseChar)
        .ok_or_else(|| bad("bad codepoint label", label))
}

fn word_label(runes: &[Rune]) -> String {
    runes.iter().map(Rune::label).collect::<Vec<_>>().join(" ")
}

fn parse_word(label: &str) -> Result<Vec<Rune>, Error> {
    label
        .split(' ')
        .filter(|s| !s.is_empty())
        .map(parse_rune)
        .collect()
}

// ---------------------------------------------------------------- profiles

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProfileDoc {
    pub name: String,
    #[serde(default)]
    pub extra_mark_allowlist: Vec<String>,
    #[serde(default)]
    pub mark_denylist: Vec<String>,
    #[serde(default = "default_true")]
    pub casefold: bool,
}

fn default_true() -> bool {
    true
}

impl ProfileDoc {
    pub fn from_profile(p: &ScriptProfile) -> Self {
        ProfileDoc {
            name: p.name().to_string(),
            extra_mark_allowlist: p
                .extra_mark_allowlist()
                .iter()
                .map(|&c| codepoint_label(c))
                .collect(),
            mark_denylist: p
                .mark_denylist()
                .iter()
                .map(|&c| codepoint_label(c))
                .collect(),
            casefold: p.casefold(),
        }
    }

    pub fn into_profile(self) -> Result<ScriptProfile, Error> {
        let parse = |xs: Vec<String>| -> Result<_, Error> {
            xs.iter()
                .map(|s| parse_codepoint(s).ok_or_else(|| bad("bad codepoint in profile", s)))
                .collect()
        };
        Ok(ScriptProfile::new(
            self.name,
            parse(self.extra_mark_allowlist)?,
            parse(self.mark_denylist)?,
            self.casefold,
        )?)
    }
}

pub fn parse_profile_json(text: &str) -> Result<ScriptProfile, Error> {
    let doc: ProfileDoc = serde_json::from_str(text).map_err(|e| bad("profile json", e))?;
    doc.into_profile()
}

/// Resolves `--profile`: a built-in name or a path to a profile document.
pub fn load_profile(spec: &str) -> Result<ScriptProfile, Error> {
    if let Some(p) = ScriptProfile::builtin(spec) {
        return Ok(p);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Error::UnknownProfile(spec.to_string()));
    }
    parse_profile_json(&read_utf8(path)?)
}

// ------------------------------------------------------------------ tables

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TablesDoc {
    pub format_version: u32,
    pub total_bases: u64,
    pub total_marks: u64,
    pub rune_count: BTreeMap<String, u64>,
    pub base_count: BTreeMap<String, u64>,
    /// Keyed by `base+mark`.
    pub mark_char_count: BTreeMap<String, u64>,
    pub rune_types: BTreeMap<String, Vec<String>>,
    /// Keyed by `base+mark`.
    pub mark_types: BTreeMap<String, Vec<String>>,
}

impl TablesDoc {
    pub fn from_tables(t: &FrequencyTables) -> Self {
        let pair = |m: &runestat_core::DiacriticMark, c: &BaseChar| {
            format!(
                "{}+{}",
                codepoint_label(c.0),
                codepoint_label(m.codepoint())
            )
        };
        let set =
            |s: &std::collections::BTreeSet<Rune>| s.iter().map(Rune::label).collect::<Vec<_>>();
        TablesDoc {
            format_version: FORMAT_VERSION,
            total_bases: t.total_bases(),
            total_marks: t.total_marks(),
            rune_count: t
                .rune_counts()
                .iter()
                .map(|(r, &n)| (r.label(), n))
                .collect(),
            base_count: t
                .base_counts()
                .iter()
                .map(|(c, &n)| (codepoint_label(c.0), n))
                .collect(),
            mark_char_count: t
                .mark_char_counts()
                .iter()
                .map(|((m, c), &n)| (pair(m, c), n))
                .collect(),
            rune_types: t
                .rune_types()
                .iter()
                .map(|(c, s)| (codepoint_label(c.0), set(s)))
                .collect(),
            mark_types: t
                .mark_types()
                .iter()
                .map(|((m, c), s)| (pair(m, c), set(s)))
                .collect(),
        }
    }

    /// Rebuilds the tables from the rune counts and checks that every other
    /// field agrees with them.
    pub fn into_tables(self) -> Result<FrequencyTables, Error> {
        if self.format_version != FORMAT_VERSION {
            return Err(bad(
                "unsupported tables format_version",
                self.format_version,
            ));
        }
        let counts = self
            .rune_count
            .iter()
            .map(|(k, &n)| Ok((parse_rune(k)?, n)))
            .collect::<Result<Vec<_>, Error>>()?;
        let tables = FrequencyTables::from_rune_counts(counts);
        if TablesDoc::from_tables(&tables) != self {
            return Err(bad(
                "inconsistent frequency tables",
                "derived counts disagree with rune_count",
            ));
        }
        Ok(tables)
    }
}

// ------------------------------------------------------------------- model

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelMetaDoc {
    pub profile: String,
    pub casefold: bool,
    pub training_digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDoc {
    pub format_version: u32,
    pub meta: ModelMetaDoc,
    pub word_map: BTreeMap<String, String>,
    pub char_map: BTreeMap<String, String>,
}

impl ModelDoc {
    pub fn from_model(m: &BaselineModel) -> Self {
        ModelDoc {
            format_version: FORMAT_VERSION,
            meta: ModelMetaDoc {
                profile: m.meta.profile.clone(),
                casefold: m.meta.casefold,
                training_digest: m.meta.training_digest.clone(),
            },
            word_map: m
                .word_map
                .iter()
                .map(|(k, v)| {
                    let key: Vec<Rune> = k.iter().map(|c| Rune::unmarked(c.0)).collect();
                    (word_label(&key), word_label(v))
                })
                .collect(),
            char_map: m
                .char_map
                .iter()
                .map(|(k, v)| (codepoint_label(k.0), v.label()))
                .collect(),
        }
    }

    pub fn into_model(self) -> Result<BaselineModel, Error> {
        if self.format_version != FORMAT_VERSION {
            return Err(bad("unsupported model format_version", self.format_version));
        }
        let mut word_map = BTreeMap::new();
        for (k, v) in &self.word_map {
            let key: Vec<BaseChar> = parse_word(k)?.iter().map(Rune::base).collect();
            let form = parse_word(v)?;
            if form.iter().map(Rune::base).ne(key.iter().copied()) {
                return Err(bad("word_map value does not strip to its key", k));
            }
            word_map.insert(key, form);
        }
        let mut char_map = BTreeMap::new();
        for (k, v) in &self.char_map {
            let base = parse_base(k)?;
            let rune = parse_rune(v)?;
            if rune.base() != base {
                return Err(bad("char_map value has a different base", k));
            }
            char_map.insert(base, rune);
        }
        Ok(BaselineModel {
            meta: ModelMeta {
                profile: self.meta.profile,
                casefold: self.meta.casefold,
                training_digest: self.meta.training_digest,
            },
            word_map,
            char_map,
        })
    }
}

pub fn model_to_json(m: &BaselineModel) -> String {
    serde_json::to_string_pretty(&ModelDoc::from_model(m)).expect("model serializes") + "\n"
}

pub fn model_from_json(text: &str) -> Result<BaselineModel, Error> {
    let doc: ModelDoc = serde_json::from_str(text).map_err(|e| bad("model json", e))?;
    doc.into_model()
}

pub fn tables_to_json(t: &FrequencyTables) -> String {
    serde_json::to_string_pretty(&TablesDoc::from_tables(t)).expect("tables serialize") + "\n"
}

pub fn tables_from_json(text: &str) -> Result<FrequencyTables, Error> {
    let doc: TablesDoc = serde_json::from_str(text).map_err(|e| bad("tables json", e))?;
    doc.into_tables()
}

// --------------------------------------------------------------------- tsv

/// A parsed TSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Missing,
    Text(String),
}

impl Cell {
    pub fn parse(s: &str) -> Cell {
        let s = s.trim();
        if s.is_empty() || s == "--" {
            Cell::Missing
        } else if let Ok(v) = s.parse::<f64>() {
            Cell::Num(v)
        } else {
            Cell::Text(s.to_string())
        }
    }

    pub fn text(&self) -> String {
        match self {
            Cell::Num(v) => v.to_string(),
            Cell::Missing => String::new(),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// A TSV table with a header line.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<BTreeMap<String, Cell>>,
}

impl Table {
    /// Parses the first header-led block; a blank line ends the table.
    pub fn parse(text: &str) -> Result<Table, Error> {
        let mut lines = text
            .lines()
            .skip_while(|l| l.trim().is_empty())
            .take_while(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("tsv", "missing header"))?;
        let columns: Vec<String> = header.split('\t').map(|s| s.trim().to_string()).collect();
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let cells: Vec<&str> = line.split('\t').collect();
            if cells.len() != columns.len() {
                return Err(bad(
                    "tsv",
                    format!(
                        "row {} has {} cells, header has {}",
                        i + 2,
                        cells.len(),
                        columns.len()
                    ),
                ));
            }
            rows.push(
                columns
                    .iter()
                    .cloned()
                    .zip(cells.into_iter().map(Cell::parse))
                    .collect(),
            );
        }
        Ok(Table { columns, rows })
    }

    fn key(row: &BTreeMap<String, Cell>) -> Option<(String, String)> {
        Some((row.get("language")?.text(), row.get("corpus")?.text()))
    }

    /// Inner join on `(language, corpus)`. Columns already present keep
    /// their values from `self`.
    pub fn join(&self, other: &Table) -> Result<Table, Error> {
        for t in [self, other] {
            if !t.columns.iter().any(|c| c == "language")
                || !t.columns.iter().any(|c| c == "corpus")
            {
                return Err(bad("join", "tables need language and corpus columns"));
            }
        }
        let index: BTreeMap<(String, String), &BTreeMap<String, Cell>> = other
            .rows
            .iter()
            .filter_map(|r| Some((Table::key(r)?, r)))
            .collect();
        let mut columns = self.columns.clone();
        columns.extend(
            other
                .columns
                .iter()
                .filter(|c| !self.columns.contains(c))
                .cloned(),
        );
        let rows = self
            .rows
            .iter()
            .filter_map(|r| {
                let o = index.get(&Table::key(r)?)?;
                let mut merged = r.clone();
                for (k, v) in o.iter() {
                    merged.entry(k.clone()).or_insert_with(|| v.clone());
                }
                Some(merged)
            })
            .collect();
        Ok(Table { columns, rows })
    }

    /// Keeps rows whose `column` cell renders as `value`.
    pub fn filter(&self, column: &str, value: &str) -> Table {
        Table {
            columns: self.columns.clone(),
            rows: self
                .rows
                .iter()
                .filter(|r| r.get(column).is_some_and(|c| c.text() == value))
                .cloned()
                .collect(),
        }
    }

    /// Numeric view of two columns for correlation.
    pub fn numeric_rows(&self, columns: &[&str]) -> Result<Vec<TableRow>, Error> {
        for c in columns {
            if !self.columns.iter().any(|x| x == c) {
                return Err(runestat_core::Error::UnknownColumn((*c).to_string()).into());
            }
        }
        self.rows
            .iter()
            .map(|r| {
                let label = Table::key(r)
                    .map(|(l, c)| format!("{l}/{c}"))
                    .or_else(|| r.get("language").map(Cell::text))
                    .unwrap_or_default();
                let mut values = BTreeMap::new();
                for &c in columns {
                    let v = match &r[c] {
                        Cell::Num(v) => Some(*v),
                        Cell::Missing => None,
                        Cell::Text(s) => {
                            return Err(bad(
                                "non-numeric cell",
                                format!("{c} = {s:?} in row {label}"),
                            ))
                        }
                    };
                    values.insert(c.to_string(), v);
                }
                Ok(TableRow { label, values })
            })
            .collect()
    }
}
