//! The `runestat` command line.
//!
//! Every subcommand writes a table to stdout: TSV with a header line by
//! default, or one JSON object per row with `--format json`. Warnings go to
//! stderr. Percentages are printed with 3 decimals, metric values with 6.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use runestat_core::script::strip_text;
use runestat_core::stats::correlate_table;
use runestat_core::{
    evaluate, normalize_decompose, profile, sample, BaselineModel, Corpus, FrequencyTables,
    MetricReport, SamplingConfig, ScriptProfile,
};

use crate::formats::{self, Table};
use crate::io::{self, read_corpus, read_utf8, InputFormat};
use crate::{parallel_tables, Error};

pub const MEAN_CORPUS: &str = "(mean)";

#[derive(Parser, Debug)]
#[command(
    name = "runestat",
    version,
    about = "Diacritic complexity statistics for text corpora"
)]
pub struct Cli {
    /// Script profile: latin-generic, hebrew, arabic, bengali, or a profile JSON file
    #[arg(long, global = true)]
    pub profile: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Tsv)]
    pub format: OutputFormat,
    /// Also write a JSON run manifest to this path
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = InputFormat::Auto)]
    pub input_format: InputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Tsv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    /// One observation per corpus row; `(mean)` rows are skipped
    Corpus,
    /// One observation per language: its `(mean)` row, or its only row
    Language,
}

#[derive(Args, Debug, Clone, Default)]
pub struct LabelArgs {
    /// Language label for every input (default: file stem)
    #[arg(long)]
    pub language: Option<String>,
    /// Family label for every input
    #[arg(long)]
    pub family: Option<String>,
    /// TSV sidecar with columns path, language and optionally corpus, family
    #[arg(long)]
    pub labels: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Diacritic usage statistics per corpus
    Profile {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        labels: LabelArgs,
    },
    /// Density, RS, DTS and DSS per corpus
    Metrics {
        /// Corpus files, or `.tables.json` files written by --tables-out
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        labels: LabelArgs,
        /// Add a per-rune breakdown table
        #[arg(long)]
        per_rune: bool,
        /// Directory to cache frequency tables in, as <corpus>.tables.json
        #[arg(long)]
        tables_out: Option<PathBuf>,
        /// Counting threads (0 = available parallelism)
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Draw a fixed-size sample of whole sentences
    Sample {
        input: PathBuf,
        #[arg(long, default_value_t = SamplingConfig::DEFAULT_TARGET)]
        target_chars: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Remove all diacritics
    Strip {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Train the frequency baseline restorer
    Train {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Restore diacritics with a trained model
    Diacritize {
        input: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Word- and rune-level accuracy of a hypothesis against gold text
    Evaluate {
        gold: PathBuf,
        hyp: PathBuf,
        #[arg(long)]
        language: Option<String>,
        #[arg(long)]
        corpus: Option<String>,
    },
    /// Pearson correlation between columns of result tables joined on (language, corpus)
    Correlate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, required = true)]
        x: Vec<String>,
        #[arg(long, required = true)]
        y: Vec<String>,
        /// Keep rows where COLUMN equals VALUE; repeatable
        #[arg(long, value_name = "COLUMN=VALUE")]
        filter: Vec<String>,
        #[arg(long, value_enum, default_value_t = Level::Corpus)]
        level: Level,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Profile { .. } => "profile",
            Command::Metrics { .. } => "metrics",
            Command::Sample { .. } => "sample",
            Command::Strip { .. } => "strip",
            Command::Train { .. } => "train",
            Command::Diacritize { .. } => "diacritize",
            Command::Evaluate { .. } => "evaluate",
            Command::Correlate { .. } => "correlate",
        }
    }

    fn inputs(&self) -> Vec<PathBuf> {
        match self {
            Command::Profile { inputs, .. } | Command::Metrics { inputs, .. } => inputs.clone(),
            Command::Sample { input, .. }
            | Command::Strip { input, .. }
            | Command::Train { input, .. } => {
                vec![input.clone()]
            }
            Command::Diacritize { input, model, .. } => vec![input.clone(), model.clone()],
            Command::Evaluate { gold, hyp, .. } => vec![gold.clone(), hyp.clone()],
            Command::Correlate { files, .. } => files.clone(),
        }
    }
}

// ------------------------------------------------------------------ output

#[derive(Clone, Debug, PartialEq)]
enum Val {
    Text(String),
    Int(u64),
    Fixed(f64, usize),
    Sci(f64),
}

impl Val {
    fn tsv(&self) -> String {
        match self {
            Val::Text(s) => s.clone(),
            Val::Int(n) => n.to_string(),
            Val::Fixed(v, p) => format!("{v:.p$}"),
            Val::Sci(v) => format!("{v:.6e}"),
        }
    }

    fn json(&self) -> String {
        match self {
            Val::Text(s) => serde_json::to_string(s).expect("string serializes"),
            Val::Int(n) => n.to_string(),
            Val::Fixed(v, _) | Val::Sci(v) if v.is_finite() => {
                serde_json::to_string(v).expect("finite float")
            }
            Val::Fixed(..) | Val::Sci(_) => "null".into(),
        }
    }

    fn num(&self) -> Option<f64> {
        match self {
            Val::Int(n) => Some(*n as f64),
            Val::Fixed(v, _) | Val::Sci(v) => Some(*v),
            Val::Text(_) => None,
        }
    }
}

fn pct(v: f64) -> Val {
    Val::Fixed(v, 3)
}

fn metric(v: f64) -> Val {
    Val::Fixed(v, 6)
}

fn text(s: impl Into<String>) -> Val {
    Val::Text(s.into())
}

type Row = Vec<(&'static str, Val)>;

fn render_rows(rows: &[Row], format: OutputFormat) -> String {
    let mut out = String::new();
    let Some(first) = rows.first() else {
        return out;
    };
    match format {
        OutputFormat::Tsv => {
            let header: Vec<&str> = first.iter().map(|(k, _)| *k).collect();
            out.push_str(&header.join("\t"));
            out.push('\n');
            for row in rows {
                let cells: Vec<String> = row.iter().map(|(_, v)| v.tsv()).collect();
                out.push_str(&cells.join("\t"));
                out.push('\n');
            }
        }
        OutputFormat::Json => {
            for row in rows {
                let fields: Vec<String> = row
                    .iter()
                    .map(|(k, v)| {
                        format!("{}:{}", serde_json::to_string(k).expect("key"), v.json())
                    })
                    .collect();
                out.push('{');
                out.push_str(&fields.join(","));
                out.push_str("}\n");
            }
        }
    }
    out
}

/// Main table, then an optional second table. In TSV the two are separated
/// by a blank line.
fn render_tables(main: &[Row], extra: &[Row], format: OutputFormat) -> String {
    let mut out = render_rows(main, format);
    if !extra.is_empty() {
        if format == OutputFormat::Tsv {
            out.push('\n');
        }
        out.push_str(&render_rows(extra, format));
    }
    out
}

/// Appends one uniform-average row per language that has two or more rows.
/// Integer columns are averaged too and printed with 3 decimals.
fn with_language_means(rows: Vec<Row>, finish: impl Fn(&mut Row)) -> Vec<Row> {
    let mut order: Vec<String> = Vec::new();
    let mut groups: BTreeMap<String, Vec<&Row>> = BTreeMap::new();
    for row in &rows {
        let lang = row[0].1.tsv();
        if !groups.contains_key(&lang) {
            order.push(lang.clone());
        }
        groups.entry(lang).or_default().push(row);
    }
    let mut means = Vec::new();
    for lang in order {
        let group = &groups[&lang];
        if group.len() < 2 {
            continue;
        }
        let n = group.len() as f64;
        let mut mean: Row = group[0]
            .iter()
            .enumerate()
            .map(|(i, (k, v))| {
                let v = match (*k, v) {
                    ("corpus", _) => text(MEAN_CORPUS),
                    (_, Val::Text(s)) => Val::Text(s.clone()),
                    (_, v) => {
                        let total: f64 =
                            group.iter().map(|r| r[i].1.num().unwrap_or(f64::NAN)).sum();
                        match v {
                            Val::Fixed(_, p) => Val::Fixed(total / n, *p),
                            _ => Val::Fixed(total / n, 3),
                        }
                    }
                };
                (*k, v)
            })
            .collect();
        finish(&mut mean);
        means.push(mean);
    }
    let mut rows = rows;
    rows.extend(means);
    rows
}

// ------------------------------------------------------------------ labels

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusLabel {
    pub language: String,
    pub corpus: String,
    pub family: String,
}

fn stem(path: &Path) -> String {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    for ext in [".tables.json", ".conllu", ".txt", ".json", ".tsv"] {
        if let Some(s) = name.strip_suffix(ext) {
            if !s.is_empty() {
                return s.to_string();
            }
        }
    }
    name
}

fn resolve_labels(inputs: &[PathBuf], args: &LabelArgs) -> Result<Vec<CorpusLabel>, Error> {
    let sidecar = match &args.labels {
        Some(p) => Some(Table::parse(&read_utf8(p)?)?),
        None => None,
    };
    if let Some(t) = &sidecar {
        if !t.columns.iter().any(|c| c == "path") {
            return Err(Error::Format("labels sidecar needs a path column".into()));
        }
    }
    inputs
        .iter()
        .map(|path| {
            let mut label = CorpusLabel {
                language: stem(path),
                corpus: stem(path),
                family: String::new(),
            };
            let row = sidecar.as_ref().and_then(|t| {
                t.rows.iter().find(|r| {
                    let p = r.get("path").map(|c| c.text()).unwrap_or_default();
                    Path::new(&p) == path.as_path()
                        || path.file_name().is_some_and(|n| n.to_string_lossy() == p)
                })
            });
            if let Some(row) = row {
                let get = |k: &str| row.get(k).map(|c| c.text()).filter(|s| !s.is_empty());
                if let Some(l) = get("language") {
                    label.language = l;
                }
                if let Some(c) = get("corpus") {
                    label.corpus = c;
                }
                if let Some(f) = get("family") {
                    label.family = f;
                }
            }
            if let Some(l) = &args.language {
                label.language = l.clone();
            }
            if let Some(f) = &args.family {
                label.family = f.clone();
            }
            Ok(label)
        })
        .collect()
}

// ---------------------------------------------------------------- manifest

#[derive(Serialize)]
struct InputRecord {
    path: String,
    bytes: u64,
    sha256: String,
}

/// Enough to rerun an invocation and check its inputs are unchanged.
#[derive(Serialize)]
struct RunManifest {
    tool: &'static str,
    tool_version: &'static str,
    subcommand: &'static str,
    args: Vec<String>,
    inputs: Vec<InputRecord>,
    profile: String,
    seed: Option<u64>,
    format: OutputFormat,
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn write_manifest(
    cli: &Cli,
    args: &[String],
    profile_name: &str,
    path: &Path,
) -> Result<(), Error> {
    let inputs = cli
        .command
        .inputs()
        .iter()
        .map(|p| {
            let bytes = std::fs::read(p).map_err(|source| Error::Io {
                path: p.clone(),
                source,
            })?;
            Ok(InputRecord {
                path: p.display().to_string(),
                bytes: bytes.len() as u64,
                sha256: sha256_hex(&bytes),
            })
        })
        .collect::<Result<_, Error>>()?;
    let seed = match &cli.command {
        Command::Sample { seed, .. } => Some(*seed),
        _ => None,
    };
    let manifest = RunManifest {
        tool: "runestat",
        tool_version: env!("CARGO_PKG_VERSION"),
        subcommand: cli.command.name(),
        args: args.to_vec(),
        inputs,
        profile: profile_name.to_string(),
        seed,
        format: cli.format,
    };
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    io::write_file(path, &json)
}

// ---------------------------------------------------------------- commands

struct Ctx<'a> {
    profile: ScriptProfile,
    format: OutputFormat,
    input_format: InputFormat,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn warn(&mut self, msg: impl std::fmt::Display) {
        let _ = writeln!(self.err, "warning: {msg}");
    }

    fn corpus(&mut self, path: &Path) -> Result<Corpus, Error> {
        let c = read_corpus(path, &self.profile, self.input_format)?;
        let orphans = c.orphan_marks();
        if orphans > 0 {
            self.warn(format_args!(
                "{}: dropped {orphans} marks with no preceding letter",
                path.display()
            ));
        }
        Ok(c)
    }

    /// Lines of a text file (blank lines kept) or the sentences of a CoNLL-U file.
    fn lines(&self, path: &Path) -> Result<Vec<String>, Error> {
        let conllu = match self.input_format {
            InputFormat::Conllu => true,
            InputFormat::Text => false,
            InputFormat::Auto => path.extension().is_some_and(|e| e == "conllu"),
        };
        if conllu {
            return Ok(read_corpus(path, &self.profile, InputFormat::Conllu)?
                .sentences
                .iter()
                .map(|s| s.raw_text().to_string())
                .collect());
        }
        let text = read_utf8(path)?;
        let body = text.strip_suffix('\n').unwrap_or(&text);
        if body.is_empty() {
            return Ok(Vec::new());
        }
        Ok(body
            .split('\n')
            .map(|l| l.trim_end_matches('\r').to_string())
            .collect())
    }
}

fn in_file(path: &Path) -> impl FnOnce(runestat_core::Error) -> Error + '_ {
    move |source| Error::InFile {
        path: path.to_path_buf(),
        source,
    }
}

fn lines_out(lines: impl IntoIterator<Item = String>) -> String {
    let mut out = String::new();
    for l in lines {
        out.push_str(&normalize_decompose(&l));
        out.push('\n');
    }
    out
}

fn emit(out: &mut dyn Write, path: Option<&Path>, contents: &str) -> Result<(), Error> {
    match path {
        Some(p) => io::write_file(p, contents),
        None => out
            .write_all(contents.as_bytes())
            .map_err(|source| Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn cmd_profile(ctx: &mut Ctx, inputs: &[PathBuf], labels: &LabelArgs) -> Result<String, Error> {
    let labels = resolve_labels(inputs, labels)?;
    let mut rows = Vec::new();
    for (path, label) in inputs.iter().zip(&labels) {
        let c = ctx.corpus(path)?;
        let p = profile(&c).map_err(in_file(path))?;
        rows.push(vec![
            ("language", text(&label.language)),
            ("corpus", text(&label.corpus)),
            ("density_pct", pct(p.density_pct)),
            ("multi_pct", pct(p.multi_diacritic_pct)),
            ("words_diac_pct", pct(p.pct_words_diacritized)),
            ("lines_diac_pct", pct(p.pct_lines_diacritized)),
            (
                "mean_diacs_per_word",
                pct(p.mean_diacs_per_diacritized_word),
            ),
            ("n_runes", Val::Int(p.distinct_marked_runes as u64)),
            ("system", text(p.system_class.as_str())),
        ]);
    }
    let rows = with_language_means(rows, |row| {
        let multi = row
            .iter()
            .find(|(k, _)| *k == "multi_pct")
            .and_then(|(_, v)| v.num());
        let class = if multi.unwrap_or(0.0) > 0.0 {
            "Multi"
        } else {
            "Single"
        };
        if let Some(cell) = row.iter_mut().find(|(k, _)| *k == "system") {
            cell.1 = text(class);
        }
    });
    Ok(render_rows(&rows, ctx.format))
}

fn cmd_metrics(
    ctx: &mut Ctx,
    inputs: &[PathBuf],
    labels: &LabelArgs,
    per_rune: bool,
    tables_out: Option<&Path>,
    threads: usize,
) -> Result<String, Error> {
    let labels = resolve_labels(inputs, labels)?;
    if tables_out.is_some() {
        let mut seen = std::collections::BTreeSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(&l.corpus)) {
            return Err(Error::Usage(format!(
                "--tables-out: two inputs share the corpus label {:?}",
                dup.corpus
            )));
        }
    }
    let threads = match threads {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        n => n,
    };
    let mut rows = Vec::new();
    let mut breakdown = Vec::new();
    for (path, label) in inputs.iter().zip(&labels) {
        let tables: FrequencyTables = if path.to_string_lossy().ends_with(".tables.json") {
            formats::tables_from_json(&read_utf8(path)?)?
        } else {
            let c = ctx.corpus(path)?;
            parallel_tables(&c, threads)
        };
        if let Some(dir) = tables_out {
            io::write_file(
                &dir.join(format!("{}.tables.json", label.corpus)),
                &formats::tables_to_json(&tables),
            )?;
        }
        let rep = MetricReport::from_tables(&tables, per_rune).map_err(in_file(path))?;
        rows.push(vec![
            ("language", text(&label.language)),
            ("corpus", text(&label.corpus)),
            ("density", metric(rep.density)),
            ("density_pct", pct(100.0 * rep.density)),
            ("rs", metric(rep.mean_rs)),
            ("dts", metric(rep.mean_dts)),
            ("dss", metric(rep.mean_dss)),
            ("tokens", Val::Int(rep.rune_token_count)),
        ]);
        for r in rep.per_rune.into_iter().flatten() {
            breakdown.push(vec![
                ("language", text(&label.language)),
                ("corpus", text(&label.corpus)),
                ("rune", text(r.rune.label())),
                ("form", text(r.rune.decomposed())),
                ("count", Val::Int(r.count)),
                ("rs", metric(r.rs)),
                ("dts", metric(r.dts)),
                ("dss", metric(r.dss)),
            ]);
        }
    }
    let rows = with_language_means(rows, |_| {});
    Ok(render_tables(&rows, &breakdown, ctx.format))
}

fn cmd_evaluate(
    ctx: &mut Ctx,
    gold: &Path,
    hyp: &Path,
    language: Option<&str>,
    corpus: Option<&str>,
) -> Result<String, Error> {
    let g = ctx.corpus(gold)?;
    let h = ctx.corpus(hyp)?;
    let rep = evaluate(&g, &h).map_err(in_file(hyp))?;
    let row = vec![
        (
            "language",
            text(language.map_or_else(|| stem(gold), str::to_string)),
        ),
        (
            "corpus",
            text(corpus.map_or_else(|| stem(gold), str::to_string)),
        ),
        ("word_acc", pct(rep.word_accuracy)),
        ("rune_acc", pct(rep.rune_accuracy)),
        ("n_words", Val::Int(rep.n_words as u64)),
        ("n_rune_positions", Val::Int(rep.n_runes as u64)),
    ];
    Ok(render_rows(&[row], ctx.format))
}

fn cmd_correlate(
    ctx: &mut Ctx,
    files: &[PathBuf],
    xs: &[String],
    ys: &[String],
    filters: &[String],
    level: Level,
) -> Result<String, Error> {
    let mut table: Option<Table> = None;
    for f in files {
        let t = Table::parse(&read_utf8(f)?)
            .map_err(|e| Error::Format(format!("{}: {e}", f.display())))?;
        table = Some(match table {
            None => t,
            Some(acc) => acc.join(&t)?,
        });
    }
    let mut table = table.unwrap_or_default();
    for f in filters {
        let (col, val) = f
            .split_once('=')
            .ok_or_else(|| Error::Usage(format!("--filter expects COLUMN=VALUE, got {f:?}")))?;
        if !table.columns.iter().any(|c| c == col) {
            return Err(runestat_core::Error::UnknownColumn(col.to_string()).into());
        }
        table = table.filter(col, val);
    }
    table.rows = select_level(table.rows, level);

    let mut rows = Vec::new();
    for x in xs {
        for y in ys {
            let numeric = table.numeric_rows(&[x, y])?;
            let c = correlate_table(&numeric, x, y)?;
            if c.dropped > 0 {
                ctx.warn(format_args!(
                    "{x} vs {y}: dropped {} rows with missing values",
                    c.dropped
                ));
            }
            rows.push(vec![
                ("x", text(x)),
                ("y", text(y)),
                ("n", Val::Int(c.report.n as u64)),
                ("r", metric(c.report.r)),
                ("t", metric(c.report.t_stat)),
                ("p", Val::Sci(c.report.p_two_tailed)),
                ("stars", text(c.report.stars)),
                ("dropped", Val::Int(c.dropped as u64)),
            ]);
        }
    }
    Ok(render_rows(&rows, ctx.format))
}

fn select_level(
    rows: Vec<BTreeMap<String, formats::Cell>>,
    level: Level,
) -> Vec<BTreeMap<String, formats::Cell>> {
    let corpus =
        |r: &BTreeMap<String, formats::Cell>| r.get("corpus").map(|c| c.text()).unwrap_or_default();
    match level {
        Level::Corpus => rows
            .into_iter()
            .filter(|r| corpus(r) != MEAN_CORPUS)
            .collect(),
        Level::Language => {
            let language = |r: &BTreeMap<String, formats::Cell>| {
                r.get("language").map(|c| c.text()).unwrap_or_default()
            };
            let with_mean: std::collections::BTreeSet<String> = rows
                .iter()
                .filter(|r| corpus(r) == MEAN_CORPUS)
                .map(language)
                .collect();
            rows.into_iter()
                .filter(|r| corpus(r) == MEAN_CORPUS || !with_mean.contains(&language(r)))
                .collect()
        }
    }
}

fn dispatch(cli: &Cli, ctx: &mut Ctx, out: &mut dyn Write) -> Result<(), Error> {
    let table = match &cli.command {
        Command::Profile { inputs, labels } => cmd_profile(ctx, inputs, labels)?,
        Command::Metrics {
            inputs,
            labels,
            per_rune,
            tables_out,
            threads,
        } => cmd_metrics(
            ctx,
            inputs,
            labels,
            *per_rune,
            tables_out.as_deref(),
            *threads,
        )?,
        Command::Evaluate {
            gold,
            hyp,
            language,
            corpus,
        } => cmd_evaluate(ctx, gold, hyp, language.as_deref(), corpus.as_deref())?,
        Command::Correlate {
            files,
            x,
            y,
            filter,
            level,
        } => cmd_correlate(ctx, files, x, y, filter, *level)?,
        Command::Sample {
            input,
            target_chars,
            seed,
            output,
        } => {
            let c = ctx.corpus(input)?;
            let cfg = SamplingConfig::new(*target_chars, *seed)?;
            let s = sample(&c, &cfg).map_err(in_file(input))?;
            return emit(out, output.as_deref(), &io::sentences_to_text(&s));
        }
        Command::Strip { input, output } => {
            let lines = ctx.lines(input)?;
            let stripped = lines_out(lines.iter().map(|l| strip_text(l, &ctx.profile)));
            return emit(out, output.as_deref(), &stripped);
        }
        Command::Train { input, output } => {
            let c = ctx.corpus(input)?;
            if c.is_empty() {
                return Err(Error::InFile {
                    path: input.clone(),
                    source: runestat_core::Error::EmptyCorpus,
                });
            }
            let model = BaselineModel::train(&c, &ctx.profile);
            return io::write_file(output, &formats::model_to_json(&model));
        }
        Command::Diacritize {
            input,
            model,
            output,
        } => {
            let m = formats::model_from_json(&read_utf8(model)?)
                .map_err(|e| Error::Format(format!("{}: {e}", model.display())))?;
            if cli.profile.is_none() {
                if let Some(p) = ScriptProfile::builtin(&m.meta.profile) {
                    ctx.profile = p;
                }
            }
            let lines = ctx.lines(input)?;
            let restored = lines_out(lines.iter().map(|l| m.diacritize(l, &ctx.profile)));
            return emit(out, output.as_deref(), &restored);
        }
    };
    emit(out, None, &table)
}

/// Runs the tool with `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return e.exit_code();
        }
    };
    let result = (|| {
        let profile = formats::load_profile(cli.profile.as_deref().unwrap_or("latin-generic"))?;
        let profile_name = profile.name().to_string();
        let mut ctx = Ctx {
            profile,
            format: cli.format,
            input_format: cli.input_format,
            err: &mut *err,
        };
        dispatch(&cli, &mut ctx, out)?;
        if let Some(path) = &cli.manifest {
            let plain: Vec<String> = args
                .iter()
                .skip(1)
                .map(|a| a.to_string_lossy().into_owned())
                .collect();
            write_manifest(&cli, &plain, &profile_name, path)?;
        }
        Ok::<(), Error>(())
    })();
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stems() {
        assert_eq!(stem(Path::new("a/b/fr_gsd.conllu")), "fr_gsd");
        assert_eq!(stem(Path::new("x.tables.json")), "x");
        assert_eq!(stem(Path::new("plain")), "plain");
    }

    #[test]
    fn mean_rows_are_uniform() {
        let row = |c: &str, v: f64, n: u64| -> Row {
            vec![
                ("language", text("fr")),
                ("corpus", text(c)),
                ("v", metric(v)),
                ("n", Val::Int(n)),
            ]
        };
        let rows = with_language_means(vec![row("a", 1.0, 10), row("b", 2.0, 1000)], |_| {});
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[2][1].1, text(MEAN_CORPUS));
        assert_eq!(rows[2][2].1, metric(1.5));
        assert_eq!(rows[2][3].1, Val::Fixed(505.0, 3));
    }

    #[test]
    fn json_lines_keep_column_order() {
        let rows = vec![vec![
            ("b", text("x")),
            ("a", metric(0.5)),
            ("t", metric(f64::INFINITY)),
        ]];
        assert_eq!(
            render_rows(&rows, OutputFormat::Json),
            "{\"b\":\"x\",\"a\":0.5,\"t\":null}\n"
        );
        assert_eq!(
            render_rows(&rows, OutputFormat::Tsv),
            "b\ta\tt\nx\t0.500000\tinf\n"
        );
    }
}
