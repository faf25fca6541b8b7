//! Brute-force metric oracle.
//!
//! Works from raw text with its own character tables (no Unicode database,
//! no normalization library) and recounts the whole text for every query.
//! Covers ASCII letters, a handful of precomposed Latin letters, the Hebrew
//! block and the combining diacritical marks block.
#![allow(dead_code)]

pub type OracleRune = (char, Vec<char>);

fn decompose(c: char) -> Vec<char> {
    let table: &[(char, char, char)] = &[
        ('á', 'a', '\u{301}'),
        ('é', 'e', '\u{301}'),
        ('í', 'i', '\u{301}'),
        ('ó', 'o', '\u{301}'),
        ('ú', 'u', '\u{301}'),
        ('ñ', 'n', '\u{303}'),
        ('ü', 'u', '\u{308}'),
        ('ä', 'a', '\u{308}'),
        ('ö', 'o', '\u{308}'),
        ('É', 'E', '\u{301}'),
        ('Ñ', 'N', '\u{303}'),
    ];
    match table.iter().find(|(p, _, _)| *p == c) {
        Some(&(_, b, m)) => vec![b, m],
        None => vec![c],
    }
}

fn is_letter(c: char) -> bool {
    c.is_ascii_alphabetic() || ('\u{05D0}'..='\u{05EA}').contains(&c)
}

fn is_mark(c: char) -> bool {
    ('\u{0300}'..='\u{036F}').contains(&c)
        || (('\u{05B0}'..='\u{05C7}').contains(&c)
            && !matches!(c, '\u{05BE}' | '\u{05C0}' | '\u{05C3}' | '\u{05C6}'))
}

/// Runes of `text`: lowercased base and sorted, deduplicated marks.
pub fn runes(text: &str) -> Vec<OracleRune> {
    let mut out: Vec<OracleRune> = Vec::new();
    for c in text.chars().flat_map(decompose) {
        if is_letter(c) {
            out.push((c.to_ascii_lowercase(), Vec::new()));
        } else if is_mark(c) {
            if let Some(last) = out.last_mut() {
                if !last.1.contains(&c) {
                    last.1.push(c);
                    last.1.sort();
                }
            }
        }
    }
    out
}

pub fn count_rune(text: &str, r: &OracleRune) -> usize {
    runes(text).iter().filter(|x| *x == r).count()
}

pub fn count_base(text: &str, base: char) -> usize {
    runes(text).iter().filter(|x| x.0 == base).count()
}

pub fn count_mark_on_base(text: &str, mark: char, base: char) -> usize {
    runes(text)
        .iter()
        .filter(|x| x.0 == base && x.1.contains(&mark))
        .count()
}

fn types_of_base(text: &str, base: char) -> Vec<OracleRune> {
    let mut t: Vec<OracleRune> = runes(text).into_iter().filter(|x| x.0 == base).collect();
    t.sort();
    t.dedup();
    t
}

pub fn rs(text: &str, r: &OracleRune) -> f64 {
    -(count_rune(text, r) as f64 / count_base(text, r.0) as f64).ln()
}

pub fn dts(text: &str, r: &OracleRune) -> f64 {
    r.1.iter()
        .map(|&m| -(count_mark_on_base(text, m, r.0) as f64 / count_base(text, r.0) as f64).ln())
        .sum()
}

pub fn dss(text: &str, r: &OracleRune) -> f64 {
    let types = types_of_base(text, r.0);
    r.1.iter()
        .map(|&m| {
            let with = types.iter().filter(|t| t.1.contains(&m)).count();
            -(with as f64 / types.len() as f64).ln()
        })
        .sum()
}

/// (density, mean RS, mean DTS, mean DSS) over all rune tokens.
pub fn means(text: &str) -> (f64, f64, f64, f64) {
    let rs_all = runes(text);
    let n = rs_all.len() as f64;
    let marks: usize = rs_all.iter().map(|r| r.1.len()).sum();
    let mut acc = (0.0, 0.0, 0.0);
    for r in &rs_all {
        acc.0 += rs(text, r);
        acc.1 += dts(text, r);
        acc.2 += dss(text, r);
    }
    (marks as f64 / n, acc.0 / n, acc.1 / n, acc.2 / n)
}

/// ln Γ(x) for x > 0, Lanczos approximation (g = 7, 9 terms).
fn ln_gamma(x: f64) -> f64 {
    const G: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let t = x + 7.5;
    let series: f64 = G[0] + (1..9).map(|i| G[i] / (x + i as f64)).sum::<f64>();
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + series.ln()
}

/// Two-tailed Student-t tail probability by trapezoid integration of the
/// density over [0, |t|] with 200 000 steps.
pub fn t_two_tailed_by_quadrature(t: f64, dof: f64) -> f64 {
    let ln_norm =
        ln_gamma((dof + 1.0) / 2.0) - ln_gamma(dof / 2.0) - 0.5 * (dof * std::f64::consts::PI).ln();
    let density = |x: f64| (ln_norm - (dof + 1.0) / 2.0 * (1.0 + x * x / dof).ln()).exp();
    let steps = 200_000;
    let h = t.abs() / steps as f64;
    let mut area = 0.5 * (density(0.0) + density(t.abs()));
    for i in 1..steps {
        area += density(i as f64 * h);
    }
    1.0 - 2.0 * area * h
}
