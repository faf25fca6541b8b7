//! Pearson correlation with a two-tailed Student-t p-value.
//!
//! The tail probability uses the regularized incomplete beta function,
//! evaluated by the modified Lentz continued fraction with relative
//! tolerance 1e-12 and at most 300 iterations.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Result};

const CF_TOLERANCE: f64 = 1e-12;
const CF_MAX_ITER: usize = 300;
const TINY: f64 = 1e-300;

fn beta_continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let clamp = |v: f64| if v.abs() < TINY { TINY } else { v };
    let mut c = 1.0;
    let mut d = 1.0 / clamp(1.0 - qab * x / qap);
    let mut h = d;
    for m in 1..=CF_MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 / clamp(1.0 + aa * d);
        c = clamp(1.0 + aa / c);
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 / clamp(1.0 + aa * d);
        c = clamp(1.0 + aa / c);
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < CF_TOLERANCE {
            break;
        }
    }
    h
}

/// Regularized incomplete beta `I_x(a, b)` for `a, b > 0`.
pub fn regularized_incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = libm::lgamma(a + b) - libm::lgamma(a) - libm::lgamma(b)
        + a * libm::log(x)
        + b * libm::log1p(-x);
    let front = libm::exp(ln_front);
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_continued_fraction(a, b, x) / a
    } else {
        1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b
    }
}

/// Two-tailed tail probability of Student's t with `dof` degrees of freedom.
pub fn student_t_two_tailed(t: f64, dof: f64) -> f64 {
    if t.is_infinite() {
        return 0.0;
    }
    regularized_incomplete_beta(dof / 2.0, 0.5, dof / (dof + t * t))
}

/// Significance marker: `***` for p < 0.001, `**` for p < 0.01, `*` for
/// p < 0.05, empty otherwise.
pub fn stars(p: f64) -> &'static str {
    if p < 0.001 {
        "***"
    } else if p < 0.01 {
        "**"
    } else if p < 0.05 {
        "*"
    } else {
        ""
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationReport {
    pub r: f64,
    pub n: usize,
    pub t_stat: f64,
    pub p_two_tailed: f64,
    pub stars: &'static str,
}

pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<CorrelationReport> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch(xs.len(), ys.len()));
    }
    let n = xs.len();
    if n < 3 {
        return Err(Error::TooFewObservations(n));
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let r = (sxy / libm::sqrt(sxx * syy)).clamp(-1.0, 1.0);
    let dof = nf - 2.0;
    let (t_stat, p) = if r.abs() == 1.0 {
        (r * f64::INFINITY, 0.0)
    } else {
        let t = r * libm::sqrt(dof / (1.0 - r * r));
        (t, student_t_two_tailed(t, dof))
    };
    Ok(CorrelationReport {
        r,
        n,
        t_stat,
        p_two_tailed: p,
        stars: stars(p),
    })
}

/// One row of a results table; `None` marks a missing cell.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TableRow {
    pub label: String,
    pub values: BTreeMap<String, Option<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableCorrelation {
    pub x: String,
    pub y: String,
    pub report: CorrelationReport,
    /// Rows skipped because either cell was missing.
    pub dropped: usize,
}

pub fn correlate_table(rows: &[TableRow], x: &str, y: &str) -> Result<TableCorrelation> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut dropped = 0;
    for row in rows {
        let cell = |col: &str| {
            row.values
                .get(col)
                .copied()
                .ok_or_else(|| Error::UnknownColumn(col.into()))
        };
        match (cell(x)?, cell(y)?) {
            (Some(a), Some(b)) => {
                xs.push(a);
                ys.push(b);
            }
            _ => dropped += 1,
        }
    }
    Ok(TableCorrelation {
        x: x.into(),
        y: y.into(),
        report: pearson(&xs, &ys)?,
        dropped,
    })
}
