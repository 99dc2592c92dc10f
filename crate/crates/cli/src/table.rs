use std::fmt;
use std::str::FromStr;

use brunnian::construction::{verdict_for, Verdict, MIN_DIMENSION};
use brunnian::poly::{first_primitive, parse_poly, Primitivity};
use brunnian::{Error, Polynomial, PrimeField};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::fixture::{fixture_rows, FixtureRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Source {
    /// Bundled table polynomials.
    #[default]
    Published,
    /// First primitive polynomial in search order.
    Search,
}

impl FromStr for Source {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "paper" => Ok(Source::Published),
            "search" => Ok(Source::Search),
            _ => Err(format!("unknown source {s:?} (expected paper or search)")),
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Published => "paper",
            Source::Search => "search",
        })
    }
}

/// Inclusive range `lo..hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeRange {
    pub lo: usize,
    pub hi: usize,
}

impl FromStr for DegreeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad bound {t:?} in range {s:?}"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (parse(lo)?, parse(hi.trim_start_matches('='))?),
            None => {
                let n = parse(s)?;
                (n, n)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(DegreeRange { lo, hi })
    }
}

/// One table line. A row whose polynomial turns out not to be primitive is
/// a discrepancy record and carries the order of `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub p: u64,
    pub polynomial: String,
    /// `None` when primitivity could not be decided within budget.
    pub primitive: Option<bool>,
    pub verdict: Verdict,
    pub published_verdict: Option<Verdict>,
    pub x_order: Option<String>,
    pub warnings: Vec<String>,
}

impl TableRow {
    pub fn is_discrepancy(&self) -> bool {
        self.primitive == Some(false)
    }

    pub fn matches_published(&self) -> Option<bool> {
        self.published_verdict.map(|v| v == self.verdict)
    }
}

fn check_table_args(p: u64, range: DegreeRange) -> Result<PrimeField, CliError> {
    let field = PrimeField::new(p)?;
    if p < 5 {
        return Err(CliError::Invalid(format!("tables need p >= 5, got {p}")));
    }
    if range.lo < MIN_DIMENSION {
        return Err(CliError::Invalid(format!(
            "range must start at n >= {MIN_DIMENSION}, got {}",
            range.lo
        )));
    }
    Ok(field)
}

/// Rows for `p` and every `n` in `range`. With `Source::Published`, degrees that
/// have no bundled row are skipped, and an empty result is an error.
pub fn run_table(p: u64, range: DegreeRange, source: Source) -> Result<Vec<TableRow>, CliError> {
    let field = check_table_args(p, range)?;
    match source {
        Source::Published => {
            let rows: Vec<&FixtureRow> = fixture_rows()
                .iter()
                .filter(|r| r.p == p && (range.lo..=range.hi).contains(&r.n))
                .collect();
            if rows.is_empty() {
                return Err(CliError::Invalid(format!(
                    "no table rows for p = {p}, n in {}..{}",
                    range.lo, range.hi
                )));
            }
            rows.into_par_iter().map(fixture_table_row).collect()
        }
        Source::Search => (range.lo..=range.hi)
            .into_par_iter()
            .map(|n| search_row(field, n))
            .collect(),
    }
}

/// Audits one bundled row: verdict from `(p, n)`, computed primitivity, and
/// the order of `X` when it is not primitive.
pub fn fixture_table_row(row: &FixtureRow) -> Result<TableRow, CliError> {
    let field = PrimeField::new(row.p)?;
    let verdict = verdict_for(row.p, row.n)?;
    let mut warnings = Vec::new();
    let mut out = TableRow {
        n: row.n,
        p: row.p,
        polynomial: row.poly.clone(),
        primitive: None,
        verdict,
        published_verdict: Some(row.verdict),
        x_order: None,
        warnings: Vec::new(),
    };
    let parsed = match parse_poly(&row.poly, field) {
        Ok(parsed) => parsed,
        Err(e) => {
            out.warnings.push(format!("unparseable: {e}"));
            return Ok(out);
        }
    };
    warnings.extend(parsed.warnings);
    let f = parsed.poly;
    if f.degree() != Some(row.n) || !f.is_monic() {
        warnings.push(format!("{f} is not monic of degree {}", row.n));
        out.warnings = warnings;
        return Ok(out);
    }
    fill_primitivity(&mut out, &f, &mut warnings)?;
    out.warnings = warnings;
    Ok(out)
}

fn fill_primitivity(row: &mut TableRow, f: &Polynomial, warnings: &mut Vec<String>) -> Result<(), CliError> {
    match f.primitivity() {
        Ok(Primitivity::Primitive) => row.primitive = Some(true),
        Ok(other) => {
            row.primitive = Some(false);
            warnings.push(format!("not primitive: {other}"));
            match f.x_order() {
                Ok(order) => row.x_order = order.map(|o| o.to_string()),
                Err(Error::Infeasible(msg)) => warnings.push(format!("order of X deferred: {msg}")),
                Err(e) => return Err(e.into()),
            }
        }
        Err(Error::Infeasible(msg)) => warnings.push(format!("primitivity deferred: {msg}")),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn search_row(field: PrimeField, n: usize) -> Result<TableRow, CliError> {
    let p = field.modulus();
    let f = first_primitive(field, n)?;
    let published_verdict = fixture_rows()
        .iter()
        .find(|r| r.p == p && r.n == n)
        .map(|r| r.verdict);
    Ok(TableRow {
        n,
        p,
        polynomial: f.to_string(),
        primitive: Some(true),
        verdict: verdict_for(p, n)?,
        published_verdict,
        x_order: None,
        warnings: Vec::new(),
    })
}
