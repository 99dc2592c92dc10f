//! Bundled table polynomials, one row per published table line.
//!
//! Polynomials are kept exactly as printed, including the repeated `x^5`
//! term in the degree-15 row over `F_5`; nothing is corrected here.

use std::sync::OnceLock;

use brunnian::construction::Verdict;

const TABLES: &str = include_str!("../data/published_tables.tsv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureRow {
    pub p: u64,
    pub n: usize,
    pub poly: String,
    pub verdict: Verdict,
}

/// Parses `p<TAB>n<TAB>poly<TAB>verdict` lines; blank lines and lines
/// starting with `#` are skipped.
pub fn parse_fixture(text: &str) -> Result<Vec<FixtureRow>, String> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let [p, n, poly, verdict] = fields[..] else {
            return Err(format!("line {}: expected 4 tab-separated fields", lineno + 1));
        };
        let bad = |what: &str| format!("line {}: bad {what}", lineno + 1);
        rows.push(FixtureRow {
            p: p.parse().map_err(|_| bad("p"))?,
            n: n.parse().map_err(|_| bad("n"))?,
            poly: poly.to_string(),
            verdict: Verdict::from_table_label(verdict).ok_or_else(|| bad("verdict"))?,
        });
    }
    Ok(rows)
}

pub fn fixture_rows() -> &'static [FixtureRow] {
    static ROWS: OnceLock<Vec<FixtureRow>> = OnceLock::new();
    ROWS.get_or_init(|| parse_fixture(TABLES).expect("bundled table fixture is well-formed"))
}
