use std::fmt::Write as _;
use std::str::FromStr;

use brunnian::construction::ConjectureReport;
use brunnian::perm::GroupCertificate;
use serde::Serialize;

use crate::density::{ratio_to_f64, DensityCount};
use crate::error::CliError;
use crate::group::GroupCheck;
use crate::table::TableRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Md,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "md" => Ok(Format::Md),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?} (expected md, csv or json)")),
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn csv_string<T: Serialize>(records: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

fn json_string<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct ReportCsv<'a> {
    p: u64,
    n: usize,
    f: &'a str,
    primitive: bool,
    minus_a0: u64,
    minus_a0_pow_n: u64,
    cond_a0: bool,
    cond_a0n: bool,
    k_poly: Option<&'a str>,
    k_is_companion: bool,
    k_ne_c: bool,
    k_const_nonzero: bool,
    verdict: String,
    warnings: String,
    points: Option<u64>,
    order: Option<&'a str>,
    target_order: Option<&'a str>,
    equal: Option<bool>,
}

pub fn render_report(r: &ConjectureReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json_string(r),
        Format::Csv => {
            let cert = r.group_certificate.as_ref();
            csv_string(&[ReportCsv {
                p: r.p,
                n: r.n,
                f: &r.f,
                primitive: r.primitive,
                minus_a0: r.minus_a0,
                minus_a0_pow_n: r.minus_a0_pow_n,
                cond_a0: r.cond_a0,
                cond_a0n: r.cond_a0n,
                k_poly: r.k_poly.as_deref(),
                k_is_companion: r.k_is_companion,
                k_ne_c: r.k_ne_c,
                k_const_nonzero: r.k_const_nonzero,
                verdict: r.verdict.to_string(),
                warnings: r.warnings.join("; "),
                points: cert.map(|c| c.points),
                order: cert.map(|c| c.order.as_str()),
                target_order: cert.map(|c| c.target_order.as_str()),
                equal: cert.map(|c| c.equal),
            }])
        }
        Format::Md => {
            let mut s = String::new();
            let _ = writeln!(s, "## `{}` over F_{}\n", r.f, r.p);
            s.push_str("| field | value |\n|---|---|\n");
            let mut row = |k: &str, v: String| {
                let _ = writeln!(s, "| {k} | {v} |");
            };
            row("n", r.n.to_string());
            row("primitive", yes_no(r.primitive).into());
            row("-a0", r.minus_a0.to_string());
            row("(-a0)^n", r.minus_a0_pow_n.to_string());
            row("-a0 != 1", yes_no(r.cond_a0).into());
            row("(-a0)^n != 1", yes_no(r.cond_a0n).into());
            row("K", r.k_poly.as_deref().map_or("not companion".into(), |g| format!("companion of `{g}`")));
            row("K != C", yes_no(r.k_ne_c).into());
            row("g(0) != 0", yes_no(r.k_const_nonzero).into());
            row("verdict", r.verdict.table_label().into());
            if let Some(c) = &r.group_certificate {
                row("group order", c.order.clone());
                row("GL order", c.target_order.clone());
                row("generates GL", yes_no(c.equal).into());
            }
            for w in &r.warnings {
                let _ = writeln!(s, "\n> warning: {w}");
            }
            for f in &r.identity_failures {
                let _ = writeln!(s, "\n> IDENTITY FAILED: {f}");
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct TableCsv<'a> {
    n: usize,
    p: u64,
    polynomial: &'a str,
    primitive: Option<bool>,
    verdict: &'static str,
    published_verdict: Option<&'static str>,
    x_order: Option<&'a str>,
    warnings: String,
}

pub fn render_table(rows: &[TableRow], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json_string(&rows),
        Format::Csv => csv_string(
            &rows
                .iter()
                .map(|r| TableCsv {
                    n: r.n,
                    p: r.p,
                    polynomial: &r.polynomial,
                    primitive: r.primitive,
                    verdict: r.verdict.table_label(),
                    published_verdict: r.published_verdict.map(|v| v.table_label()),
                    x_order: r.x_order.as_deref(),
                    warnings: r.warnings.join("; "),
                })
                .collect::<Vec<_>>(),
        ),
        Format::Md => {
            let mut s = String::new();
            if let Some(first) = rows.first() {
                let _ = writeln!(s, "Primitive polynomials over F_{}\n", first.p);
            }
            s.push_str("| n | polynomial | primitive | verdict |\n|---|---|---|---|\n");
            for r in rows {
                let prim = match r.primitive {
                    Some(true) => "yes".to_string(),
                    Some(false) => match &r.x_order {
                        Some(o) => format!("no (ord X = {o})"),
                        None => "no".to_string(),
                    },
                    None => "deferred".to_string(),
                };
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} |",
                    r.n,
                    r.polynomial,
                    prim,
                    r.verdict.table_label()
                );
            }
            for r in rows {
                for w in &r.warnings {
                    let _ = writeln!(s, "\n> n = {}: {w}", r.n);
                }
                if r.matches_published() == Some(false) {
                    let _ = writeln!(s, "\n> n = {}: verdict differs from the published table", r.n);
                }
            }
            Ok(s)
        }
    }
}

pub fn render_density(d: &DensityCount, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json_string(d),
        Format::Csv => csv_string(&[d]),
        Format::Md => {
            let mut s = String::new();
            let _ = writeln!(s, "| quantity | value |\n|---|---|");
            let _ = writeln!(s, "| N | {} |", d.limit);
            let _ = writeln!(s, "| #E_N | {} |", d.e_count);
            let _ = writeln!(s, "| #D_N | {} |", d.d_count);
            let _ = writeln!(s, "| #D_N / #E_N | {} ({:.6}) |", d.ratio, ratio_to_f64(&d.ratio));
            let _ = writeln!(s, "| N / (4(N-2)) | {} ({:.6}) |", d.bound, ratio_to_f64(&d.bound));
            let _ = writeln!(s, "| decided fraction | {} ({:.6}) |", d.complement, ratio_to_f64(&d.complement));
            let _ = writeln!(s, "| within bound | {} |", yes_no(d.within_bound));
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct GroupCsv<'a> {
    p: u64,
    n: usize,
    f: &'a str,
    exploratory: bool,
    group: &'static str,
    points: u64,
    order: &'a str,
    target_order: &'a str,
    equal: bool,
}

pub fn render_group_check(g: &GroupCheck, format: Format) -> Result<String, CliError> {
    let certs: [(&'static str, &GroupCertificate); 2] =
        [("<G_1..G_n>", &g.conjugates), ("<C, G>", &g.gill)];
    match format {
        Format::Json => json_string(g),
        Format::Csv => csv_string(
            &certs
                .iter()
                .map(|(name, c)| GroupCsv {
                    p: g.p,
                    n: g.n,
                    f: &g.f,
                    exploratory: g.exploratory,
                    group: name,
                    points: c.points,
                    order: &c.order,
                    target_order: &c.target_order,
                    equal: c.equal,
                })
                .collect::<Vec<_>>(),
        ),
        Format::Md => {
            let mut s = String::new();
            let _ = writeln!(s, "## GL_{}(F_{}) with f = `{}`\n", g.n, g.p, g.f);
            s.push_str("| group | points | base | order | GL order | equal |\n|---|---|---|---|---|---|\n");
            for (name, c) in certs {
                let _ = writeln!(
                    s,
                    "| {name} | {} | {:?} | {} | {} | {} |",
                    c.points,
                    c.base,
                    c.order,
                    c.target_order,
                    yes_no(c.equal)
                );
            }
            for w in &g.warnings {
                let _ = writeln!(s, "\n> {w}");
            }
            Ok(s)
        }
    }
}
