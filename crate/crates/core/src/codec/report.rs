//! Tabular report output: CSV, Markdown and JSON.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::spectral::ScanRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!(
                "unknown format {other:?} (expected csv, markdown or json)"
            )),
        }
    }
}

fn rounded(x: f64, places: i32) -> f64 {
    let scale = 10f64.powi(places);
    let r = (x * scale).round() / scale;
    // avoid printing -0
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn round6<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(rounded(*x, 6))
}

fn round3<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(rounded(*x, 3))
}

/// One measured member of the family. Values are held at full precision;
/// serialization rounds spectral values to 6 decimals and Cheeger bounds to
/// 3.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRecord {
    pub n: usize,
    /// Wiring permutation in cycle notation.
    pub wiring: String,
    pub vertices: usize,
    pub edges: usize,
    pub degree: usize,
    pub girth: Option<usize>,
    pub diameter: Option<usize>,
    pub aut_order: u64,
    #[serde(serialize_with = "round6")]
    pub lambda2_abs: f64,
    #[serde(serialize_with = "round6")]
    pub nontrivial_abs_max: f64,
    #[serde(serialize_with = "round6")]
    pub spectral_gap: f64,
    #[serde(serialize_with = "round3")]
    pub cheeger_lower: f64,
    #[serde(serialize_with = "round3")]
    pub cheeger_upper: f64,
    pub ramanujan: bool,
    pub distinct_eigs: usize,
    pub hamiltonian: Option<bool>,
    pub chromatic_number: Option<usize>,
    pub three_colorable: Option<bool>,
}

pub const RECORD_COLUMNS: [&str; 18] = [
    "n",
    "wiring",
    "vertices",
    "edges",
    "degree",
    "girth",
    "diameter",
    "aut_order",
    "lambda2_abs",
    "nontrivial_abs_max",
    "spectral_gap",
    "cheeger_lower",
    "cheeger_upper",
    "ramanujan",
    "distinct_eigs",
    "hamiltonian",
    "chromatic_number",
    "three_colorable",
];

#[derive(Serialize)]
struct ScanLine {
    n: usize,
    #[serde(serialize_with = "round6")]
    lambda2: f64,
    #[serde(serialize_with = "round6")]
    nontrivial_abs_max: f64,
    #[serde(serialize_with = "round6")]
    spectral_gap: f64,
    #[serde(serialize_with = "round3")]
    cheeger_lower: f64,
    #[serde(serialize_with = "round3")]
    cheeger_upper: f64,
    ramanujan: bool,
}

const SCAN_COLUMNS: [&str; 7] = [
    "n",
    "lambda2",
    "nontrivial_abs_max",
    "spectral_gap",
    "cheeger_lower",
    "cheeger_upper",
    "ramanujan",
];

impl From<&ScanRow> for ScanLine {
    fn from(r: &ScanRow) -> Self {
        ScanLine {
            n: r.n,
            lambda2: r.lambda2,
            nontrivial_abs_max: r.nontrivial_abs_max,
            spectral_gap: r.spectral_gap,
            cheeger_lower: r.cheeger_lower,
            cheeger_upper: r.cheeger_upper,
            ramanujan: r.ramanujan,
        }
    }
}

fn to_csv(columns: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(columns).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

fn to_json<T: Serialize>(rows: &[T]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("records serialize to JSON");
    s.push('\n');
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt<T: ToString>(x: Option<T>, missing: &str) -> String {
    x.map_or_else(|| missing.to_string(), |v| v.to_string())
}

fn markdown_table(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
    for row in rows {
        let _ = writeln!(out, "| {} |", row.join(" | "));
    }
    out
}

pub fn emit_report(records: &[ReportRecord], format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => to_csv(
            &RECORD_COLUMNS,
            records
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.wiring.clone(),
                        r.vertices.to_string(),
                        r.edges.to_string(),
                        r.degree.to_string(),
                        opt(r.girth, ""),
                        opt(r.diameter, ""),
                        r.aut_order.to_string(),
                        format!("{:.6}", r.lambda2_abs),
                        format!("{:.6}", r.nontrivial_abs_max),
                        format!("{:.6}", r.spectral_gap),
                        format!("{:.3}", r.cheeger_lower),
                        format!("{:.3}", r.cheeger_upper),
                        r.ramanujan.to_string(),
                        r.distinct_eigs.to_string(),
                        opt(r.hamiltonian, ""),
                        opt(r.chromatic_number, ""),
                        opt(r.three_colorable, ""),
                    ]
                })
                .collect(),
        ),
        ReportFormat::Json => to_json(records),
        ReportFormat::Markdown => {
            let header = [
                "n",
                "Wiring",
                "Vertices",
                "Edges",
                "Degree",
                "Girth",
                "Diameter",
                "\\|Aut\\|",
                "\\|λ₂\\|",
                "max \\|λ\\| ≠ ±d",
                "2√(d−1)",
                "Ramanujan?",
                "Distinct eigenvalues",
                "Spectral gap",
                "Cheeger lower",
                "Cheeger upper",
                "Hamiltonian",
                "χ",
            ];
            let rows = records
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.wiring.clone(),
                        r.vertices.to_string(),
                        r.edges.to_string(),
                        r.degree.to_string(),
                        opt(r.girth, "∞"),
                        opt(r.diameter, "∞"),
                        r.aut_order.to_string(),
                        format!("{:.6}", r.lambda2_abs),
                        format!("{:.6}", r.nontrivial_abs_max),
                        format!("{:.6}", crate::spectral::ramanujan_bound(r.degree)),
                        yes_no(r.ramanujan).to_string(),
                        r.distinct_eigs.to_string(),
                        format!("{:.6}", r.spectral_gap),
                        format!("{:.3}", r.cheeger_lower),
                        format!("{:.3}", r.cheeger_upper),
                        opt(r.hamiltonian.map(yes_no), "timeout"),
                        opt(r.chromatic_number, "?"),
                    ]
                })
                .collect();
            markdown_table(&header, rows)
        }
    }
}

pub fn emit_scan(rows: &[ScanRow], format: ReportFormat) -> String {
    let lines: Vec<ScanLine> = rows.iter().map(ScanLine::from).collect();
    match format {
        ReportFormat::Csv => to_csv(
            &SCAN_COLUMNS,
            lines
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        format!("{:.6}", r.lambda2),
                        format!("{:.6}", r.nontrivial_abs_max),
                        format!("{:.6}", r.spectral_gap),
                        format!("{:.3}", r.cheeger_lower),
                        format!("{:.3}", r.cheeger_upper),
                        r.ramanujan.to_string(),
                    ]
                })
                .collect(),
        ),
        ReportFormat::Json => to_json(&lines),
        ReportFormat::Markdown => {
            let header = [
                "n",
                "λ₂",
                "max \\|λ\\| ≠ ±d",
                "Spectral gap",
                "Cheeger lower",
                "Cheeger upper",
                "Ramanujan?",
            ];
            let body = lines
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        format!("{:.6}", r.lambda2),
                        format!("{:.6}", r.nontrivial_abs_max),
                        format!("{:.6}", r.spectral_gap),
                        format!("{:.3}", r.cheeger_lower),
                        format!("{:.3}", r.cheeger_upper),
                        yes_no(r.ramanujan).to_string(),
                    ]
                })
                .collect();
            markdown_table(&header, body)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ReportRecord {
        ReportRecord {
            n: 4,
            wiring: "(1 2 3 4)".into(),
            vertices: 40,
            edges: 120,
            degree: 6,
            girth: Some(4),
            diameter: Some(4),
            aut_order: 40,
            lambda2_abs: 4.077_683_771_1,
            nontrivial_abs_max: 4.077_683_771_1,
            spectral_gap: 1.922_316_228_9,
            cheeger_lower: 0.961_158_1,
            cheeger_upper: 4.802_894_7,
            ramanujan: true,
            distinct_eigs: 12,
            hamiltonian: Some(true),
            chromatic_number: Some(3),
            three_colorable: Some(true),
        }
    }

    #[test]
    fn empty_csv_is_header_only() {
        let out = emit_report(&[], ReportFormat::Csv);
        assert_eq!(out, format!("{}\n", RECORD_COLUMNS.join(",")));
    }

    #[test]
    fn csv_header_matches_fields() {
        let out = emit_report(&[sample()], ReportFormat::Csv);
        let mut lines = out.lines();
        assert_eq!(lines.next().unwrap(), RECORD_COLUMNS.join(","));
        let row = lines.next().unwrap();
        assert_eq!(row.split(',').count(), RECORD_COLUMNS.len());
        assert!(row.contains("4.077684"));
        assert!(row.contains(",0.961,4.803,"));
        assert!(row.ends_with(",true,12,true,3,true"), "{row}");
        let v: serde_json::Value = serde_json::to_value(sample()).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), RECORD_COLUMNS.len());
        for c in RECORD_COLUMNS {
            assert!(v.get(c).is_some(), "missing {c}");
        }
    }

    #[test]
    fn json_rounds_to_table_precision() {
        let out = emit_report(&[sample()], ReportFormat::Json);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v[0]["lambda2_abs"], serde_json::json!(4.077684));
        assert_eq!(v[0]["cheeger_upper"], serde_json::json!(4.803));
        assert_eq!(v[0]["ramanujan"], serde_json::json!(true));
    }

    #[test]
    fn markdown_has_one_line_per_record() {
        let out = emit_report(&[sample(), sample()], ReportFormat::Markdown);
        assert_eq!(out.lines().count(), 4);
        assert!(out.contains("| 4 | (1 2 3 4) | 40 | 120 | 6 | 4 | 4 | 40 | 4.077684 |"));
        assert!(out.contains("4.472136"));
    }

    #[test]
    fn output_is_deterministic() {
        let a = emit_report(&[sample()], ReportFormat::Json);
        let b = emit_report(&[sample()], ReportFormat::Json);
        assert_eq!(a, b);
    }

    #[test]
    fn format_parsing() {
        assert_eq!("CSV".parse(), Ok(ReportFormat::Csv));
        assert_eq!("md".parse(), Ok(ReportFormat::Markdown));
        assert!("xml".parse::<ReportFormat>().is_err());
    }
}
