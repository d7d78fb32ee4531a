//! Serialization: graph6 for graphs, CSV / Markdown / JSON for reports.

mod graph6;
mod report;

pub use graph6::{decode_graph6, encode_graph6, Graph6Error, Graph6String, MAX_VERTICES};
pub use report::{emit_report, emit_scan, ReportFormat, ReportRecord, RECORD_COLUMNS};

/// Decodes a graph6 file: one graph per non-blank line. Errors are kept per
/// line so one bad line does not hide the rest.
pub fn decode_graph6_lines(text: &str) -> Vec<(usize, Result<crate::graph::UGraph, Graph6Error>)> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(k, line)| (k + 1, decode_graph6(line.trim_end_matches('\r'))))
        .collect()
}
