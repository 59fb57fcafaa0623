//! Human-readable rendering of a verification report.

use std::fmt::Write;

use sincbound_core::report::{ReportDocument, RowKind};
use sincbound_core::verifier::{Expected, Status};

fn marker(matched: bool, expected: Expected, status: Status) -> &'static str {
    match (matched, expected, status) {
        (true, Expected::Fails, _) => "ok (expected violation)",
        (true, _, _) => "ok",
        (false, _, Status::Inconclusive) => "INCONCLUSIVE",
        (false, _, _) => "MISMATCH",
    }
}

pub fn report_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let (verified, violated, inconclusive) = doc.counts();
    let _ = writeln!(
        out,
        "sincbound {} | suite {} | grid {} | {} precision",
        doc.tool_version,
        doc.suite.as_str(),
        doc.grid,
        doc.precision_mode
    );
    let mut kind = None;
    for row in &doc.cases {
        if kind != Some(row.kind) {
            kind = Some(row.kind);
            let title = match row.kind {
                RowKind::Inequality => "inequalities",
                RowKind::Monotone => "monotonicity",
                RowKind::Application => "applications",
                RowKind::Sharpness => "sharpness",
            };
            let _ = writeln!(out, "\n[{title}]");
        }
        let _ = writeln!(
            out,
            "  {:<40} {:<12} margin {:+.3e} at {:<10.6} {}",
            row.id,
            row.status.as_str(),
            row.min_margin,
            row.argmin,
            marker(row.matched, row.expected, row.status)
        );
        if let Some(w) = row.witness {
            let _ = writeln!(out, "  {:<40} witness x = {:.12}, gap = {:+.3e}", "", w.x, w.gap);
        }
        if let Some(note) = &row.note {
            let _ = writeln!(out, "  {:<40} note: {note}", "");
        }
    }
    let _ = writeln!(
        out,
        "\n{} rows: {verified} verified, {violated} violated, {inconclusive} inconclusive; {}",
        doc.cases.len(),
        if doc.all_expected { "all as expected" } else { "MISMATCHES PRESENT" }
    );
    out
}
