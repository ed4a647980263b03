//! Plain-text views for `--pretty`.

use std::fmt::Write;

use serde_json::Value;
use tracecode::code::{CodeReport, DualDistance};
use tracecode::sss::AccessStructure;

pub fn code_table(report: &CodeReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "[{}, {}, {}] over GF({}) from GF({}^{}), {}",
        report.n,
        report.k,
        report.d,
        report.p,
        report.p,
        report.m,
        report.kind.label()
    );
    let _ = writeln!(s, "{:>8}  {:>12}", "weight", "count");
    for (w, a) in report.weights.nonzero() {
        let _ = writeln!(s, "{w:>8}  {a:>12}");
    }
    s
}

pub fn verify_table(cells: &[Value]) -> String {
    let mut s = String::new();
    for cell in cells {
        let (p, m) = (&cell["p"], &cell["m"]);
        if let Some(reports) = cell["theorems"].as_array() {
            for r in reports {
                let variant = if r["punctured"].as_bool() == Some(true) {
                    "punctured"
                } else {
                    "full"
                };
                let status = match (r.get("skipped"), r["pass"].as_bool()) {
                    (Some(_), _) => "skip",
                    (None, Some(true)) => "ok",
                    _ => "FAIL",
                };
                let _ = writeln!(s, "p={p} m={m} {variant:<9} weights  {status}");
            }
        }
        if cell["lemmas"].is_object() {
            let checks = &cell["lemmas"]["checks"];
            let failed = &cell["lemmas"]["failed"];
            let _ = writeln!(s, "p={p} m={m} identities {checks} checked, {failed} failed");
        }
    }
    s
}

pub fn structure_summary(st: &AccessStructure, d_dual: &DualDistance) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} participants, {} minimal access sets, dual distance {}{}",
        st.participants,
        st.minimal_access_sets.len(),
        d_dual.value,
        if d_dual.exact { "" } else { " (lower bound)" }
    );
    if !st.dictators.is_empty() {
        let _ = writeln!(s, "dictators: {:?}", st.dictators);
    }
    for set in st.minimal_access_sets.iter().take(20) {
        let _ = writeln!(s, "  {set:?}");
    }
    if st.minimal_access_sets.len() > 20 {
        let _ = writeln!(s, "  ...");
    }
    s
}
