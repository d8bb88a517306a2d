//! Text and JSON renderings shared by the command-line tool and examples.

use serde::Serialize;
use serde_json::json;

use crate::checks::Check;
use crate::discrimination::Classifier;
use crate::error::Result;
use crate::field::{rational_string, rational_to_f64};
use crate::fock::SparseState;
use crate::schemes::SuccessReport;

/// One support pattern of an evolved state.
#[derive(Clone, Debug, Serialize)]
pub struct StateRow {
    pub pattern: String,
    pub amplitude: String,
    pub canonical: String,
    pub probability: String,
    pub probability_decimal: String,
}

pub fn state_rows(state: &SparseState) -> Result<Vec<StateRow>> {
    state
        .terms()
        .iter()
        .map(|(occ, amp)| {
            let p = state.probability_of(occ)?;
            Ok(StateRow {
                pattern: occ.to_string(),
                amplitude: amp.to_string(),
                canonical: amp.canonical_string(),
                probability: rational_string(&p),
                probability_decimal: format!("{:.12}", rational_to_f64(&p)),
            })
        })
        .collect()
}

pub fn state_text(title: &str, state: &SparseState) -> Result<String> {
    let rows = state_rows(state)?;
    let width = rows.iter().map(|r| r.amplitude.len()).max().unwrap_or(0).max(9);
    let mut out = format!("{title}: {} patterns on {} modes (monomial coefficients)\n", rows.len(), state.mode_count());
    out.push_str(&format!("  {:<16} {:<width$}  probability\n", "pattern", "amplitude"));
    for r in &rows {
        out.push_str(&format!("  {:<16} {:<width$}  {}\n", format!("|{}>", r.pattern), r.amplitude, r.probability));
    }
    out.push_str(&format!("  total probability {}\n", state.total_probability()?));
    Ok(out)
}

pub fn state_json(title: &str, state: &SparseState) -> Result<serde_json::Value> {
    Ok(json!({
        "title": title,
        "modes": state.mode_count(),
        "convention": state.convention(),
        "total_probability": rational_string(&state.total_probability()?),
        "terms": state_rows(state)?,
    }))
}

pub fn success_text(r: &SuccessReport) -> String {
    let mut out = format!("{}\n  {:<12} {:>10} {:>10} {:>14}\n", r.scheme, "input", "success", "error", "inconclusive");
    for (label, o) in &r.outcomes {
        out.push_str(&format!(
            "  {:<12} {:>10} {:>10} {:>14}\n",
            label.name(),
            o.success.to_string(),
            o.error.to_string(),
            o.inconclusive.to_string()
        ));
    }
    let total = r.total();
    out.push_str(&format!("  total {total} ({:.6})\n", rational_to_f64(&total)));
    out
}

pub fn classifier_text(c: &Classifier) -> String {
    let mut out = String::new();
    for (occ, v) in c.table() {
        out.push_str(&format!("  |{occ}>  {v}\n"));
    }
    out
}

pub fn classifier_json(c: &Classifier) -> serde_json::Value {
    json!({ "labels": c.labels(), "patterns": c.records() })
}

pub fn checks_text(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        out.push_str(&c.to_string());
        out.push('\n');
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    out.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
    out
}

pub fn checks_json(checks: &[Check]) -> serde_json::Value {
    json!({
        "passed": checks.iter().all(|c| c.passed),
        "checks": checks,
    })
}
