//! Rendering of suite reports: aligned human tables and a deterministic
//! machine format with stable field names.

use crate::suites::{CaseResult, Status, SuiteReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMode {
    Table,
    Machine,
}

/// Renders a report. Machine output zeroes the timing fields unless timing
/// was explicitly requested, so identical runs are byte-identical.
pub fn render_report(report: &SuiteReport, mode: OutputMode, include_timing: bool) -> String {
    match mode {
        OutputMode::Table => render_table(report),
        OutputMode::Machine => render_machine(report, include_timing),
    }
}

pub fn render_machine(report: &SuiteReport, include_timing: bool) -> String {
    let mut report = report.clone();
    if !include_timing {
        report.millis = 0;
        for case in &mut report.cases {
            case.millis = 0;
        }
    }
    serde_json::to_string(&report).expect("report serialization is infallible")
}

pub fn render_table(report: &SuiteReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("suite {}", report.suite));
    if let Some(seed) = report.seed {
        out.push_str(&format!("  seed={seed}"));
    }
    if let Some(swept) = report.swept {
        out.push_str(&format!("  swept={swept}"));
    }
    out.push_str(&format!("  millis={}\n", report.millis));
    if report.cases.is_empty() {
        out.push_str("  0 cases\n");
        return out;
    }
    let width = report.cases.iter().map(|c| c.case.len()).max().unwrap_or(0);
    for CaseResult { case, status, witness, millis } in &report.cases {
        let status = match status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
        };
        out.push_str(&format!("  {case:<width$}  {status}  {millis:>5} ms"));
        if let Some(w) = witness {
            out.push_str(&format!("  witness: {w}"));
        }
        out.push('\n');
    }
    let verdict = if report.passed() { "PASS" } else { "FAIL" };
    out.push_str(&format!("  => {verdict} ({} cases)\n", report.cases.len()));
    out
}
