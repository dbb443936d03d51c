//! Text and JSON renderings of reports and distance traces.

use std::fmt::Write as _;

use carpet_core::{DistanceTrace, HoleCorners, LatticePoint, Word};
use serde_json::{json, Value};

use crate::engine::{Mismatch, ValidationMode, ValidationReport, WienerReport};

fn point_json(p: LatticePoint) -> Value {
    json!([p.x, p.y])
}

fn corners_json(c: &HoleCorners) -> Value {
    json!({
        "A": point_json(c.a),
        "B": point_json(c.b),
        "C": point_json(c.c),
        "D": point_json(c.d),
        "side": c.side,
        "level": c.level,
    })
}

pub fn trace_json(trace: &DistanceTrace) -> Value {
    json!({
        "case": trace.case.kind.name(),
        "axis": trace.case.travel_axis.name(),
        "swapped": trace.case.swapped,
        "h": trace.h,
        "l": trace.obstruction_index,
        "corners": trace.corners.as_ref().map(corners_json),
        "route": trace.route.name(),
        "value": trace.value,
    })
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "none".to_string(), |v| v.to_string())
}

/// `key=value` lines, one per trace field.
pub fn trace_lines(trace: &DistanceTrace) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "value={}", trace.value);
    let _ = writeln!(s, "case={}", trace.case.kind.name());
    let _ = writeln!(s, "axis={}", trace.case.travel_axis.name());
    let _ = writeln!(s, "swapped={}", trace.case.swapped);
    let _ = writeln!(s, "h={}", opt(trace.h));
    let _ = writeln!(s, "l={}", opt(trace.obstruction_index));
    let _ = writeln!(s, "corners={}", opt(trace.corners));
    let _ = writeln!(s, "route={}", trace.route.name());
    s
}

/// Single-line form used for counterexamples.
pub fn trace_inline(trace: &DistanceTrace) -> String {
    format!(
        "case={} axis={} swapped={} h={} l={} corners={} route={}",
        trace.case.kind.name(),
        trace.case.travel_axis.name(),
        trace.case.swapped,
        opt(trace.h),
        opt(trace.obstruction_index),
        opt(trace.corners),
        trace.route.name(),
    )
}

pub fn wiener_json(report: &WienerReport, timing: bool) -> Value {
    let mut v = json!({
        "level": report.level,
        "vertices": report.vertex_count,
        "wiener": report.wiener,
        "method": report.method.name(),
        "rule": report.rule.map(|r| r.name()),
        "oracle_wiener": report.oracle_wiener,
        "mismatches": report.mismatch_count,
        "agree": report.engines_agree(),
    });
    if timing {
        v["seconds"] = json!(report.elapsed.as_secs_f64());
    }
    v
}

/// A JSON array of reports, pretty-printed, with a trailing newline.
pub fn wiener_reports_json(reports: &[WienerReport], timing: bool) -> String {
    let rows: Vec<Value> = reports.iter().map(|r| wiener_json(r, timing)).collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("reports serialize");
    s.push('\n');
    s
}

/// Tab-separated columns, each padded to a common width.
pub fn wiener_reports_tsv(reports: &[WienerReport], timing: bool) -> String {
    let mut header = vec!["level", "vertices", "wiener", "method", "rule", "oracle", "mismatches"];
    if timing {
        header.push("seconds");
    }
    let mut rows: Vec<Vec<String>> = vec![header.iter().map(|h| h.to_string()).collect()];
    for r in reports {
        let mut row = vec![
            r.level.to_string(),
            r.vertex_count.to_string(),
            r.wiener.to_string(),
            r.method.name().to_string(),
            r.rule.map_or("-", |r| r.name()).to_string(),
            r.oracle_wiener.map_or("-".to_string(), |v| v.to_string()),
            r.mismatch_count.map_or("-".to_string(), |v| v.to_string()),
        ];
        if timing {
            row.push(format!("{:.3}", r.elapsed.as_secs_f64()));
        }
        rows.push(row);
    }
    let widths: Vec<usize> =
        (0..rows[0].len()).map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
    let mut s = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(cell, &w)| format!("{cell:<w$}")).collect();
        let _ = writeln!(s, "{}", cells.join("\t").trim_end());
    }
    s
}

fn mode_name(mode: ValidationMode) -> String {
    match mode {
        ValidationMode::Exhaustive => "exhaustive".to_string(),
        ValidationMode::Sample { pairs, seed } => format!("sample({pairs},{seed})"),
    }
}

pub fn mismatch_line(m: &Mismatch) -> String {
    format!(
        "mismatch {} {} formula={} oracle={} {}",
        m.word1,
        m.word2,
        m.formula,
        m.oracle,
        trace_inline(&m.trace)
    )
}

pub fn validation_text(report: &ValidationReport, timing: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "level={}", report.level);
    let _ = writeln!(s, "rule={}", report.rule.name());
    let _ = writeln!(s, "mode={}", mode_name(report.mode));
    let _ = writeln!(s, "pairs_checked={}", report.pairs_checked);
    let _ = writeln!(s, "mismatches={}", report.mismatches.len());
    if timing {
        let _ = writeln!(s, "seconds={:.3}", report.elapsed.as_secs_f64());
    }
    for m in &report.mismatches {
        let _ = writeln!(s, "{}", mismatch_line(m));
    }
    s
}

pub fn validation_json(report: &ValidationReport, timing: bool) -> String {
    let mismatches: Vec<Value> = report
        .mismatches
        .iter()
        .map(|m| {
            json!({
                "word1": m.word1.to_string(),
                "word2": m.word2.to_string(),
                "formula": m.formula,
                "oracle": m.oracle,
                "trace": trace_json(&m.trace),
            })
        })
        .collect();
    let mut v = json!({
        "level": report.level,
        "rule": report.rule.name(),
        "mode": mode_name(report.mode),
        "pairs_checked": report.pairs_checked,
        "mismatch_count": report.mismatches.len(),
        "mismatches": mismatches,
    });
    if timing {
        v["seconds"] = json!(report.elapsed.as_secs_f64());
    }
    let mut s = serde_json::to_string_pretty(&v).expect("report serializes");
    s.push('\n');
    s
}

/// Words as given on the command line plus their canonical forms.
pub fn word_pair_lines(w1: &Word, w2: &Word, c1: &Word, c2: &Word) -> String {
    format!("word1={w1}\nword2={w2}\ncanonical1={c1}\ncanonical2={c2}\n")
}
