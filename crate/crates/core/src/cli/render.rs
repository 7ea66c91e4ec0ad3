//! Report writers. JSON lines carry a header line with the tool version,
//! one record per line and a closing summary line; keys are sorted. CSV
//! output is a flat table preceded by a `#` comment naming the version.

use std::fmt::Write as _;

use serde_json::{json, Value};

use super::{CliError, Format, SeedKind};
use crate::dynamics::{field_label, CensusReport, FType, OrbitProfile, TransitionRecord};
use crate::poly::Poly;
use crate::verify::{Outcome, RunOutput};

fn tagged(record: &str, mut body: Value) -> Value {
    body["record"] = json!(record);
    body
}

fn jsonl(lines: impl IntoIterator<Item = Value>) -> String {
    let mut s = String::new();
    for v in lines {
        s.push_str(&v.to_string());
        s.push('\n');
    }
    s
}

fn csv_table(header: &Value, columns: &[&str], rows: Vec<Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(columns).map_err(csv_err)?;
    for r in rows {
        w.write_record(&r).map_err(csv_err)?;
    }
    let body = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(format!(
        "# {} {}\n{}",
        header["version"].as_str().unwrap_or_default(),
        header["command"].as_str().unwrap_or_default(),
        String::from_utf8(body).expect("csv writes utf-8")
    ))
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e.to_string()))
}

fn summary_head(header: &Value) -> String {
    format!(
        "{} {}\n",
        header["version"].as_str().unwrap_or_default(),
        header["command"].as_str().unwrap_or_default()
    )
}

pub fn render_census(
    header: &Value,
    report: &CensusReport,
    format: Format,
) -> Result<String, CliError> {
    let exceptional = report
        .listings
        .get("exceptional")
        .cloned()
        .unwrap_or_default();
    match format {
        Format::Jsonl => {
            let mut lines = vec![header.clone()];
            for (field, types) in &report.orbit_types {
                for (t, count) in types {
                    lines.push(json!({
                        "record": "orbit-type",
                        "field": field,
                        "orbit_type": t,
                        "count": count,
                    }));
                }
            }
            lines.extend(exceptional.into_iter().map(|v| tagged("exceptional", v)));
            lines.push(json!({
                "record": "summary",
                "fields": report.fields.iter().map(field_label).collect::<Vec<_>>(),
                "counters": report.counters,
            }));
            Ok(jsonl(lines))
        }
        Format::Csv => {
            let rows = report
                .orbit_types
                .iter()
                .flat_map(|(field, types)| {
                    types
                        .iter()
                        .map(move |(t, c)| vec![field.clone(), t.clone(), c.to_string()])
                })
                .collect();
            csv_table(header, &["field", "orbit_type", "count"], rows)
        }
        Format::Summary => {
            let mut s = summary_head(header);
            for (field, types) in &report.orbit_types {
                let total: u64 = types.values().sum();
                let _ = writeln!(s, "{field}: {total} quadratics");
                for (t, c) in types {
                    let _ = writeln!(s, "  {t:<10} {c}");
                }
            }
            let _ = writeln!(s, "(2,n) and (3,1) instances: {}", exceptional.len());
            for v in &exceptional {
                let _ = writeln!(
                    s,
                    "  {} f={} type=({},{})",
                    v["field"], v["f"], v["m"], v["n"]
                );
            }
            Ok(s)
        }
    }
}

pub fn render_ftype(
    header: &Value,
    profile: &OrbitProfile,
    g: &Poly,
    t: &FType,
    format: Format,
) -> Result<String, CliError> {
    let field = field_label(profile.field().spec());
    match format {
        Format::Jsonl => Ok(jsonl([
            header.clone(),
            tagged("orbit", profile.to_json()),
            json!({
                "record": "ftype",
                "field": field,
                "g": g.to_json(),
                "ftype": t.to_string(),
                "degenerate": t.is_degenerate(),
            }),
            json!({
                "record": "summary",
                "orbit_type": profile.orbit_type_label(),
                "ftype": t.to_string(),
            }),
        ])),
        Format::Csv => csv_table(
            header,
            &["field", "f", "orbit_type", "g", "ftype"],
            vec![vec![
                field,
                profile.quadratic().as_poly().to_text(),
                profile.orbit_type_label(),
                g.to_text(),
                t.to_string(),
            ]],
        ),
        Format::Summary => {
            let mut s = summary_head(header);
            let orbit: Vec<String> = profile
                .orbit()
                .iter()
                .map(|e| e.to_json().to_string())
                .collect();
            let _ = writeln!(s, "field      {field}");
            let _ = writeln!(s, "f          {}", profile.quadratic().as_poly().to_text());
            let _ = writeln!(s, "orbit      {}", orbit.join(" "));
            let _ = writeln!(s, "orbit type {}", profile.orbit_type_label());
            let _ = writeln!(s, "g          {}", g.to_text());
            let _ = writeln!(s, "f-type     {t}");
            Ok(s)
        }
    }
}

pub fn render_verify(
    header: &Value,
    output: &RunOutput,
    format: Format,
) -> Result<String, CliError> {
    let report = &output.report;
    match format {
        Format::Jsonl => {
            let mut lines = vec![header.clone()];
            lines.extend(
                output
                    .verdicts
                    .iter()
                    .map(|v| tagged("verdict", v.to_json())),
            );
            for (claim, st) in &output.status {
                let mut v = tagged("claim", st.to_json());
                v["claim"] = json!(claim.name());
                lines.push(v);
            }
            lines.push(json!({
                "record": "summary",
                "fields": report.fields.iter().map(field_label).collect::<Vec<_>>(),
                "orbit_types": report.orbit_types,
                "signatures": report.signatures,
                "counters": report.counters,
                "listings": report.listings,
                "counterexamples": report.counterexamples,
                "exit_code": output.exit_code(),
            }));
            Ok(jsonl(lines))
        }
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = output
                .status
                .iter()
                .map(|(c, st)| {
                    vec![
                        "claim".into(),
                        c.name().into(),
                        st.outcome.as_str().into(),
                        st.exercised.to_string(),
                    ]
                })
                .collect();
            rows.extend(
                report
                    .counters
                    .iter()
                    .map(|(k, v)| vec!["counter".into(), k.clone(), String::new(), v.to_string()]),
            );
            rows.extend(
                report.signatures.iter().map(|(k, v)| {
                    vec!["signature".into(), k.clone(), String::new(), v.to_string()]
                }),
            );
            csv_table(header, &["kind", "key", "outcome", "count"], rows)
        }
        Format::Summary => {
            let mut s = summary_head(header);
            let labels: Vec<String> = report.fields.iter().map(field_label).collect();
            let _ = writeln!(s, "fields: {}", labels.join(" "));
            for (claim, st) in &output.status {
                let _ = writeln!(
                    s,
                    "{:<20} {:<12} exercised {:>8}  failures {}",
                    claim.name(),
                    st.outcome.as_str(),
                    st.exercised,
                    st.failures
                );
                if !st.note.is_empty() {
                    let _ = writeln!(s, "{:<20} {}", "", st.note);
                }
            }
            let classes: Vec<(&String, &u64)> = report
                .counters
                .iter()
                .filter(|(k, _)| k.starts_with("missing:") && k.contains(":class:"))
                .collect();
            if !classes.is_empty() {
                let _ = writeln!(s, "window classes:");
                for (k, v) in classes {
                    let _ = writeln!(s, "  {:<28} {v}", k.trim_start_matches("missing:"));
                }
            }
            let failing = output
                .verdicts
                .iter()
                .filter(|v| v.outcome == Outcome::Fail)
                .take(20);
            for v in failing {
                let _ = writeln!(s, "FAIL {v}");
                if let Some(w) = &v.witness {
                    let _ = writeln!(s, "     {w}");
                }
            }
            let _ = writeln!(s, "exit code {}", output.exit_code());
            Ok(s)
        }
    }
}

fn source(kind: &SeedKind) -> String {
    match kind {
        SeedKind::Generic => "generic".into(),
        SeedKind::Iterate(i) => format!("f^{i}"),
    }
}

pub fn render_transitions(
    header: &Value,
    records: &[(SeedKind, TransitionRecord)],
    format: Format,
) -> Result<String, CliError> {
    match format {
        Format::Jsonl => {
            let mut lines = vec![header.clone()];
            let mut degenerate = 0;
            let mut truncated = 0;
            for (kind, rec) in records {
                let mut v = tagged("transition", rec.to_json());
                v["source"] = json!(source(kind));
                degenerate += rec.is_degenerate() as u64;
                truncated += rec.truncation.is_some() as u64;
                lines.push(v);
            }
            lines.push(json!({
                "record": "summary",
                "chains": records.len(),
                "degenerate": degenerate,
                "truncated": truncated,
            }));
            Ok(jsonl(lines))
        }
        Format::Csv => {
            let rows = records
                .iter()
                .map(|(kind, rec)| {
                    vec![
                        field_label(rec.f.field().spec()),
                        rec.seed_g.to_text(),
                        source(kind),
                        rec.steps().to_string(),
                        rec.signature(),
                        rec.is_degenerate().to_string(),
                        rec.truncation
                            .map(|t| t.reason.as_str().to_string())
                            .unwrap_or_default(),
                    ]
                })
                .collect();
            csv_table(
                header,
                &[
                    "field",
                    "g",
                    "source",
                    "steps",
                    "signature",
                    "degenerate",
                    "truncated",
                ],
                rows,
            )
        }
        Format::Summary => {
            let mut s = summary_head(header);
            for (kind, rec) in records {
                let mut marks = String::new();
                if rec.is_degenerate() {
                    marks.push_str(" [degenerate]");
                }
                if let Some(t) = rec.truncation {
                    let _ = write!(
                        marks,
                        " [stopped at level {}: {}]",
                        t.level,
                        t.reason.as_str()
                    );
                }
                let _ = writeln!(
                    s,
                    "{:<8} g={:<16} {}{marks}",
                    source(kind),
                    rec.seed_g.to_text(),
                    rec.signature()
                );
            }
            Ok(s)
        }
    }
}
