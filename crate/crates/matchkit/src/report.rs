//! Pinned report serializations: JSON, TSV, and human-readable text.
//!
//! Field order and formats are part of the external contract. Reports are
//! byte-identical for identical runs; wall-clock time serializes as 0.0
//! unless the caller explicitly recorded it.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::search::{Outcome, SearchReport, Witness};
use crate::suites::SuiteReport;
use crate::table::TableRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
    Tsv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "human" => Ok(Format::Human),
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            other => Err(Error::argument(format!(
                "unknown format `{other}` (expected human, json, or tsv)"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Human => "human",
            Format::Json => "json",
            Format::Tsv => "tsv",
        })
    }
}

#[derive(Serialize)]
struct WitnessJson {
    #[serde(rename = "A")]
    a: String,
    #[serde(rename = "B")]
    b: String,
}

impl WitnessJson {
    fn from(w: &Witness) -> Self {
        WitnessJson {
            a: w.a.to_string(),
            b: w.b.to_string(),
        }
    }
}

#[derive(Serialize)]
struct SearchReportJson {
    modulus: u64,
    property: String,
    outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson>,
    pairs_examined: u64,
    elapsed_seconds: f64,
}

impl SearchReportJson {
    fn from(r: &SearchReport) -> Self {
        SearchReportJson {
            modulus: r.modulus,
            property: r.property.clone(),
            outcome: match r.outcome {
                Outcome::Holds => "holds",
                Outcome::Counterexample(_) => "counterexample",
            },
            witness: r.witness().map(WitnessJson::from),
            pairs_examined: r.pairs_examined,
            elapsed_seconds: r.elapsed_seconds,
        }
    }
}

pub const SEARCH_TSV_HEADER: &str =
    "modulus\tproperty\toutcome\twitnessA\twitnessB\tpairs\tseconds";

fn search_tsv_row(r: &SearchReport) -> String {
    let (outcome, wa, wb) = match r.witness() {
        None => ("holds", "-".to_string(), "-".to_string()),
        Some(w) => ("counterexample", w.a.to_string(), w.b.to_string()),
    };
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{:.3}",
        r.modulus, r.property, outcome, wa, wb, r.pairs_examined, r.elapsed_seconds
    )
}

fn search_human(r: &SearchReport) -> String {
    let mut out = format!(
        "Z/{}Z, property {}: {}",
        r.modulus,
        r.property,
        match &r.outcome {
            Outcome::Holds => "holds".to_string(),
            Outcome::Counterexample(w) => format!(
                "counterexample A={} B={} ({})",
                w.a,
                w.b,
                match w.kind {
                    crate::search::WitnessKind::NoAcyclicMatching =>
                        "matchings exist, none acyclic",
                    crate::search::WitnessKind::NoMatching => "no matching at all",
                }
            ),
        }
    );
    out.push_str(&format!(
        "\n  pairs examined: {}, elapsed: {:.3}s",
        r.pairs_examined, r.elapsed_seconds
    ));
    out
}

/// Serializes one or more search reports in the requested format.
pub fn emit_search_reports(reports: &[SearchReport], format: Format) -> String {
    match format {
        Format::Json => {
            if reports.len() == 1 {
                serde_json::to_string(&SearchReportJson::from(&reports[0])).expect("serialize")
            } else {
                serde_json::to_string(
                    &reports
                        .iter()
                        .map(SearchReportJson::from)
                        .collect::<Vec<_>>(),
                )
                .expect("serialize")
            }
        }
        Format::Tsv => {
            let mut out = SEARCH_TSV_HEADER.to_string();
            for r in reports {
                out.push('\n');
                out.push_str(&search_tsv_row(r));
            }
            out
        }
        Format::Human => reports
            .iter()
            .map(search_human)
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

#[derive(Serialize)]
struct TableRowJson {
    modulus: u64,
    property: &'static str,
    outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

fn row_verdict(r: &TableRow) -> &'static str {
    match r.acyclic_property {
        Some(true) => "Yes",
        Some(false) => "No",
        None => "unreproduced",
    }
}

/// Serializes the verdict table.
pub fn emit_table(rows: &[TableRow], format: Format) -> String {
    match format {
        Format::Json => {
            let rows: Vec<TableRowJson> = rows
                .iter()
                .map(|r| TableRowJson {
                    modulus: r.modulus,
                    property: "acyclic-matching",
                    outcome: match r.acyclic_property {
                        Some(true) => "holds",
                        Some(false) => "counterexample",
                        None => "unreproduced",
                    },
                    witness: r.witness.as_ref().map(WitnessJson::from),
                    note: r.note.clone(),
                })
                .collect();
            serde_json::to_string(&rows).expect("serialize")
        }
        Format::Tsv => {
            let mut out = "modulus\tacyclic_property\twitnessA\twitnessB".to_string();
            for r in rows {
                let (wa, wb) = match &r.witness {
                    None => ("-".to_string(), "-".to_string()),
                    Some(w) => (w.a.to_string(), w.b.to_string()),
                };
                out.push_str(&format!(
                    "\n{}\t{}\t{}\t{}",
                    r.modulus,
                    row_verdict(r),
                    wa,
                    wb
                ));
            }
            out
        }
        Format::Human => {
            let mut out = String::from("  p | acyclic matching property | A and B");
            for r in rows {
                let pair = match &r.witness {
                    None => r.note.clone().unwrap_or_else(|| "-".to_string()),
                    Some(w) => format!("A={} B={}", w.a, w.b),
                };
                out.push_str(&format!(
                    "\n{:>3} | {:^25} | {}",
                    r.modulus,
                    row_verdict(r),
                    pair
                ));
            }
            out
        }
    }
}

/// Serializes suite outcomes.
pub fn emit_suite_reports(reports: &[SuiteReport], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(reports).expect("serialize"),
        Format::Tsv => {
            let mut out = String::from("suite\tpassed\tchecks\tviolations\texperimental");
            for r in reports {
                out.push_str(&format!(
                    "\n{}\t{}\t{}\t{}\t{}",
                    r.name, r.passed, r.checks, r.violations, r.experimental
                ));
            }
            out
        }
        Format::Human => reports
            .iter()
            .map(|r| {
                format!(
                    "suite {}: {} ({} checks, {} violations){} — {}",
                    r.name,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.checks,
                    r.violations,
                    if r.experimental {
                        " [experimental]"
                    } else {
                        ""
                    },
                    r.detail
                )
            })
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{GroupSpec, Subset};
    use crate::search::WitnessKind;

    fn sample_report() -> SearchReport {
        let spec = GroupSpec::cyclic(7).unwrap();
        SearchReport {
            modulus: 7,
            property: "acyclic-matching".into(),
            outcome: Outcome::Counterexample(Witness {
                a: Subset::from_residues(&spec, &[0, 4, 6]).unwrap(),
                b: Subset::from_residues(&spec, &[3, 5, 6]).unwrap(),
                kind: WitnessKind::NoAcyclicMatching,
            }),
            pairs_examined: 42,
            elapsed_seconds: 0.0,
        }
    }

    #[test]
    fn json_schema_is_pinned() {
        let json = emit_search_reports(&[sample_report()], Format::Json);
        assert_eq!(
            json,
            r#"{"modulus":7,"property":"acyclic-matching","outcome":"counterexample","witness":{"A":"{0,4,6}","B":"{3,5,6}"},"pairs_examined":42,"elapsed_seconds":0.0}"#
        );
        let holds = SearchReport {
            outcome: Outcome::Holds,
            ..sample_report()
        };
        let json = emit_search_reports(&[holds], Format::Json);
        assert_eq!(
            json,
            r#"{"modulus":7,"property":"acyclic-matching","outcome":"holds","pairs_examined":42,"elapsed_seconds":0.0}"#
        );
    }

    #[test]
    fn tsv_header_is_pinned() {
        let tsv = emit_search_reports(&[sample_report()], Format::Tsv);
        let mut lines = tsv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "modulus\tproperty\toutcome\twitnessA\twitnessB\tpairs\tseconds"
        );
        assert_eq!(
            lines.next().unwrap(),
            "7\tacyclic-matching\tcounterexample\t{0,4,6}\t{3,5,6}\t42\t0.000"
        );
    }

    #[test]
    fn table_json_contains_reference_witness_shape() {
        let spec = GroupSpec::cyclic(7).unwrap();
        let rows = vec![TableRow {
            modulus: 7,
            acyclic_property: Some(false),
            witness: Some(Witness {
                a: Subset::from_residues(&spec, &[0, 4, 6]).unwrap(),
                b: Subset::from_residues(&spec, &[3, 5, 6]).unwrap(),
                kind: WitnessKind::NoAcyclicMatching,
            }),
            note: None,
        }];
        let json = emit_table(&rows, Format::Json);
        assert!(json.contains(r#""witness":{"A":"{0,4,6}","B":"{3,5,6}"}"#));
    }
}
