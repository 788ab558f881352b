use std::collections::BTreeMap;

use qeuler::identities::{ReportRecord, Skipped};
use qeuler::padic::Valuation;
use serde::Serialize;
use serde_json::Value;

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One record per invocation. Field order and map ordering are fixed, so
/// identical inputs serialize to identical bytes.
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OutputRecord {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub result: Payload,
    pub artifact_version: &'static str,
}

impl OutputRecord {
    pub fn new(command: &str, params: BTreeMap<String, Value>, result: Payload) -> Self {
        OutputRecord {
            command: command.to_string(),
            params,
            result,
            artifact_version: ARTIFACT_VERSION,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("output record serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    #[serde(rename_all = "camelCase")]
    RationalFunction {
        value: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        at_q0: Option<String>,
    },
    Rational {
        value: String,
    },
    #[serde(rename_all = "camelCase")]
    IdentityReports {
        all_asserted_hold: bool,
        report_count: usize,
        reports: Vec<ReportRecord>,
        skipped: Vec<Skipped>,
    },
    #[serde(rename_all = "camelCase")]
    ProbeTable {
        integrand: String,
        exact: String,
        exact_at_q0: String,
        non_decreasing: bool,
        meets_level_bound: bool,
        rows: Vec<ProbeRow>,
    },
    ValueTable {
        rows: Vec<TableRow>,
    },
}

#[derive(Debug, Serialize)]
pub struct ProbeRow {
    #[serde(rename = "N")]
    pub level: u32,
    #[serde(rename = "sN")]
    pub partial: String,
    #[serde(rename = "residualValuation")]
    pub valuation: Valuation,
}

#[derive(Debug, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub value: String,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv<const W: usize>(header: [&str; W], rows: impl IntoIterator<Item = [String; W]>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let fields: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_only_when_needed() {
        let out = csv(["a", "b"], [["1".to_string(), "x,y".to_string()]]);
        assert_eq!(out, "a,b\n1,\"x,y\"\n");
    }

    #[test]
    fn record_layout_is_stable() {
        let mut params = BTreeMap::new();
        params.insert("n".to_string(), Value::from(1));
        let rec = OutputRecord::new(
            "compute euler-number",
            params,
            Payload::Rational { value: "-1/2".into() },
        );
        let json = rec.to_json();
        assert!(json.starts_with("{\n  \"command\": \"compute euler-number\""));
        assert!(json.contains("\"kind\": \"rational\""));
        assert!(json.ends_with("\"artifactVersion\": \"0.1.0\"\n}\n"));
    }
}
