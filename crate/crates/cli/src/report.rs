//! JSON report envelope shared by every subcommand, plus the reader that
//! round-trips it. The schema is one object with a `meta` block (version,
//! command, config echo, optional summary) and a `records` array.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report<T> {
    pub meta: Meta,
    pub records: Vec<T>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    pub command: String,
    pub config: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<serde_json::Value>,
}

impl Meta {
    pub fn new(command: &str, config: serde_json::Value) -> Self {
        Meta {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            config,
            summary: None,
        }
    }
}

/// Parses a report emitted with `--format json`.
pub fn read_report(s: &str) -> serde_json::Result<Report<serde_json::Value>> {
    serde_json::from_str(s)
}

pub fn to_json<T: Serialize>(report: &Report<T>) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalRecord {
    pub a: u64,
    pub value: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SumRecord {
    pub q: u64,
    pub n: u64,
    pub u: u64,
    pub v: u64,
    pub u_prime: u64,
    pub v_prime: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<u64>,
    #[serde(rename = "match", default, skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchRow {
    pub q: u64,
    pub n: u64,
    pub u: u64,
    pub v: u64,
    pub u_prime: u64,
    pub v_prime: u64,
    pub cube_sum: u64,
    pub filter_verdict: String,
    pub is_permutation: bool,
}

impl From<&dickson_core::search::SearchRecord> for SearchRow {
    fn from(r: &dickson_core::search::SearchRecord) -> Self {
        SearchRow {
            q: r.q,
            n: r.n,
            u: r.u,
            v: r.v,
            u_prime: r.u_prime,
            v_prime: r.v_prime,
            cube_sum: r.cube_sum,
            filter_verdict: r.filter_verdict.as_str().to_string(),
            is_permutation: r.is_permutation,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Counterexample {
    pub q: u64,
    /// The sweep index: n where the suite is n-indexed, otherwise the
    /// flattened case index within the grid for that q.
    pub n: u64,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub cases: u64,
    pub failures: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldInfoRecord {
    pub q: u64,
    pub p: u64,
    pub e: u32,
    /// Modulus of GF(q) over F_p, low-degree-first coefficients.
    pub modulus: Vec<u64>,
    pub modulus_pretty: String,
    /// Modulus of GF(q^2) over GF(q); coefficients are GF(q) element codes.
    pub ext_modulus: Vec<u64>,
    pub ext_modulus_pretty: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips() {
        let report = Report {
            meta: Meta::new("eval", serde_json::json!({"q": 5, "n": 2})),
            records: vec![EvalRecord { a: 1, value: 4 }],
        };
        let text = to_json(&report);
        let back = read_report(&text).unwrap();
        let again = serde_json::to_value(&back).unwrap();
        let original: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(again, original);
    }
}
