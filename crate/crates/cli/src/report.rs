//! Verification records and their JSON-lines and CSV renderings.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::CliError;

/// Outcome of one identity check.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Record {
    pub suite: String,
    pub identity: String,
    pub tier: String,
    pub params: BTreeMap<String, String>,
    pub computed: String,
    pub reference: String,
    pub abs_residual: Option<f64>,
    pub rel_residual: Option<f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub wall_ms: f64,
}

/// Closing line of a report.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Summary {
    pub summary: bool,
    pub suite: String,
    pub tier: String,
    pub seed: u64,
    pub config: BTreeMap<String, String>,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub worst_rel_residual: Option<f64>,
    pub wall_ms: f64,
}

/// A finished suite run.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn write_jsonl(&self, out: &mut dyn Write) -> Result<(), CliError> {
        for r in &self.records {
            writeln!(out, "{}", serde_json::to_string(r)?)?;
        }
        writeln!(out, "{}", serde_json::to_string(&self.summary)?)?;
        Ok(())
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> Result<(), CliError> {
        let keys: Vec<String> = {
            let mut k: Vec<String> = self.records.iter().flat_map(|r| r.params.keys().cloned()).collect();
            k.sort();
            k.dedup();
            k
        };
        let mut header = vec!["suite".to_string(), "identity".into(), "tier".into()];
        header.extend(keys.iter().cloned());
        header.extend(["computed", "reference", "abs_residual", "rel_residual", "pass", "error", "wall_ms"].map(String::from));
        writeln!(out, "{}", header.join(","))?;
        let num = |x: Option<f64>| x.map(|v| format!("{v:e}")).unwrap_or_default();
        for r in &self.records {
            let mut row = vec![csv_field(&r.suite), csv_field(&r.identity), r.tier.clone()];
            row.extend(keys.iter().map(|k| csv_field(r.params.get(k).map(String::as_str).unwrap_or(""))));
            row.push(csv_field(&r.computed));
            row.push(csv_field(&r.reference));
            row.push(num(r.abs_residual));
            row.push(num(r.rel_residual));
            row.push(r.pass.to_string());
            row.push(csv_field(r.error.as_deref().unwrap_or("")));
            row.push(format!("{:.3}", r.wall_ms));
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }

    /// JSON lines with every wall-time field removed, for reproducibility checks.
    pub fn timeless_jsonl(&self) -> Result<String, CliError> {
        let mut s = String::new();
        let strip = |v: serde_json::Value| -> serde_json::Value {
            match v {
                serde_json::Value::Object(mut m) => {
                    m.remove("wall_ms");
                    serde_json::Value::Object(m)
                }
                other => other,
            }
        };
        for r in &self.records {
            s.push_str(&strip(serde_json::to_value(r)?).to_string());
            s.push('\n');
        }
        s.push_str(&strip(serde_json::to_value(&self.summary)?).to_string());
        s.push('\n');
        Ok(s)
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerificationReport {
        let rec = Record {
            suite: "s".into(),
            identity: "id".into(),
            tier: "float".into(),
            params: BTreeMap::from([("ell".into(), "1".into())]),
            computed: "1, 2".into(),
            reference: "x\"y".into(),
            abs_residual: Some(0.0),
            rel_residual: None,
            pass: true,
            error: None,
            wall_ms: 3.0,
        };
        let summary = Summary {
            summary: true,
            suite: "s".into(),
            tier: "float".into(),
            seed: 1,
            config: BTreeMap::new(),
            total: 1,
            passed: 1,
            failed: 0,
            worst_rel_residual: None,
            wall_ms: 4.0,
        };
        VerificationReport { records: vec![rec], summary }
    }

    #[test]
    fn csv_quotes_fields() {
        let mut out = Vec::new();
        sample().write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("suite,identity,tier,ell,computed"));
        assert!(text.contains("\"1, 2\",\"x\"\"y\""));
    }

    #[test]
    fn timeless_output_drops_wall_time() {
        let t = sample().timeless_jsonl().unwrap();
        assert!(!t.contains("wall_ms"));
        assert_eq!(t.lines().count(), 2);
    }
}
