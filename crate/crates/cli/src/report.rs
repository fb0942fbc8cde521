use std::collections::BTreeMap;
use std::fmt::Write;

use grasslab::euclid::Check;
use serde::Serialize;

use crate::{Format, RunConfig};

/// Version of the JSON report layout.
pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamsView {
    pub q: u32,
    pub n: u32,
    pub k: u32,
    pub i: u32,
    pub seed: u64,
}

impl From<&RunConfig> for ParamsView {
    fn from(cfg: &RunConfig) -> Self {
        ParamsView {
            q: cfg.params.q,
            n: cfg.params.n,
            k: cfg.params.k,
            i: cfg.i() as u32,
            seed: cfg.seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub stage: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub command: &'static str,
    pub params: ParamsView,
    pub passed: bool,
    pub total: usize,
    pub failed: usize,
    pub skipped: Vec<Skipped>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

impl VerificationReport {
    /// Sorts checks by name and derives the summary fields.
    pub fn new(command: &'static str, cfg: &RunConfig, mut checks: Vec<Check>, mut skipped: Vec<Skipped>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        skipped.sort_by(|a, b| a.stage.cmp(&b.stage));
        let failed = checks.iter().filter(|c| !c.passed).count();
        VerificationReport {
            schema: SCHEMA,
            command,
            params: cfg.into(),
            passed: failed == 0,
            total: checks.len(),
            failed,
            skipped,
            checks,
            data: None,
            timings_ms: None,
        }
    }

    pub fn failing(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
                s.push('\n');
                s
            }
            Format::Markdown => self.markdown(),
        }
    }

    fn markdown(&self) -> String {
        let p = &self.params;
        let mut s = String::new();
        let _ = writeln!(s, "# grasslab {}: q={} n={} k={} i={} seed={}", self.command, p.q, p.n, p.k, p.i, p.seed);
        let _ = writeln!(s);
        let status = if self.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "**{status}**: {} checks, {} failed", self.total, self.failed);
        let _ = writeln!(s);
        let _ = writeln!(s, "| check | status | expected | actual |");
        let _ = writeln!(s, "|---|---|---|---|");
        for c in &self.checks {
            let st = if c.passed { "pass" } else { "FAIL" };
            let _ = writeln!(s, "| `{}` | {st} | `{}` | `{}` |", c.name, cell(&c.expected), cell(&c.actual));
        }
        if !self.skipped.is_empty() {
            let _ = writeln!(s);
            let _ = writeln!(s, "Skipped:");
            for sk in &self.skipped {
                let _ = writeln!(s, "- {}: {}", sk.stage, sk.reason);
            }
        }
        if let Some(t) = &self.timings_ms {
            let _ = writeln!(s);
            let _ = writeln!(s, "Timings (ms):");
            for (stage, ms) in t {
                let _ = writeln!(s, "- {stage}: {ms}");
            }
        }
        if let Some(d) = &self.data {
            let _ = writeln!(s);
            let _ = writeln!(s, "```json");
            let _ = writeln!(s, "{}", serde_json::to_string_pretty(d).expect("json value"));
            let _ = writeln!(s, "```");
        }
        s
    }
}

fn cell(v: &str) -> String {
    v.replace('|', "\\|")
}
