//! Machine-readable report structures with a stable field order.

use serde::Serialize;
use serde_json::Value;

use twofold::verify::CheckResult;

/// One verified law: identifier, statement, residual and verdict.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub law: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl From<&CheckResult> for CheckRecord {
    fn from(r: &CheckResult) -> Self {
        Self {
            id: r.id.clone(),
            law: r.law.clone(),
            residual: r.residual,
            tolerance: r.tolerance,
            pass: r.pass,
        }
    }
}

/// One executed scenario step with echoed inputs and computed outputs.
#[derive(Debug, Clone, Serialize)]
pub struct StepRecord {
    pub step: String,
    pub inputs: Value,
    pub outputs: Value,
    pub residuals: Vec<CheckRecord>,
}

/// Top-level report emitted by both the verifier and the scenario runner.
///
/// Struct fields serialize in declaration order and nested maps are
/// alphabetically ordered, so serialization is byte-deterministic for
/// identical contents.
#[derive(Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub checks: Vec<CheckRecord>,
    pub scenario_steps: Vec<StepRecord>,
}

impl Report {
    pub fn new(checks: Vec<CheckRecord>, scenario_steps: Vec<StepRecord>) -> Self {
        Self { version: "1".to_string(), checks, scenario_steps }
    }

    pub fn to_json_string(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}
