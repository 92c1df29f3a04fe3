use std::collections::BTreeMap;

use dforms::identities::{CheckKind, IdentityResidual};
use serde::{Deserialize, Serialize};

use crate::tensor::TensorFile;

/// One computed invariant: a scalar `value` or a form-valued `tensor`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantValue {
    pub name: String,
    pub params: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor: Option<TensorFile>,
}

impl InvariantValue {
    pub fn scalar(name: impl Into<String>, params: &[(&str, usize)], value: String) -> Self {
        Self {
            name: name.into(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v as i64)).collect(),
            value: Some(value),
            tensor: None,
        }
    }

    pub fn form(name: impl Into<String>, params: &[(&str, usize)], tensor: TensorFile) -> Self {
        Self {
            name: name.into(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v as i64)).collect(),
            value: None,
            tensor: Some(tensor),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failures: usize,
    pub conjectures: usize,
    /// Largest relative residual over the asserted checks.
    pub max_relative_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub seeds: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inputs: Vec<String>,
    pub invariants: Vec<InvariantValue>,
    pub identities: Vec<IdentityResidual>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &str, mode: &str) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            mode: mode.to_string(),
            dims: Vec::new(),
            seeds: Vec::new(),
            inputs: Vec::new(),
            invariants: Vec::new(),
            identities: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn with_identities(mut self, identities: Vec<IdentityResidual>) -> Self {
        let mut s = Summary::default();
        for r in &identities {
            s.checks += 1;
            match r.kind {
                CheckKind::Conjecture => s.conjectures += 1,
                CheckKind::Theorem if r.passed => s.passed += 1,
                CheckKind::Theorem => s.failures += 1,
            }
            if r.kind == CheckKind::Theorem && r.relative_residual.is_finite() {
                s.max_relative_residual = s.max_relative_residual.max(r.relative_residual);
            }
        }
        self.identities = identities;
        self.summary = s;
        self
    }

    /// Exit status: 1 when an asserted identity failed, else 0.
    pub fn exit_code(&self) -> u8 {
        u8::from(self.summary.failures > 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(kind: CheckKind, passed: bool) -> IdentityResidual {
        IdentityResidual {
            name: "laplace".into(),
            params: BTreeMap::new(),
            fixture: "x".into(),
            scalar: "float64".into(),
            residual: "0.5".into(),
            residual_f64: 0.5,
            relative_residual: if passed { 1e-12 } else { 0.5 },
            exact_zero: false,
            kind,
            passed,
            reference: String::new(),
            detail: None,
        }
    }

    #[test]
    fn summary_and_exit_code() {
        let ok = Report::new("verify", "float64").with_identities(vec![
            residual(CheckKind::Theorem, true),
            residual(CheckKind::Conjecture, false),
        ]);
        assert_eq!((ok.summary.passed, ok.summary.conjectures, ok.summary.failures), (1, 1, 0));
        assert_eq!(ok.summary.max_relative_residual, 1e-12);
        assert_eq!(ok.exit_code(), 0);
        let bad = Report::new("verify", "float64").with_identities(vec![residual(CheckKind::Theorem, false)]);
        assert_eq!(bad.exit_code(), 1);
        assert_eq!(bad.summary.max_relative_residual, 0.5);
    }
}
