//! JSON report schema. Every number is a decimal string so that arbitrary-precision
//! values survive any JSON consumer.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::geometry::{ClaimEntry, ImmersionCertificate, SpanCertificate};
use crate::series::TruncatedSeries;

pub const BASIS_DIRECT_SERIES: &str = "direct-series";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub result: Value,
    pub certificates: Vec<CertificateRecord>,
    pub diagnostics: Vec<String>,
    pub claim_checks: Vec<ClaimCheckRecord>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            params: BTreeMap::new(),
            result: Value::Null,
            certificates: Vec::new(),
            diagnostics: Vec::new(),
            claim_checks: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(key.to_string(), value.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub kind: String,
    pub prime: String,
    pub index: String,
    pub witness: String,
    /// Span upper bound, or the certified non-immersion dimension.
    pub bound: String,
    pub basis: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_bound: Option<String>,
}

impl From<&SpanCertificate> for CertificateRecord {
    fn from(c: &SpanCertificate) -> Self {
        CertificateRecord {
            kind: "span".into(),
            prime: c.prime.to_string(),
            index: c.index.to_string(),
            witness: c.witness.to_string(),
            bound: c.span_bound.to_string(),
            basis: BASIS_DIRECT_SERIES.into(),
            claimed_bound: None,
        }
    }
}

impl From<&ImmersionCertificate> for CertificateRecord {
    fn from(c: &ImmersionCertificate) -> Self {
        CertificateRecord {
            kind: "immersion".into(),
            prime: c.prime.to_string(),
            index: c.index.to_string(),
            witness: c.witness.to_string(),
            bound: c.certified_non_immersion_dim.to_string(),
            basis: BASIS_DIRECT_SERIES.into(),
            claimed_bound: Some(c.claimed_dim.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisRecord {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheckRecord {
    pub claim: String,
    pub prime: String,
    pub index: String,
    pub claimed_bound: String,
    pub hypotheses: Vec<HypothesisRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_survives: Option<bool>,
    pub verdict: String,
}

impl From<&ClaimEntry> for ClaimCheckRecord {
    fn from(e: &ClaimEntry) -> Self {
        ClaimCheckRecord {
            claim: e.claim.as_str().into(),
            prime: e.prime.to_string(),
            index: e.index.to_string(),
            claimed_bound: e.claimed_bound.to_string(),
            hypotheses: e
                .hypotheses
                .iter()
                .map(|h| HypothesisRecord {
                    name: h.name.clone(),
                    holds: h.holds,
                })
                .collect(),
            coefficient: e.evaluation.as_ref().map(|v| v.coefficient.to_string()),
            class_survives: e.evaluation.as_ref().map(|v| v.class_survives()),
            verdict: e.verdict.as_str().into(),
        }
    }
}

pub fn num(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

pub fn nums<T: ToString>(vs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(vs.into_iter().map(num).collect())
}

pub fn bigints(vs: &[BigInt]) -> Value {
    nums(vs.iter())
}

pub fn series(s: &TruncatedSeries) -> Value {
    serde_json::json!({
        "modulus": num(s.modulus().value()),
        "truncation": num(s.truncation()),
        "coefficients": bigints(s.coeffs()),
        "display": s.to_string(),
    })
}
