//! Experiment configuration and reproducible result envelopes.
//!
//! Every command emits a schema-versioned envelope whose payload is built
//! from deterministic pieces only: floats are serialized as fixed-precision
//! decimal strings, rationals as "n/d" strings, maps in sorted order, and
//! the wall clock never enters unless the caller injects a timestamp.
//! Rerunning a command with an identical config reproduces identical bytes.

use crate::interval::Interval;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

/// Free parameters of an experiment run; the seed is recorded in every
/// output artifact.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub precision_bits: u32,
    pub corpus_size: usize,
    pub primes: Vec<u64>,
    pub cutoff: u64,
    /// per-experiment free constants (rho, lambda caps, c_E, fit windows)
    pub params: BTreeMap<String, String>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 1,
            precision_bits: 40,
            corpus_size: 100,
            primes: vec![2, 3, 5, 7],
            cutoff: 10_000,
            params: BTreeMap::new(),
        }
    }
}

impl ExperimentConfig {
    /// Canonical JSON used for hashing; key order is fixed by the struct.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.canonical_json().as_bytes());
        hex_lower(&h.finalize())
    }
}

fn hex_lower(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Overall verdict of a command. Inequality checks never report Ok from
/// overlapping intervals; uncertified splitting data taints the whole run.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Inconclusive,
    Uncertified,
}

impl Status {
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Inconclusive => 2,
            Status::Uncertified => 3,
        }
    }

    pub fn worst(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Uncertified, _) | (_, Uncertified) => Uncertified,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Ok,
        }
    }
}

/// The one output artifact format shared by every command.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResultEnvelope {
    pub schema_version: u32,
    pub command: String,
    pub config_hash: String,
    /// absent unless the caller injects one; byte-reproducibility requires
    /// keeping the wall clock out of the artifact
    pub timestamp: Option<String>,
    pub status: Status,
    pub payload: Value,
}

impl ResultEnvelope {
    pub fn new(command: &str, config: &ExperimentConfig, status: Status, payload: Value) -> Self {
        ResultEnvelope {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            config_hash: config.hash(),
            timestamp: None,
            status,
            payload,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes")
    }
}

/// Fixed-precision decimal string with a deterministic rendering.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.15e}")
}

pub fn fmt_interval(iv: &Interval) -> Value {
    json!({ "lo": fmt_f64(iv.lo), "hi": fmt_f64(iv.hi), "mid": fmt_f64(iv.mid()) })
}

pub fn fmt_rational(r: &BigRational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_hash_stable_and_sensitive() {
        let c = ExperimentConfig::default();
        let h1 = c.hash();
        let h2 = c.hash();
        assert_eq!(h1, h2);
        let mut c2 = c.clone();
        c2.seed = 2;
        assert_ne!(h1, c2.hash());
    }

    #[test]
    fn envelopes_are_byte_identical_across_runs() {
        let c = ExperimentConfig::default();
        let make = || {
            ResultEnvelope::new(
                "height",
                &c,
                Status::Ok,
                json!({ "value": fmt_f64(0.1 + 0.2), "n": 3 }),
            )
            .to_json()
        };
        assert_eq!(make(), make());
    }

    #[test]
    fn status_ordering() {
        assert_eq!(Status::Ok.worst(Status::Inconclusive), Status::Inconclusive);
        assert_eq!(Status::Inconclusive.worst(Status::Uncertified), Status::Uncertified);
        assert_eq!(Status::Ok.exit_code(), 0);
        assert_eq!(Status::Inconclusive.exit_code(), 2);
        assert_eq!(Status::Uncertified.exit_code(), 3);
    }

    #[test]
    fn float_formatting_deterministic() {
        assert_eq!(fmt_f64(0.5), "5.000000000000000e-1");
        assert_eq!(fmt_f64(std::f64::consts::LN_2), fmt_f64(2f64.ln()));
    }
}
