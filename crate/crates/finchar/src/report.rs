//! Deterministic run reports. The JSON rendering is schema-stable with
//! alphabetically ordered keys; two runs with identical inputs and seed are
//! byte-identical except for the elapsed-time field.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Fails,
    Witness,
    NoWitness,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Holds | Status::Witness => 0,
            Status::Fails | Status::NoWitness => 1,
            Status::Error => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Witness => "witness",
            Status::NoWitness => "no-witness",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Stats {
    pub elapsed_ms: f64,
    pub states: u64,
}

/// One report per CLI invocation. Fields are declared in alphabetical order
/// so the serialized JSON object is key-sorted.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub counterexample: Option<String>,
    pub inputs: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub stats: Stats,
    pub status: Status,
    pub witness: Option<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            counterexample: None,
            inputs: BTreeMap::new(),
            seed: None,
            stats: Stats {
                elapsed_ms: 0.0,
                states: 0,
            },
            status: Status::Error,
            witness: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report is serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (k, v) in &self.inputs {
            out.push_str(&format!("input {k}: {v}\n"));
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        out.push_str(&format!("status: {}\n", self.status.as_str()));
        if let Some(w) = &self.witness {
            out.push_str("witness:\n");
            for line in w.lines() {
                out.push_str(&format!("  {line}\n"));
            }
        }
        if let Some(c) = &self.counterexample {
            out.push_str("counterexample:\n");
            for line in c.lines() {
                out.push_str(&format!("  {line}\n"));
            }
        }
        out.push_str(&format!("states: {}\n", self.stats.states));
        out.push_str(&format!("elapsed_ms: {:.3}\n", self.stats.elapsed_ms));
        out
    }
}
