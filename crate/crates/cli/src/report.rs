//! Check results and their text and JSON renderings.

use std::time::Duration;

use serde_json::{json, Map, Value};

/// Bumped whenever a field is renamed or removed.
pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Truncated,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Truncated => "truncated",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub data: Map<String, Value>,
    /// always present on failures
    pub witness: Option<Value>,
    /// always present on truncations
    pub budget: Option<u128>,
    pub elapsed: Duration,
}

impl Check {
    pub fn pass(name: impl Into<String>, data: Value) -> Check {
        Check::new(name, Status::Pass, data)
    }

    pub fn fail(name: impl Into<String>, data: Value, witness: Value) -> Check {
        let mut c = Check::new(name, Status::Fail, data);
        c.witness = Some(witness);
        c
    }

    pub fn truncated(name: impl Into<String>, data: Value, budget: u128) -> Check {
        let mut c = Check::new(name, Status::Truncated, data);
        c.budget = Some(budget);
        c
    }

    /// Pass when `ok`, otherwise fail with `witness`.
    pub fn verdict(name: impl Into<String>, ok: bool, data: Value, witness: impl FnOnce() -> Value) -> Check {
        if ok {
            Check::pass(name, data)
        } else {
            Check::fail(name, data, witness())
        }
    }

    fn new(name: impl Into<String>, status: Status, data: Value) -> Check {
        let data = match data {
            Value::Object(m) => m,
            Value::Null => Map::new(),
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        Check { name: name.into(), status, data, witness: None, budget: None, elapsed: Duration::ZERO }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub budget: Option<usize>,
    pub cap: u128,
    pub seed: u64,
    pub checks: Vec<Check>,
    /// serialised result in the description language
    pub result: Option<String>,
}

impl Report {
    /// Worst status over all checks.
    pub fn status(&self) -> Status {
        self.checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass)
    }

    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Truncated => 2,
        }
    }

    fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }

    /// Timing is left out so equal inputs give byte-identical documents.
    pub fn to_json(&mut self) -> String {
        self.sort();
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut o = Map::new();
                o.insert("name".into(), json!(c.name));
                o.insert("status".into(), json!(c.status.as_str()));
                o.insert("data".into(), Value::Object(c.data.clone()));
                if let Some(w) = &c.witness {
                    o.insert("witness".into(), w.clone());
                }
                if let Some(b) = c.budget {
                    o.insert("budget".into(), json!(b.to_string()));
                }
                Value::Object(o)
            })
            .collect();
        let doc = json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "budget": self.budget,
            "cap": self.cap.to_string(),
            "seed": self.seed,
            "status": self.status().as_str(),
            "checks": checks,
            "result": self.result,
        });
        serde_json::to_string_pretty(&doc).expect("report serialises") + "\n"
    }

    pub fn to_text(&mut self) -> String {
        self.sort();
        let mut out = String::new();
        for c in &self.checks {
            let status = c.status.as_str().to_uppercase();
            out += &format!("{status:<9} {}  ({:.1} ms)\n", c.name, c.elapsed.as_secs_f64() * 1e3);
            for (k, v) in &c.data {
                out += &format!("          {k}: {}\n", compact(v));
            }
            if let Some(w) = &c.witness {
                out += &format!("          witness: {}\n", compact(w));
            }
            if let Some(b) = c.budget {
                out += &format!("          budget: {b}\n");
            }
        }
        out += &format!("{}: {}\n", self.command, self.status().as_str());
        if let Some(r) = &self.result {
            out += "\n";
            out += r;
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
