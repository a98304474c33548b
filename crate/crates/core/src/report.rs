//! Machine-readable reports.
//!
//! A report lists `results` (computed values, informational) and `verdicts`
//! (named claims that are expected to hold). Every failed verdict adds a
//! counterexample, so `counterexamples` is empty exactly when all verdicts
//! hold. Field order and map ordering are fixed, so a report serializes to
//! the same bytes whenever its contents are the same.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub verdict: String,
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    pub verdicts: Vec<Verdict>,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            inputs: BTreeMap::new(),
            results: BTreeMap::new(),
            verdicts: Vec::new(),
            counterexamples: Vec::new(),
            timing: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.inputs.insert(key.into(), to_value(value));
        self
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.results.insert(key.into(), to_value(value));
        self
    }

    /// Records a claim. A failing claim also becomes a counterexample
    /// carrying the same detail.
    pub fn check(&mut self, name: impl Into<String>, holds: bool, detail: Option<Value>) -> bool {
        let name = name.into();
        if !holds {
            self.counterexamples.push(Counterexample {
                verdict: name.clone(),
                detail: detail.clone().unwrap_or(Value::Null),
            });
        }
        self.verdicts.push(Verdict { name, holds, detail });
        holds
    }

    /// Records a claim evaluated on a fallible computation; an error counts
    /// as a failure.
    pub fn check_result<T>(
        &mut self,
        name: impl Into<String>,
        r: crate::Result<T>,
        holds: impl FnOnce(&T) -> bool,
        detail: impl FnOnce(&T) -> Option<Value>,
    ) -> bool {
        match r {
            Ok(v) => {
                let h = holds(&v);
                self.check(name, h, detail(&v))
            }
            Err(e) => self.check(name, false, Some(Value::String(e.to_string()))),
        }
    }

    /// Appends another report's verdicts with `prefix` on every name.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for v in other.verdicts {
            self.verdicts.push(Verdict {
                name: format!("{prefix}{}", v.name),
                ..v
            });
        }
        for c in other.counterexamples {
            self.counterexamples.push(Counterexample {
                verdict: format!("{prefix}{}", c.verdict),
                ..c
            });
        }
        for (k, v) in other.results {
            self.results.insert(format!("{prefix}{k}"), v);
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn set_timing(&mut self, d: Duration) {
        self.timing = Some(Timing {
            elapsed_ms: d.as_millis(),
        });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// A plain-text rendering for terminals.
    pub fn to_human(&self) -> String {
        let mut s = format!("command: {}\n", self.command);
        for (k, v) in &self.inputs {
            s.push_str(&format!("  input  {k} = {}\n", compact(v)));
        }
        for (k, v) in &self.results {
            s.push_str(&format!("  result {k} = {}\n", compact(v)));
        }
        let width = self.verdicts.iter().map(|v| v.name.len()).max().unwrap_or(0);
        for v in &self.verdicts {
            s.push_str(&format!(
                "  [{}] {:width$}",
                if v.holds { "pass" } else { "FAIL" },
                v.name
            ));
            if let Some(d) = &v.detail {
                s.push_str(&format!("  {}", compact(d)));
            }
            s.push('\n');
        }
        let failed = self.counterexamples.len();
        s.push_str(&format!(
            "{} verdicts, {} failed\n",
            self.verdicts.len(),
            failed
        ));
        if let Some(t) = &self.timing {
            s.push_str(&format!("elapsed: {} ms\n", t.elapsed_ms));
        }
        s
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
