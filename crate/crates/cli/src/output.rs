//! Command results and their JSON / text renderings.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomogeneityReport {
    pub passed: bool,
    pub witness: Option<String>,
    pub pullback: Option<String>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelevanceReport {
    pub passed: bool,
    pub test: String,
    pub sigma: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub divisor: String,
    pub nu0: Vec<String>,
    pub v_prime: Vec<String>,
    pub nu: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Verdict { verdict: String, homogeneity: HomogeneityReport, relevance: RelevanceReport },
    Description { components: Vec<String>, steps: Vec<StepReport> },
    Ideal { generators: Vec<String>, notes: Vec<String> },
    Point { defined: bool, values: Vec<String>, branches: usize, reason: Option<String> },
    Divisor { divisor: String, unit: String, generators: Vec<String>, notes: Vec<String> },
    Same { same: bool },
}

#[derive(Clone, Debug)]
pub struct OutputRecord {
    /// canonical text of the command
    pub command: String,
    pub outcome: Result<Payload, String>,
    /// where an ideal result is valid, for commands that produce one
    pub validity: Option<String>,
    pub elapsed: Duration,
}

impl OutputRecord {
    pub fn ok(&self) -> bool {
        self.outcome.is_ok()
    }

    pub fn payload(&self) -> Option<&Payload> {
        self.outcome.as_ref().ok()
    }

    /// JSON object without timing. Keys come out sorted because
    /// `serde_json::Map` is ordered.
    pub fn to_value(&self) -> Value {
        let mut m = serde_json::Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("ok".into(), Value::Bool(self.ok()));
        match &self.outcome {
            Ok(p) => {
                m.insert("result".into(), serde_json::to_value(p).expect("payload serializes"));
            }
            Err(e) => {
                m.insert("error".into(), Value::String(e.clone()));
            }
        }
        if let Some(v) = &self.validity {
            m.insert("validity".into(), Value::String(v.clone()));
        }
        Value::Object(m)
    }
}

/// The whole run as JSON. With `timing`, per-command wall time in
/// milliseconds goes in a separate top-level `timing_ms` array.
pub fn to_json(records: &[OutputRecord], timing: bool) -> String {
    let mut top = serde_json::Map::new();
    top.insert("records".into(), Value::Array(records.iter().map(OutputRecord::to_value).collect()));
    if timing {
        let t = records.iter().map(|r| Value::from(r.elapsed.as_secs_f64() * 1000.0)).collect();
        top.insert("timing_ms".into(), Value::Array(t));
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("json");
    s.push('\n');
    s
}

fn list(v: &[String]) -> String {
    format!("[{}]", v.join(", "))
}

pub fn render_text(records: &[OutputRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let _ = writeln!(out, "> {}", r.command);
        match &r.outcome {
            Err(e) => {
                let _ = writeln!(out, "  error: {}", e);
            }
            Ok(p) => render_payload(&mut out, p),
        }
        if let Some(v) = &r.validity {
            let _ = writeln!(out, "  valid: {}", v);
        }
    }
    out
}

fn render_payload(out: &mut String, p: &Payload) {
    match p {
        Payload::Verdict { verdict, homogeneity, relevance } => {
            let _ = writeln!(out, "  verdict: {}", verdict);
            if let (Some(w), Some(b)) = (&homogeneity.witness, &homogeneity.pullback) {
                let reason = homogeneity.reason.as_deref().unwrap_or("");
                let _ = writeln!(out, "  homogeneity: FAIL at {} (pulls back to {}; {})", w, b, reason);
            } else {
                let _ = writeln!(out, "  homogeneity: PASS");
            }
            let status = if relevance.passed { "PASS" } else { "FAIL" };
            match &relevance.sigma {
                Some(s) => {
                    let _ = writeln!(out, "  relevance: {} ({} test, sigma {})", status, relevance.test, list(s));
                }
                None => {
                    let _ = writeln!(out, "  relevance: {} ({} test)", status, relevance.test);
                }
            }
        }
        Payload::Description { components, steps } => {
            let _ = writeln!(out, "  {}", list(components));
            for s in steps {
                let _ = writeln!(
                    out,
                    "  step along {}: nu0 = {}, v' = {}, nu = {}",
                    s.divisor,
                    list(&s.nu0),
                    list(&s.v_prime),
                    list(&s.nu)
                );
            }
        }
        Payload::Ideal { generators, notes } => {
            let _ = writeln!(out, "  ideal: {}", list(generators));
            for n in notes {
                let _ = writeln!(out, "  note: {}", n);
            }
        }
        Payload::Point { defined: true, values, branches, .. } => {
            let _ = writeln!(out, "  point: {} ({} branch tuple(s))", list(values), branches);
        }
        Payload::Point { reason, .. } => {
            let _ = writeln!(out, "  undefined: {}", reason.as_deref().unwrap_or(""));
        }
        Payload::Divisor { divisor, unit, generators, notes } => {
            let _ = writeln!(out, "  divisor: {}", divisor);
            let _ = writeln!(out, "  unit: {}", unit);
            let _ = writeln!(out, "  ideal: {}", list(generators));
            for n in notes {
                let _ = writeln!(out, "  note: {}", n);
            }
        }
        Payload::Same { same } => {
            let _ = writeln!(out, "  same: {}", same);
        }
    }
}
