use std::fmt::Write as _;
use std::time::Duration;

use hoopkit::Error;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass | Status::Inapplicable => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inapplicable => "inapplicable",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub status: Status,
    /// Human-readable lines; the JSON form carries the same facts in `details`.
    #[serde(skip)]
    pub lines: Vec<String>,
    pub details: Value,
    pub witnesses: Vec<Value>,
    pub anchors: Vec<&'static str>,
    pub timing_ms: f64,
}

impl Report {
    pub fn new(command: &'static str, status: Status) -> Self {
        Report {
            command,
            status,
            lines: Vec::new(),
            details: Value::Null,
            witnesses: Vec::new(),
            anchors: Vec::new(),
            timing_ms: 0.0,
        }
    }

    pub fn pass(command: &'static str) -> Self {
        Report::new(command, Status::Pass)
    }

    /// A failure always names what failed.
    pub fn fail(command: &'static str, witness: impl Serialize) -> Self {
        Report::new(command, Status::Fail).witness(witness)
    }

    pub fn inapplicable(command: &'static str, hypothesis: &str) -> Self {
        Report::new(command, Status::Inapplicable)
            .line(format!("requires {hypothesis}"))
            .details(json!({ "hypothesis": hypothesis }))
    }

    pub fn error(command: &'static str, message: impl Into<String>) -> Self {
        let message = message.into();
        Report::new(command, Status::Error)
            .line(message.clone())
            .details(json!({ "error": message }))
    }

    /// Maps a library error onto a report.
    pub fn from_error(command: &'static str, e: Error) -> Self {
        match e {
            Error::Inapplicable(h) => Report::inapplicable(command, h),
            Error::Inconsistency(msg) => Report::fail(command, json!({ "inconsistency": msg }))
                .line(format!("FATAL inconsistency: {msg}")),
            other => Report::error(command, other.to_string()),
        }
    }

    pub fn line(mut self, s: impl Into<String>) -> Self {
        self.lines.push(s.into());
        self
    }

    pub fn details(mut self, v: Value) -> Self {
        self.details = v;
        self
    }

    pub fn witness(mut self, w: impl Serialize) -> Self {
        self.witnesses.push(serde_json::to_value(w).expect("witness serializes"));
        self
    }

    pub fn anchors(mut self, a: &[&'static str]) -> Self {
        self.anchors.extend_from_slice(a);
        self
    }

    pub fn timed(mut self, d: Duration) -> Self {
        self.timing_ms = (d.as_secs_f64() * 1e6).round() / 1e3;
        self
    }

    pub fn render(&self, json_mode: bool) -> Vec<u8> {
        if json_mode {
            let mut out = serde_json::to_vec(self).expect("report serializes");
            out.push(b'\n');
            return out;
        }
        let mut s = format!("status: {}\n", self.status.as_str());
        for l in &self.lines {
            let _ = writeln!(s, "{l}");
        }
        for w in &self.witnesses {
            let _ = writeln!(s, "witness: {w}");
        }
        if !self.anchors.is_empty() {
            let _ = writeln!(s, "anchors: {}", self.anchors.join(", "));
        }
        let _ = writeln!(s, "time: {} ms", self.timing_ms);
        s.into_bytes()
    }
}
