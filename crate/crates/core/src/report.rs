//! Verification reports shared by the checks, the CLI and the C interface.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

pub const SCHEMA: &str = "superharm-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    InconclusiveCap,
}

impl Verdict {
    /// Fail dominates, then InconclusiveCap.
    pub fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (InconclusiveCap, _) | (_, InconclusiveCap) => InconclusiveCap,
            _ => Pass,
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::InconclusiveCap => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::InconclusiveCap => "INCONCLUSIVE_CAP",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportedVector {
    pub weight: Vec<String>,
    pub vector: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scheme: Option<String>,
    pub params: BTreeMap<String, i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
    pub dimensions: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub singular_vectors: Vec<ReportedVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicate: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clause: Option<String>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<VerificationReport>,
    pub elapsed_ms: u64,
    #[serde(skip)]
    started: Option<Instant>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>) -> Self {
        VerificationReport {
            schema: SCHEMA,
            check: check.into(),
            scheme: None,
            params: BTreeMap::new(),
            label: None,
            cap: None,
            dimensions: BTreeMap::new(),
            basis: Vec::new(),
            singular_vectors: Vec::new(),
            predicate: None,
            clause: None,
            verdict: Verdict::Pass,
            failures: Vec::new(),
            notes: Vec::new(),
            details: Vec::new(),
            elapsed_ms: 0,
            started: Some(Instant::now()),
        }
    }

    pub fn with_scheme(mut self, s: impl ToString) -> Self {
        self.scheme = Some(s.to_string());
        self
    }

    pub fn with_label(mut self, l: impl ToString) -> Self {
        self.label = Some(l.to_string());
        self
    }

    pub fn with_cap(mut self, cap: Option<u32>) -> Self {
        self.cap = cap;
        self
    }

    pub fn param(&mut self, k: &str, v: i64) {
        self.params.insert(k.into(), v);
    }

    pub fn dim(&mut self, k: &str, v: usize) {
        self.dimensions.insert(k.into(), v);
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.verdict = Verdict::Fail;
        self.failures.push(msg.into());
    }

    /// Record a failure when `cond` is false.
    pub fn expect(&mut self, cond: bool, msg: impl FnOnce() -> String) -> bool {
        if !cond {
            self.fail(msg());
        }
        cond
    }

    pub fn inconclusive(&mut self, msg: impl Into<String>) {
        self.verdict = self.verdict.combine(Verdict::InconclusiveCap);
        self.notes.push(msg.into());
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    pub fn push(&mut self, child: VerificationReport) {
        self.verdict = self.verdict.combine(child.verdict);
        self.details.push(child);
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Stamp the elapsed time; call once the check is complete.
    pub fn finish(mut self) -> Self {
        if let Some(t) = self.started {
            self.elapsed_ms = t.elapsed().as_millis() as u64;
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0);
        out
    }

    fn write_text(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        let _ = write!(out, "{pad}[{}] {}", self.verdict.as_str(), self.check);
        if let Some(s) = &self.scheme {
            let _ = write!(out, " {s}");
        }
        if let Some(l) = &self.label {
            let _ = write!(out, " label={l}");
        }
        if let Some(c) = self.cap {
            let _ = write!(out, " cap={c}");
        }
        if let Some(p) = self.predicate {
            let _ = write!(out, " predicate={p}");
        }
        if let Some(c) = &self.clause {
            let _ = write!(out, " ({c})");
        }
        if !self.dimensions.is_empty() {
            let dims: Vec<String> = self.dimensions.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = write!(out, " [{}]", dims.join(" "));
        }
        out.push('\n');
        for b in &self.basis {
            let _ = writeln!(out, "{pad}  vector {b}");
        }
        for sv in &self.singular_vectors {
            let _ = writeln!(out, "{pad}  singular ({}) {}", sv.weight.join(","), sv.vector);
        }
        for f in &self.failures {
            let _ = writeln!(out, "{pad}  failure: {f}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "{pad}  note: {n}");
        }
        for d in &self.details {
            d.write_text(out, depth + 1);
        }
    }
}
