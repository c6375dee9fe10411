//! Machine-readable task reports and their human rendering.

use std::fmt::Write as _;

use kcat_core::theorems::Audit;
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    ParseFailed,
    ValidationFailed,
    HypothesisFailed,
    VerificationFailed,
    Error,
}

impl Status {
    /// 0 pass, 1 rejected input, 2 hypothesis audit, 3 verification.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::ParseFailed | Status::ValidationFailed | Status::Error => 1,
            Status::HypothesisFailed => 2,
            Status::VerificationFailed => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::ParseFailed => "parse failed",
            Status::ValidationFailed => "validation failed",
            Status::HypothesisFailed => "hypothesis failed",
            Status::VerificationFailed => "verification failed",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Entry {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Entry {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

impl From<&Audit> for Entry {
    fn from(a: &Audit) -> Self {
        Entry::new(a.name.clone(), a.passed, a.detail.clone())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    #[serde(rename = "ExtCI")]
    pub ext_ci: Option<Vec<usize>>,
    #[serde(rename = "HC")]
    pub hc: Option<Vec<usize>>,
    #[serde(rename = "HB")]
    pub hb: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub task: String,
    pub target: String,
    pub field: Option<String>,
    pub max_degree: usize,
    pub seed: u64,
    pub status: Status,
    pub hypotheses: Vec<Entry>,
    pub checks: Vec<Entry>,
    pub degrees: Vec<usize>,
    pub dims: Dims,
    pub exact_at: Option<Vec<bool>>,
    pub connecting_ranks: Option<Vec<usize>>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(task: &str, target: &str, max_degree: usize, seed: u64) -> Self {
        Report {
            schema: SCHEMA,
            task: task.to_string(),
            target: target.to_string(),
            field: None,
            max_degree,
            seed,
            status: Status::Pass,
            hypotheses: Vec::new(),
            checks: Vec::new(),
            degrees: Vec::new(),
            dims: Dims::default(),
            exact_at: None,
            connecting_ranks: None,
            notes: Vec::new(),
        }
    }

    /// `Pass` unless a hypothesis or check failed.
    pub fn settle(&mut self) {
        if self.status != Status::Pass {
            return;
        }
        if self.hypotheses.iter().any(|e| !e.passed) {
            self.status = Status::HypothesisFailed;
        } else if self.checks.iter().any(|e| !e.passed) || self.exact_at.iter().flatten().any(|b| !b) {
            self.status = Status::VerificationFailed;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Report> {
        serde_json::from_str(s)
    }

    /// Plain-text tables derived from the machine form.
    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "== {} {}", self.task, self.target);
        if let Some(f) = &self.field {
            let _ = write!(out, " over {f}");
        }
        let _ = writeln!(out, ": {}", self.status.label());
        let rows: Vec<(&str, &Vec<usize>)> = [
            ("Ext(C,I)", &self.dims.ext_ci),
            ("H(C)", &self.dims.hc),
            ("H(C/I)", &self.dims.hb),
        ]
        .into_iter()
        .filter_map(|(n, v)| v.as_ref().map(|v| (n, v)))
        .collect();
        if !rows.is_empty() {
            let _ = write!(out, "  {:<10}", "degree");
            for d in &self.degrees {
                let _ = write!(out, "{d:>6}");
            }
            let _ = writeln!(out);
            for (name, v) in rows {
                let _ = write!(out, "  {name:<10}");
                for x in v {
                    let _ = write!(out, "{x:>6}");
                }
                let _ = writeln!(out);
            }
        }
        if let Some(ex) = &self.exact_at {
            let flags: String = ex.iter().map(|&b| if b { '+' } else { 'x' }).collect();
            let _ = writeln!(out, "  exact at nodes: {flags}");
        }
        if let Some(r) = &self.connecting_ranks {
            let r: Vec<String> = r.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "  connecting map ranks: {}", r.join(" "));
        }
        for (title, list) in [("hypothesis", &self.hypotheses), ("check", &self.checks)] {
            for e in list {
                let mark = if e.passed { "ok  " } else { "FAIL" };
                let _ = write!(out, "  [{mark}] {title}: {}", e.name);
                if !e.detail.is_empty() {
                    let _ = write!(out, " ({})", e.detail);
                }
                let _ = writeln!(out);
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        out
    }
}
