//! Serializable reports. Every exact value is rendered as its canonical
//! string, so identical inputs give byte-identical JSON.

use crate::linalg::{Matrix, Signature};
use crate::scalar::HypExpr;
use crate::tensor::{index_label, Tensor};
use crate::verdict::{Check, Role, Status};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

/// One nonzero component of a sparse tensor, with a 1-based index label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub index: String,
    pub value: String,
}

pub fn sparse(t: &Tensor) -> Vec<Entry> {
    t.nonzero()
        .into_iter()
        .map(|(idx, v)| Entry {
            index: index_label(&idx),
            value: v.to_string(),
        })
        .collect()
}

pub fn dense(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect())
        .collect()
}

pub fn dense_expr(m: &[Vec<HypExpr>]) -> Vec<Vec<String>> {
    m.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EinsteinData {
    pub kind: String,
    pub a: String,
    pub b: String,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolitonData {
    pub potential: Vec<String>,
    pub nabla_v: Vec<Vec<String>>,
    pub lie_derivative_metric: Vec<Vec<String>>,
    pub form: String,
    pub lambda: String,
    pub mu: String,
    pub nu: String,
    pub consistent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Data {
    pub structure_constants: Vec<Entry>,
    pub associated_metric: Vec<Vec<String>>,
    pub associated_signature: Signature,
    pub connection: Vec<Entry>,
    pub riemann: Vec<Entry>,
    pub ricci: Vec<Vec<String>>,
    pub ricci_star: Vec<Vec<String>>,
    pub ricci_operator: Vec<Vec<String>>,
    pub tau: String,
    pub tau_assoc: String,
    pub tau_assoc_full: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub einstein_like: Option<EinsteinData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub soliton: Option<SolitonData>,
}

/// An exact reference value and what the engine produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

/// Informational remark attached to a report. Never affects the exit status.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Note {
    pub key: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub instance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub golden: Vec<GoldenRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<Data>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<Note>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sweep_log: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !c.is_failure()) && self.golden.iter().all(|r| r.passed)
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.command, self.instance);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        let _ = writeln!(out, "\nchecks:");
        for c in &self.checks {
            let tag = match (c.status, c.role) {
                (Status::Pass, Role::Classification) => "YES ",
                (Status::Fail, Role::Classification) => "NO  ",
                (Status::Pass, _) => "PASS",
                (Status::Fail, _) => "FAIL",
                (Status::Skipped, _) => "SKIP",
            };
            match &c.detail {
                Some(d) => {
                    let _ = writeln!(out, "  {tag} {}  ({d})", c.name);
                }
                None => {
                    let _ = writeln!(out, "  {tag} {}", c.name);
                }
            }
        }
        if !self.golden.is_empty() {
            let _ = writeln!(out, "\nreference values:");
            for r in &self.golden {
                let tag = if r.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "  {tag} {}  expected {}  actual {}", r.name, r.expected, r.actual);
            }
        }
        if let Some(d) = &self.data {
            write_data(&mut out, d);
        }
        if !self.notes.is_empty() {
            let _ = writeln!(out, "\nnotes:");
            for n in &self.notes {
                let _ = writeln!(out, "  [{}] {}", n.key, n.text);
            }
        }
        if !self.sweep_log.is_empty() {
            let _ = writeln!(out, "\nsweep log:");
            for line in &self.sweep_log {
                let _ = writeln!(out, "  {line}");
            }
        }
        let failed = self.checks.iter().filter(|c| c.is_failure()).count()
            + self.golden.iter().filter(|r| !r.passed).count();
        let _ = writeln!(
            out,
            "\nresult: {}",
            if failed == 0 { "pass".to_string() } else { format!("{failed} failing") }
        );
        out
    }
}

fn write_entries(out: &mut String, label: &str, entries: &[Entry]) {
    let body: Vec<String> = entries.iter().map(|e| format!("{}={}", e.index, e.value)).collect();
    let body = if body.is_empty() { "0".to_string() } else { body.join(", ") };
    let _ = writeln!(out, "  {label}: {body}");
}

fn write_matrix(out: &mut String, label: &str, m: &[Vec<String>]) {
    let rows: Vec<String> = m.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    let _ = writeln!(out, "  {label}: [{}]", rows.join(", "));
}

fn write_data(out: &mut String, d: &Data) {
    let _ = writeln!(out, "\ndata:");
    write_entries(out, "structure constants c_ijk", &d.structure_constants);
    write_matrix(out, "associated metric", &d.associated_metric);
    let s = &d.associated_signature;
    let _ = writeln!(out, "  associated signature: ({}, {}, {})", s.positive, s.negative, s.zero);
    write_entries(out, "connection G_ijk", &d.connection);
    write_entries(out, "curvature R_ijkl", &d.riemann);
    write_matrix(out, "ricci", &d.ricci);
    write_matrix(out, "ricci star", &d.ricci_star);
    write_matrix(out, "ricci operator", &d.ricci_operator);
    let _ = writeln!(out, "  tau: {}", d.tau);
    let _ = writeln!(out, "  tau_assoc: {}", d.tau_assoc);
    let _ = writeln!(out, "  tau_assoc_full: {}", d.tau_assoc_full);
    if let Some(e) = &d.einstein_like {
        let _ = writeln!(out, "  einstein-like fit: {} (a, b, c) = ({}, {}, {})", e.kind, e.a, e.b, e.c);
    }
    if let Some(s) = &d.soliton {
        let _ = writeln!(out, "  potential: ({})", s.potential.join(", "));
        write_matrix(out, "nabla v (row i = nabla_{e_i} v)", &s.nabla_v);
        write_matrix(out, "lie derivative of g", &s.lie_derivative_metric);
        match &s.failure {
            None => {
                let _ = writeln!(
                    out,
                    "  soliton ({}): (lambda, mu, nu) = ({}, {}, {}), consistent: {}",
                    s.form, s.lambda, s.mu, s.nu, s.consistent
                );
            }
            Some(f) => {
                let _ = writeln!(out, "  soliton ({}): {f}", s.form);
            }
        }
    }
}
