use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use robustflow::{Error, Ext, PathFlow, Scalar};
use serde::Serialize;

pub const SCHEMA: u32 = 1;

/// Why a command failed; selects the exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad input, infeasible plan or unsolvable instance (exit 1).
    Input(String),
    /// Solver breakdown or failed self-check (exit 2).
    Internal(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Internal(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Internal(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::IterationLimit(_) | Error::Pricing(_) | Error::InvalidBreakpoint(_) => {
                Failure::Internal(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

#[derive(Serialize)]
pub struct PathEntry {
    pub amount: String,
    pub arcs: Vec<usize>,
}

#[derive(Serialize, Clone)]
pub struct BreakpointRow {
    pub arc_id: Option<usize>,
    pub c_f: String,
    pub lambda: Option<String>,
    pub lp_value: String,
}

#[derive(Serialize, Default)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub digest: String,
    pub solver: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    pub arith: String,
    pub value: String,
    pub value_f64: f64,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub breakpoints: Vec<BreakpointRow>,
    pub paths: Vec<PathEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cstar: Option<Vec<String>>,
    pub wall_time_s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub breakpoints_csv: Option<String>,
}

impl Report {
    pub fn new<T: Scalar>(command: &str, solver: &str, digest: &str, value: &T) -> Self {
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            digest: digest.to_string(),
            solver: solver.to_string(),
            arith: if T::EXACT { "exact" } else { "float" }.to_string(),
            value: value.to_token(),
            value_f64: value.to_f64().unwrap_or(f64::NAN),
            ..Report::default()
        }
    }

    pub fn detail(&mut self, key: &str, value: impl ToString) {
        self.details.insert(key.to_string(), value.to_string());
    }

    pub fn with_flow<T: Scalar>(&mut self, flow: &PathFlow<T>) {
        self.paths = flow
            .iter()
            .map(|(p, v)| PathEntry {
                amount: v.to_token(),
                arcs: p.arcs().iter().map(|a| a.0 + 1).collect(),
            })
            .collect();
    }

    pub fn with_costs<T: Scalar>(&mut self, costs: &[Ext<T>]) {
        self.cstar = Some(costs.iter().map(Ext::to_token).collect());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `s` lines, then `x` path lines and `cstar` lines; parseable by `evaluate`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: &str| {
            let _ = writeln!(out, "s {k} {v}");
        };
        line("command", &self.command);
        line("solver", &self.solver);
        if let Some(m) = &self.mode {
            line("mode", m);
        }
        line("arith", &self.arith);
        line("digest", &self.digest);
        line("value", &self.value);
        for (k, v) in &self.details {
            line(k, v);
        }
        for b in &self.breakpoints {
            let arc = b.arc_id.map_or("-".to_string(), |a| a.to_string());
            let lambda = b.lambda.as_deref().unwrap_or("-");
            line("breakpoint", &format!("{arc} {} {lambda} {}", b.c_f, b.lp_value));
        }
        line("time", &format!("{:.6}", self.wall_time_s));
        if let Some(p) = &self.breakpoints_csv {
            line("breakpoints-csv", p);
        }
        for p in &self.paths {
            let _ = write!(out, "x {}", p.amount);
            for a in &p.arcs {
                let _ = write!(out, " {a}");
            }
            out.push('\n');
        }
        if let Some(c) = &self.cstar {
            for (i, v) in c.iter().enumerate() {
                let _ = writeln!(out, "cstar {} {v}", i + 1);
            }
        }
        out
    }
}
