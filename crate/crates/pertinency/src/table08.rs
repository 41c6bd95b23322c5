//! Pertinency for `n = 2..14`: symbolic where the quotient rings are small,
//! admissibility certificates where they apply, the bounds interval otherwise.

use std::fmt::{self, Write as _};

use pertinency_core::ideal::{pertinency_report_with, PhiPolicy, ReportOptions};
use pertinency_core::number_theory::{admissible, pertinency_bounds, Verdict};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::commands::{certificate_kind, fmt_set, Output};
use crate::parallel::RayonRunner;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Exact(u64),
    Interval(u64, u64),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(p) => write!(f, "{p}"),
            Value::Interval(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Symbolic,
    Certificate,
    Interval,
}

/// Known values of the pertinency for `n = 2..14`.
pub const REFERENCE: [(u64, Value); 13] = [
    (2, Value::Exact(2)),
    (3, Value::Exact(2)),
    (4, Value::Exact(4)),
    (5, Value::Exact(4)),
    (6, Value::Exact(5)),
    (7, Value::Exact(7)),
    (8, Value::Exact(8)),
    (9, Value::Exact(8)),
    (10, Value::Exact(9)),
    (11, Value::Exact(11)),
    (12, Value::Interval(8, 11)),
    (13, Value::Exact(13)),
    (14, Value::Exact(14)),
];

pub const SYMBOLIC: [u64; 7] = [2, 3, 4, 5, 6, 9, 10];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub n: u64,
    pub reference: Value,
    pub computed: Option<Value>,
    pub method: Method,
    pub detail: String,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table08Output {
    pub max_degree: u32,
    pub rows: Vec<Row>,
    pub mismatches: usize,
}

fn row(n: u64, reference: Value, d: u32) -> Result<Row, CliError> {
    let bounds = pertinency_bounds(n);
    let (computed, method, detail) = if SYMBOLIC.contains(&n) {
        let mut opts = ReportOptions::new(d);
        opts.phi = PhiPolicy::AutoCertify;
        let r = pertinency_report_with(n as usize, &opts, &RayonRunner).map_err(CliError::from_engine)?;
        let phi: Vec<usize> = r.phi_used.iter().map(|m| m.k).collect();
        let classes: Vec<String> = r.profiles.iter().map(|p| format!("j{}:{}", p.j, p.classification)).collect();
        let detail = format!(
            "GK(E) {} at degree {d}, phi {}, {}",
            r.gk_e_estimate.map(|g| g.to_string()).unwrap_or_else(|| "?".into()),
            fmt_set(&phi),
            classes.join(" ")
        );
        let computed = r.pertinency_estimate.filter(|_| r.within_bounds == Some(true)).map(Value::Exact);
        (computed, Method::Symbolic, detail)
    } else if bounds.is_exact() {
        let v = admissible(n);
        let detail = format!("{:?} via {}", v.verdict, certificate_kind(&v.certificate));
        let computed = (v.verdict == Verdict::Admissible).then_some(Value::Exact(n));
        (computed, Method::Certificate, detail)
    } else {
        let detail = format!("|phi2| = {}, upper bound from 3 | n or 5 | n", bounds.phi2_lower);
        (Some(Value::Interval(bounds.lower, bounds.upper)), Method::Interval, detail)
    };
    Ok(Row { n, reference, computed, method, detail, matches: computed == Some(reference) })
}

pub fn table08(max_degree: u32) -> Result<Table08Output, CliError> {
    let rows = REFERENCE.par_iter().map(|&(n, v)| row(n, v, max_degree)).collect::<Result<Vec<_>, _>>()?;
    let mismatches = rows.iter().filter(|r| !r.matches).count();
    Ok(Table08Output { max_degree, rows, mismatches })
}

impl Output for Table08Output {
    fn text(&self) -> String {
        let mut s = format!("{:>3}  {:<9} {:<9} {:<11} {}\n", "n", "reference", "computed", "method", "detail");
        for r in &self.rows {
            let computed = r.computed.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
            let flag = if r.matches { "" } else { "  MISMATCH" };
            let method = format!("{:?}", r.method).to_lowercase();
            let _ = writeln!(
                s,
                "{:>3}  {:<9} {:<9} {:<11} {}{flag}",
                r.n,
                r.reference.to_string(),
                computed,
                method,
                r.detail
            );
        }
        let _ = writeln!(s, "{} of {} rows match", self.rows.len() - self.mismatches, self.rows.len());
        s
    }

    fn csv(&self) -> Option<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "reference", "computed", "method", "matches"]).expect("in-memory CSV");
        for r in &self.rows {
            let computed = r.computed.map(|v| v.to_string()).unwrap_or_default();
            let method = format!("{:?}", r.method).to_lowercase();
            w.write_record([r.n.to_string(), r.reference.to_string(), computed, method, r.matches.to_string()])
                .expect("in-memory CSV");
        }
        Some(String::from_utf8(w.into_inner().expect("in-memory CSV")).expect("utf-8"))
    }

    fn failure(&self) -> Option<String> {
        (self.mismatches > 0).then(|| format!("{} rows disagree with the reference values", self.mismatches))
    }
}
