//! Typed outputs of each command and their text and CSV renderings.
//!
//! Renderings are derived from the typed outputs alone, so a record read back
//! from the cache prints exactly like a fresh one.

use std::fmt::Write as _;

use pertinency_core::algebra::Context;
use pertinency_core::ideal::{
    hilbert_quotient_with, nilpotency_in, pertinency_report_with, EchelonBasis, EchelonOptions, HilbertProfile,
    Nilpotency, NilpotencyWitness, PertinencyReport, PhiPolicy, PhiWitness, ReportOptions, ReportStatus,
};
use pertinency_core::number_theory::{
    admissible_with, mop, omega2, phi2, phi_orbit_certified, spl_certified, AdmissibilityVerdict, Certificate, Verdict,
};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::args::PhiArg;
use crate::parallel::{RayonRunner, SharedStore};
use crate::CliError;

pub trait Output: Serialize + DeserializeOwned {
    fn text(&self) -> String;
    fn csv(&self) -> Option<String> {
        None
    }
    fn witnesses(&self) -> Vec<Value> {
        Vec::new()
    }
    /// A verification failure to report with exit code 1.
    fn failure(&self) -> Option<String> {
        None
    }
}

pub fn fmt_set(xs: &[impl std::fmt::Display]) -> String {
    let inner: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn csv_string(rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).expect("in-memory CSV");
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV")).expect("utf-8")
}

fn resolve_phi(n: usize, phi: &PhiArg) -> Result<Context, CliError> {
    let ctx = match phi {
        PhiArg::None => Context::free(n),
        PhiArg::Auto => Context::new(n, phi2(n as u64).iter().map(|k| k as usize)),
        PhiArg::List(l) => Context::new(n, l.iter().copied()),
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    if !ctx.is_special() {
        return Err(CliError::Usage(format!("{ctx}: the set must be stable under multiplication by units")));
    }
    Ok(ctx)
}

pub fn phi_input(phi: &PhiArg) -> Value {
    match phi {
        PhiArg::Auto => json!("auto"),
        PhiArg::None => json!("none"),
        PhiArg::List(l) => {
            let mut l = l.clone();
            l.sort_unstable();
            l.dedup();
            json!(l)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetsOutput {
    pub n: u64,
    pub phi2: Vec<u64>,
    pub orbit_phi: Vec<u64>,
    pub omega2: Vec<u64>,
    pub spl_certified: Vec<u64>,
    pub mop: String,
}

pub fn sets(n: u64) -> Result<SetsOutput, CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!("n = {n} must be at least 2")));
    }
    Ok(SetsOutput {
        n,
        phi2: phi2(n).to_vec(),
        orbit_phi: phi_orbit_certified(n).to_vec(),
        omega2: omega2(n).to_vec(),
        spl_certified: spl_certified(n).to_vec(),
        mop: mop(n).to_string(),
    })
}

impl Output for SetsOutput {
    fn text(&self) -> String {
        let mut s = format!("n = {}\n", self.n);
        for (name, set) in [
            ("phi2", &self.phi2),
            ("orbit_phi", &self.orbit_phi),
            ("omega2", &self.omega2),
            ("spl_certified", &self.spl_certified),
        ] {
            let _ = writeln!(s, "{name:<14} {}", fmt_set(set));
        }
        let _ = writeln!(s, "{:<14} {}", "mop", self.mop);
        s
    }

    fn csv(&self) -> Option<String> {
        let join = |v: &[u64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let mut rows = vec![vec!["n".into(), "set".into(), "elements".into()]];
        for (name, set) in [
            ("phi2", &self.phi2),
            ("orbit_phi", &self.orbit_phi),
            ("omega2", &self.omega2),
            ("spl_certified", &self.spl_certified),
        ] {
            rows.push(vec![self.n.to_string(), name.into(), join(set)]);
        }
        rows.push(vec![self.n.to_string(), "mop".into(), self.mop.clone()]);
        Some(csv_string(rows))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleRow {
    pub n: u64,
    pub verdict: Verdict,
    pub certificate: String,
    /// The special residue of a recursion certificate.
    pub special: Option<u64>,
    pub tree: AdmissibilityVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleOutput {
    pub rows: Vec<AdmissibleRow>,
    pub admissible: usize,
    pub not_admissible: usize,
    pub unknown: usize,
}

pub fn certificate_kind(c: &Certificate) -> String {
    match c {
        Certificate::Divisible35 { by } => format!("Divisible35({by})"),
        Certificate::Base2Power => "Base2Power".into(),
        Certificate::PrimeNot35 => "PrimeNot35".into(),
        Certificate::TwoAPB { a, p, b } => format!("TwoAPB(2^{a}*{p}^{b})"),
        Certificate::TwoPrimes17 { p1, p2 } => format!("TwoPrimes17({p1}*{p2})"),
        Certificate::Recursion { spl_via_omega2, .. } => {
            if *spl_via_omega2 {
                "Recursion(omega2)".into()
            } else {
                "Recursion(spl)".into()
            }
        }
        Certificate::Undecided { .. } => "Undecided".into(),
    }
}

pub fn admissible(range: std::ops::RangeInclusive<u64>) -> AdmissibleOutput {
    let store = SharedStore::default();
    let rows: Vec<AdmissibleRow> = range
        .into_par_iter()
        .map(|n| {
            let v = admissible_with(n, &store);
            let special = match &v.certificate {
                Certificate::Recursion { special, .. } => Some(*special),
                _ => None,
            };
            AdmissibleRow {
                n,
                verdict: v.verdict,
                certificate: certificate_kind(&v.certificate),
                special,
                tree: (*v).clone(),
            }
        })
        .collect();
    let count = |x: Verdict| rows.iter().filter(|r| r.verdict == x).count();
    AdmissibleOutput {
        admissible: count(Verdict::Admissible),
        not_admissible: count(Verdict::NotAdmissible),
        unknown: count(Verdict::Unknown),
        rows,
    }
}

impl Output for AdmissibleOutput {
    fn text(&self) -> String {
        let mut s = format!("{:>6}  {:<14} {:<22} {}\n", "n", "verdict", "certificate", "special");
        for r in &self.rows {
            let special = r.special.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
            let _ = writeln!(s, "{:>6}  {:<14} {:<22} {}", r.n, format!("{:?}", r.verdict), r.certificate, special);
        }
        let _ = writeln!(
            s,
            "admissible {}, not admissible {}, unknown {}",
            self.admissible, self.not_admissible, self.unknown
        );
        s
    }

    fn csv(&self) -> Option<String> {
        let mut rows = vec![vec!["n".into(), "verdict".into(), "certificate".into(), "special".into()]];
        for r in &self.rows {
            rows.push(vec![
                r.n.to_string(),
                format!("{:?}", r.verdict),
                r.certificate.clone(),
                r.special.map(|x| x.to_string()).unwrap_or_default(),
            ]);
        }
        Some(csv_string(rows))
    }

    fn witnesses(&self) -> Vec<Value> {
        self.rows.iter().map(|r| serde_json::to_value(&r.tree).expect("serializable")).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PertinencyOutput {
    pub report: PertinencyReport,
}

pub struct PertinencyArgs {
    pub n: usize,
    pub max_degree: u32,
    pub phi: PhiArg,
    pub symbolic_limit: usize,
    pub quotient_limit: usize,
    pub all_j: bool,
}

pub fn default_degree(n: usize) -> u32 {
    (2 * n as u32).max(30)
}

pub fn pertinency(a: &PertinencyArgs) -> Result<PertinencyOutput, CliError> {
    if a.n < 2 {
        return Err(CliError::Usage(format!("n = {} must be at least 2", a.n)));
    }
    let mut opts = ReportOptions::new(a.max_degree);
    opts.all_j = a.all_j;
    opts.symbolic_limit = a.symbolic_limit;
    opts.phi = match &a.phi {
        PhiArg::Auto => PhiPolicy::AutoCertify,
        PhiArg::None => PhiPolicy::None,
        PhiArg::List(l) => {
            if a.n <= a.quotient_limit.max(a.symbolic_limit) {
                opts.symbolic_limit = opts.symbolic_limit.max(a.n);
            }
            PhiPolicy::Explicit(l.clone())
        }
    };
    let report = pertinency_report_with(a.n, &opts, &RayonRunner).map_err(CliError::from_engine)?;
    Ok(PertinencyOutput { report })
}

pub fn profile_line(p: &HilbertProfile) -> String {
    let tail: Vec<String> = p.dims[p.dims.len() - p.window.min(p.dims.len())..].iter().map(|x| x.to_string()).collect();
    format!(
        "j={:<3} {:<20} GK {:<4} tail [{}]",
        p.j,
        p.classification.to_string(),
        p.gk_estimate().map(|g| g.to_string()).unwrap_or_else(|| "?".into()),
        tail.join(" ")
    )
}

impl Output for PertinencyOutput {
    fn text(&self) -> String {
        let r = &self.report;
        let mut s = format!("n = {}\n", r.n);
        let _ = writeln!(
            s,
            "bounds        [{}, {}] (|phi2| = {}, verdict {:?})",
            r.bounds.lower, r.bounds.upper, r.bounds.phi2_lower, r.bounds.verdict
        );
        match &r.status {
            ReportStatus::BoundsOnly { reason } => {
                let _ = writeln!(s, "bounds only   {reason}");
                return s;
            }
            ReportStatus::Symbolic => {}
        }
        let phi: Vec<usize> = r.phi_used.iter().map(|m| m.k).collect();
        let _ = writeln!(s, "phi used      {}", fmt_set(&phi));
        for m in &r.phi_used {
            if let PhiWitness::Engine { certificate } = &m.witness {
                let _ = writeln!(
                    s,
                    "  k={} certified by the engine, exponent {}",
                    m.k,
                    certificate.exponent.unwrap_or_default()
                );
            }
        }
        for c in &r.phi_rejected {
            let _ = writeln!(s, "  k={} not certified up to degree {}", c.k, c.dmax);
        }
        for p in &r.profiles {
            let _ = writeln!(s, "  {}", profile_line(p));
        }
        let est = |x: Option<String>| x.unwrap_or_else(|| "inconclusive".into());
        let _ =
            writeln!(s, "GK(E) estimate {} at degree {}", est(r.gk_e_estimate.map(|g| g.to_string())), r.max_degree);
        let _ = writeln!(s, "pertinency     {}", est(r.pertinency_estimate.map(|p| p.to_string())));
        if r.within_bounds == Some(false) {
            let _ = writeln!(s, "WARNING: estimate outside the bounds");
        }
        s
    }

    fn csv(&self) -> Option<String> {
        Some(hilbert_csv(&self.report.profiles))
    }

    fn witnesses(&self) -> Vec<Value> {
        self.report.phi_used.iter().map(|m| serde_json::to_value(m).expect("serializable")).collect()
    }

    fn failure(&self) -> Option<String> {
        (self.report.within_bounds == Some(false)).then(|| "estimate outside the theoretical bounds".into())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HilbertOutput {
    pub profile: HilbertProfile,
}

pub fn default_hilbert_degree(n: usize) -> u32 {
    (2 * n as u32).max(20)
}

pub fn hilbert(n: usize, j: usize, phi: &PhiArg, max_degree: u32) -> Result<HilbertOutput, CliError> {
    if j == 0 || j >= n {
        return Err(CliError::Usage(format!("j = {j} must lie in 1..{n}")));
    }
    let ctx = resolve_phi(n, phi)?;
    let profile = hilbert_quotient_with(ctx, j, max_degree, EchelonOptions::default(), &RayonRunner)
        .map_err(CliError::from_engine)?;
    Ok(HilbertOutput { profile })
}

pub fn hilbert_csv(profiles: &[HilbertProfile]) -> String {
    let mut rows = vec![vec!["n".into(), "j".into(), "phi".into(), "r".into(), "h".into()]];
    for p in profiles {
        let phi = p.context.phi().iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ");
        for (r, h) in p.dims.iter().enumerate() {
            rows.push(vec![p.context.n().to_string(), p.j.to_string(), phi.clone(), r.to_string(), h.to_string()]);
        }
    }
    csv_string(rows)
}

impl Output for HilbertOutput {
    fn text(&self) -> String {
        let p = &self.profile;
        let mut s = format!("{} j={} up to degree {}\n", p.context, p.j, p.max_degree);
        for (r, (h, a)) in p.dims.iter().zip(&p.ambient).enumerate() {
            let _ = writeln!(s, "{r:>4} {h:>10} / {a}");
        }
        let _ = writeln!(s, "{} (estimate at degree {}, window {})", p.classification, p.max_degree, p.window);
        s
    }

    fn csv(&self) -> Option<String> {
        Some(hilbert_csv(std::slice::from_ref(&self.profile)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NilpotencyOutput {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub phi: Vec<usize>,
    pub max_degree: u32,
    pub result: Nilpotency,
}

pub fn nilpotency(n: usize, i: usize, j: usize, phi: &PhiArg, max_degree: u32) -> Result<NilpotencyOutput, CliError> {
    if i >= n || j == 0 || j >= n {
        return Err(CliError::Usage(format!("need i in 0..{n} and j in 1..{n}")));
    }
    let ctx = resolve_phi(n, phi)?;
    let mut basis = EchelonBasis::new(ctx, j, EchelonOptions::default());
    let result = nilpotency_in(&mut basis, i, max_degree, &RayonRunner).map_err(CliError::from_engine)?;
    Ok(NilpotencyOutput { n, i, j, phi: ctx.phi(), max_degree, result })
}

impl Output for NilpotencyOutput {
    fn text(&self) -> String {
        let ctx = format!("n={} phi={}", self.n, fmt_set(&self.phi));
        match self.result {
            Nilpotency::Found { exponent } => {
                format!("{ctx}: c{}^{exponent} lies in B_{}, N = {exponent}\n", self.i, self.j)
            }
            Nilpotency::NotFound { dmax } => {
                format!("{ctx}: no N with 2N <= {dmax} puts c{} in B_{} (not a disproof)\n", self.i, self.j)
            }
        }
    }

    fn witnesses(&self) -> Vec<Value> {
        match self.result {
            Nilpotency::Found { exponent } => {
                let ctx = Context::new(self.n, self.phi.iter().copied()).expect("validated context");
                vec![serde_json::to_value(NilpotencyWitness::new(&ctx, self.i, self.j, exponent)).expect("serializable")]
            }
            Nilpotency::NotFound { .. } => Vec::new(),
        }
    }
}
