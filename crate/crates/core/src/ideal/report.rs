//! The pertinency pipeline: choose a quotient `Φ′ ⊆ Φ_n`, compute Hilbert
//! profiles of `Ā / B_j Ā` for the divisors `j` of `n`, and take
//! `p = n - max_j GK`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::echelon::{BlockRunner, EchelonOptions, Sequential};
use super::hilbert::{classification_window, hilbert_quotient_with, HilbertProfile};
use super::phi_n::{phi_n_certify_with, PhiCertificate};
use crate::algebra::Context;
use crate::error::{Error, Result};
use crate::number_theory::arith::{divisors, is_unit};
use crate::number_theory::{pertinency_bounds, phi2, PertinencyBounds};

/// How the quotient set is chosen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "policy", content = "phi", rename_all = "kebab-case")]
pub enum PhiPolicy {
    /// `φ₂(n)`, then every further unit orbit the engine certifies.
    AutoCertify,
    /// A caller-supplied special set, taken on trust.
    Explicit(Vec<usize>),
    /// Work in the full ring.
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportOptions {
    pub max_degree: u32,
    pub phi: PhiPolicy,
    pub echelon: EchelonOptions,
    /// Largest `n` for which the symbolic pipeline runs.
    pub symbolic_limit: usize,
    /// Also profile the `j` that do not divide `n`.
    pub all_j: bool,
}

impl ReportOptions {
    pub fn new(max_degree: u32) -> Self {
        ReportOptions {
            max_degree,
            phi: PhiPolicy::AutoCertify,
            echelon: EchelonOptions::default(),
            symbolic_limit: 10,
            all_j: false,
        }
    }
}

/// Why `k` is in the quotient set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum PhiWitness {
    /// `gcd(k, n)` is a power of two.
    Phi2,
    /// Engine run relative to the previously certified set.
    Engine { certificate: PhiCertificate },
    /// Supplied by the caller.
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiMember {
    pub k: usize,
    pub witness: PhiWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ReportStatus {
    Symbolic,
    BoundsOnly { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PertinencyReport {
    pub n: usize,
    pub max_degree: u32,
    pub status: ReportStatus,
    pub phi_used: Vec<PhiMember>,
    /// Engine attempts on residues that stayed outside the quotient set.
    pub phi_rejected: Vec<PhiCertificate>,
    pub profiles: Vec<HilbertProfile>,
    pub gk_e_estimate: Option<u32>,
    pub pertinency_estimate: Option<u64>,
    pub bounds: PertinencyBounds,
    /// `None` without an estimate.
    pub within_bounds: Option<bool>,
}

fn unit_orbit(n: usize, k: usize) -> Vec<usize> {
    let mut orbit: Vec<usize> = (1..n.max(2)).filter(|&l| is_unit(l as u64, n as u64)).map(|l| l * k % n).collect();
    orbit.sort_unstable();
    orbit.dedup();
    orbit
}

fn context_of(n: usize, members: &[PhiMember]) -> Result<Context> {
    Context::new(n, members.iter().map(|m| m.k))
}

fn choose_phi(
    n: usize,
    opts: &ReportOptions,
    runner: &dyn BlockRunner,
) -> Result<(Vec<PhiMember>, Vec<PhiCertificate>)> {
    match &opts.phi {
        PhiPolicy::None => Ok((Vec::new(), Vec::new())),
        PhiPolicy::Explicit(phi) => {
            let ctx = Context::new(n, phi.iter().copied())?;
            if !ctx.is_special() {
                return Err(Error::Context(format!("{ctx} is not stable under units")));
            }
            Ok((ctx.phi().into_iter().map(|k| PhiMember { k, witness: PhiWitness::Explicit }).collect(), Vec::new()))
        }
        PhiPolicy::AutoCertify => {
            let mut members: Vec<PhiMember> =
                phi2(n as u64).iter().map(|k| PhiMember { k: k as usize, witness: PhiWitness::Phi2 }).collect();
            let mut rejected = Vec::new();
            let mut pending: Vec<Vec<usize>> = Vec::new();
            for k in 0..n {
                if members.iter().all(|m| m.k != k) && pending.iter().all(|o| !o.contains(&k)) {
                    pending.push(unit_orbit(n, k));
                }
            }
            // Each success enlarges the base, which can unlock earlier failures.
            'outer: loop {
                let base = context_of(n, &members)?;
                rejected.clear();
                for (idx, orbit) in pending.iter().enumerate() {
                    let cert = phi_n_certify_with(base, orbit[0], opts.max_degree, opts.echelon, runner)?;
                    if cert.is_certified() {
                        for &k in orbit {
                            members.push(PhiMember { k, witness: PhiWitness::Engine { certificate: cert.clone() } });
                        }
                        pending.remove(idx);
                        continue 'outer;
                    }
                    rejected.push(cert);
                }
                break;
            }
            members.sort_by_key(|m| m.k);
            Ok((members, rejected))
        }
    }
}

pub fn pertinency_report(n: usize, opts: &ReportOptions) -> Result<PertinencyReport> {
    pertinency_report_with(n, opts, &Sequential)
}

pub fn pertinency_report_with(n: usize, opts: &ReportOptions, runner: &dyn BlockRunner) -> Result<PertinencyReport> {
    if n < 2 {
        return Err(Error::Precondition(format!("n = {n} must be at least 2")));
    }
    let bounds = pertinency_bounds(n as u64);
    let bounds_only = |reason: String| PertinencyReport {
        n,
        max_degree: opts.max_degree,
        status: ReportStatus::BoundsOnly { reason },
        phi_used: Vec::new(),
        phi_rejected: Vec::new(),
        profiles: Vec::new(),
        gk_e_estimate: None,
        pertinency_estimate: None,
        bounds,
        within_bounds: None,
    };
    if n > opts.symbolic_limit {
        return Ok(bounds_only(format!("n = {n} exceeds the symbolic limit {}", opts.symbolic_limit)));
    }
    let w = classification_window(n);
    if (opts.max_degree as usize) + 1 < w {
        return Err(Error::Precondition(format!("degree bound {} is shorter than the window {w}", opts.max_degree)));
    }
    let run = || -> Result<PertinencyReport> {
        let (phi_used, phi_rejected) = choose_phi(n, opts, runner)?;
        let ctx = context_of(n, &phi_used)?;
        let js: Vec<usize> = if opts.all_j {
            (1..n).collect()
        } else {
            divisors(n as u64).into_iter().map(|d| d as usize).filter(|&d| d < n).collect()
        };
        let mut profiles = Vec::new();
        for j in js {
            profiles.push(hilbert_quotient_with(ctx, j, opts.max_degree, opts.echelon, runner)?);
        }
        let gk_e_estimate = profiles.iter().map(|p| p.gk_estimate()).try_fold(0u32, |m, g| g.map(|g| m.max(g)));
        let pertinency_estimate = gk_e_estimate.and_then(|g| (n as u64).checked_sub(g as u64));
        let within_bounds = pertinency_estimate.map(|p| bounds.lower <= p && p <= bounds.upper);
        Ok(PertinencyReport {
            n,
            max_degree: opts.max_degree,
            status: ReportStatus::Symbolic,
            phi_used,
            phi_rejected,
            profiles,
            gk_e_estimate,
            pertinency_estimate,
            bounds,
            within_bounds,
        })
    };
    match run() {
        Err(Error::Guardrail { degree, dimension, limit }) => Ok(bounds_only(format!(
            "guardrail: degree {degree} needs {dimension} monomials, limit {limit}; try a larger quotient set"
        ))),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three() {
        let r = pertinency_report(3, &ReportOptions::new(12)).unwrap();
        assert_eq!(r.pertinency_estimate, Some(2));
        assert_eq!(r.within_bounds, Some(true));
        assert_eq!(r.phi_used.iter().map(|m| m.k).collect::<Vec<_>>(), [1, 2]);
    }

    #[test]
    fn beyond_limit() {
        let r = pertinency_report(12, &ReportOptions::new(30)).unwrap();
        assert!(matches!(r.status, ReportStatus::BoundsOnly { .. }));
        assert_eq!((r.bounds.lower, r.bounds.upper), (8, 11));
    }
}
