//! Derivation replay plus invariant suites, selectable by name prefix.

use std::fmt::Write as _;
use std::time::Instant;

use pertinency_core::algebra::{
    apply_f_lambda, basis_count, basis_enumerate, lift_theta_to, normal_form_with, project_pi, AlgebraElement, Context,
    Monomial, Strategy, Token,
};
use pertinency_core::derivations::{builtin_scripts, replay, DerivationScript, ReplayOptions};
use pertinency_core::ideal::{
    generators_bj, nilpotency_search, pertinency_report, smash_crosscheck, EchelonBasis, EchelonOptions, Nilpotency,
    ReportOptions, Seeding, Sequential,
};
use pertinency_core::number_theory::arith::{divisors, is_unit};
use pertinency_core::number_theory::phi2;
use serde::{Deserialize, Serialize};

use crate::commands::Output;
use crate::parallel::RayonRunner;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseKind {
    Script,
    Invariant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub name: String,
    pub kind: CaseKind,
    pub passed: bool,
    pub detail: String,
    pub millis: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub cases: Vec<CaseResult>,
    pub failed: usize,
}

type Suite = fn() -> Result<String, String>;

pub type Check = Box<dyn Fn() -> Result<String, String> + Send + Sync>;

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

fn e2s(e: impl ToString) -> String {
    e.to_string()
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn basis_count_suite() -> Result<String, String> {
    for n in 1..=6usize {
        let ctx = Context::free(n).map_err(e2s)?;
        for r in 0..=10u32 {
            let expected = binomial((n as u128) + r as u128 - 1, n as u128 - 1);
            if basis_count(&ctx, r) != expected {
                return fail(format!("n={n} r={r}: count {} != {expected}", basis_count(&ctx, r)));
            }
            if r <= 6 && basis_enumerate(&ctx, r).len() as u128 != expected {
                return fail(format!("n={n} r={r}: enumeration disagrees"));
            }
        }
    }
    Ok("dim A_r = C(n+r-1, n-1) for n <= 6, r <= 10".into())
}

fn c_independence_suite() -> Result<String, String> {
    for n in 2..=6usize {
        let ctx = Context::free(n).map_err(e2s)?;
        for j in 0..n {
            let c = AlgebraElement::c(ctx, j);
            for k in 0..n {
                let v =
                    AlgebraElement::b(ctx, k).anticommutator(&AlgebraElement::b(ctx, (j + n - k) % n)).map_err(e2s)?;
                if v != c {
                    return fail(format!(
                        "n={n}: b{k} b{} + b{} b{k} = {v}, not c{j}",
                        (j + n - k) % n,
                        (j + n - k) % n
                    ));
                }
            }
        }
    }
    Ok("b_k b_{j-k} + b_{j-k} b_k = c_j for every k, n <= 6".into())
}

fn small_monomials(ctx: Context, max_degree: u32) -> Vec<AlgebraElement> {
    (0..=max_degree)
        .flat_map(|r| basis_enumerate(&ctx, r))
        .map(|m: Monomial| AlgebraElement::from_monomial(ctx, m, 1.into()))
        .collect()
}

fn axioms_suite() -> Result<String, String> {
    let mut count = 0;
    for n in [3usize, 4] {
        let ctx = Context::free(n).map_err(e2s)?;
        let xs = small_monomials(ctx, 2);
        for j in 0..n {
            let c = AlgebraElement::c(ctx, j);
            for x in &xs {
                if c.commutator(x).map_err(e2s)? != AlgebraElement::zero(ctx) {
                    return fail(format!("n={n}: c{j} does not commute with {x}"));
                }
            }
        }
        for x in &xs {
            for y in &xs {
                let xy = x.mul(y).map_err(e2s)?;
                for z in &xs {
                    let left = xy.mul(z).map_err(e2s)?;
                    let right = x.mul(&y.mul(z).map_err(e2s)?).map_err(e2s)?;
                    if left != right {
                        return fail(format!("n={n}: ({x})({y})({z}) is not associative"));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("centrality and {count} associativity triples for n = 3, 4"))
}

fn confluence_suite() -> Result<String, String> {
    let n = 3;
    let ctx = Context::free(n).map_err(e2s)?;
    let alphabet: Vec<Token> = (0..n).map(Token::B).chain((0..n).map(Token::C)).collect();
    let mut words: Vec<Vec<Token>> = vec![vec![]];
    let mut checked = 0;
    for _ in 0..4 {
        let mut next = Vec::new();
        for w in &words {
            for t in &alphabet {
                let mut w2 = w.clone();
                w2.push(*t);
                next.push(w2);
            }
        }
        for w in &next {
            let a = normal_form_with(ctx, w, Strategy::Leftmost).map_err(e2s)?;
            let b = normal_form_with(ctx, w, Strategy::Rightmost).map_err(e2s)?;
            let mut prod = AlgebraElement::one(ctx);
            for t in w {
                let f = match t {
                    Token::B(k) => AlgebraElement::b(ctx, *k),
                    Token::C(k) => AlgebraElement::c(ctx, *k),
                };
                prod = prod.mul(&f).map_err(e2s)?;
            }
            if a != b || a != prod {
                return fail(format!("word {w:?}: {a} / {b} / {prod}"));
            }
            checked += 1;
        }
        words = next;
    }
    Ok(format!("{checked} words of length <= 4 over n = 3 rewrite to one normal form"))
}

fn homomorphism_suite() -> Result<String, String> {
    let mut checked = 0;
    for n in 2..=6usize {
        let ctx = Context::free(n).map_err(e2s)?;
        let xs = small_monomials(ctx, 2);
        let units: Vec<usize> = (1..n).filter(|&l| is_unit(l as u64, n as u64)).collect();
        let divs: Vec<usize> = divisors(n as u64).into_iter().map(|d| d as usize).filter(|&d| d > 1 && d < n).collect();
        for x in &xs {
            for y in &xs {
                let xy = x.mul(y).map_err(e2s)?;
                for &l in &units {
                    let lhs = apply_f_lambda(&xy, l).map_err(e2s)?;
                    let rhs =
                        apply_f_lambda(x, l).map_err(e2s)?.mul(&apply_f_lambda(y, l).map_err(e2s)?).map_err(e2s)?;
                    if lhs != rhs {
                        return fail(format!("f_{l} is not multiplicative on {x}, {y} (n={n})"));
                    }
                }
                for &m in &divs {
                    let lhs = project_pi(&xy, m).map_err(e2s)?;
                    let rhs = project_pi(x, m).map_err(e2s)?.mul(&project_pi(y, m).map_err(e2s)?).map_err(e2s)?;
                    if lhs != rhs {
                        return fail(format!("pi to {m} is not multiplicative on {x}, {y} (n={n})"));
                    }
                }
                checked += 1;
            }
        }
        for m in divs {
            let small = Context::free(m).map_err(e2s)?;
            let ys = small_monomials(small, 2);
            for x in &ys {
                for y in &ys {
                    let lhs = lift_theta_to(&x.mul(y).map_err(e2s)?, n).map_err(e2s)?;
                    let rhs = lift_theta_to(x, n).map_err(e2s)?.mul(&lift_theta_to(y, n).map_err(e2s)?).map_err(e2s)?;
                    if lhs != rhs {
                        return fail(format!("theta from {m} to {n} is not multiplicative on {x}, {y}"));
                    }
                }
            }
        }
    }
    Ok(format!("f_lambda, pi and theta multiplicative on {checked} pairs, n <= 6"))
}

fn f_lambda_suite() -> Result<String, String> {
    let d = 8;
    for n in 2..=6usize {
        let ctx = Context::free(n).map_err(e2s)?;
        let dims: Vec<Vec<u128>> = (0..n)
            .map(|j| EchelonBasis::build(ctx, j, d, EchelonOptions::default()).map(|b| b.quotient_dims()))
            .collect::<Result<_, _>>()
            .map_err(e2s)?;
        for l in (1..n).filter(|&l| is_unit(l as u64, n as u64)) {
            for j in 1..n {
                if dims[j] != dims[j * l % n] {
                    return fail(format!("n={n}: h for j={j} and j={} differ", j * l % n));
                }
            }
        }
    }
    Ok(format!("h(A/B_jA) = h(A/B_(lambda j)A) through degree {d}, n <= 6"))
}

fn gk_e(n: usize) -> Result<Option<u32>, String> {
    let r = pertinency_report(n, &ReportOptions::new(24)).map_err(e2s)?;
    Ok(r.gk_e_estimate)
}

fn pi_monotone_suite() -> Result<String, String> {
    let mut pairs = Vec::new();
    for n in 2..=6usize {
        let gn = gk_e(n)?;
        for m in divisors(n as u64).into_iter().map(|d| d as usize).filter(|&m| m > 1 && m < n) {
            let gm = gk_e(m)?;
            match (gm, gn) {
                (Some(a), Some(b)) if a > b => return fail(format!("GK(E_{m}) = {a} exceeds GK(E_{n}) = {b}")),
                (Some(_), Some(_)) => pairs.push(format!("{m}|{n}")),
                _ => return fail(format!("inconclusive estimate for {m} or {n}")),
            }
        }
    }
    Ok(format!("GK(E_m) <= GK(E_n) for {}", pairs.join(" ")))
}

fn theta_transport_suite() -> Result<String, String> {
    let dmax = 8;
    let mut transported = 0;
    for n in 2..=8usize {
        for m in divisors(n as u64).into_iter().map(|d| d as usize).filter(|&m| m > 1 && m < n) {
            let q = n / m;
            let small = Context::free(m).map_err(e2s)?;
            let big = Context::free(n).map_err(e2s)?;
            for j in 1..m {
                let mut basis: Option<EchelonBasis> = None;
                for i in 0..m {
                    let Nilpotency::Found { exponent } =
                        nilpotency_search(small, i, j, dmax, EchelonOptions::default()).map_err(e2s)?
                    else {
                        continue;
                    };
                    let b = basis.get_or_insert_with(|| EchelonBasis::new(big, q * j, EchelonOptions::default()));
                    if b.max_degree() < 2 * exponent {
                        b.extend_to(2 * exponent).map_err(e2s)?;
                    }
                    let c = AlgebraElement::c(big, q * i).pow(exponent).map_err(e2s)?;
                    if !b.contains(&c).map_err(e2s)? {
                        return fail(format!("c{}^{exponent} not in B_{} for n={n} (from m={m})", q * i, q * j));
                    }
                    transported += 1;
                }
            }
        }
    }
    Ok(format!("{transported} exponents transported along theta, n <= 8"))
}

fn quotient_vs_full_suite() -> Result<String, String> {
    let mut checked = 0;
    for n in 2..=6usize {
        let free = Context::free(n).map_err(e2s)?;
        let quot = Context::new(n, phi2(n as u64).iter().map(|k| k as usize)).map_err(e2s)?;
        for j in 1..n {
            let mut qb = EchelonBasis::new(quot, j, EchelonOptions::default());
            for i in 0..n {
                if let Nilpotency::Found { exponent } =
                    nilpotency_search(free, i, j, 8, EchelonOptions::default()).map_err(e2s)?
                {
                    if qb.max_degree() < 2 * exponent {
                        qb.extend_to(2 * exponent).map_err(e2s)?;
                    }
                    let c = AlgebraElement::c(quot, i).pow(exponent).map_err(e2s)?;
                    if !qb.contains(&c).map_err(e2s)? {
                        return fail(format!("n={n}: c{i}^{exponent} lost in the quotient for j={j}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} exponents from the full ring hold in the phi2 quotient, n <= 6"))
}

fn hilbert_consistency_suite() -> Result<String, String> {
    for (n, phi, j) in [(3usize, vec![], 1usize), (4, vec![], 2), (6, vec![1, 2, 4, 5], 1), (5, vec![1, 2, 3, 4], 2)] {
        let ctx = Context::new(n, phi).map_err(e2s)?;
        let b = EchelonBasis::build(ctx, j, 8, EchelonOptions::default()).map_err(e2s)?;
        for r in 0..=8 {
            let amb = b.ambient(r).expect("built");
            let listed = basis_enumerate(&ctx, r).len() as u128;
            if amb != listed || b.rank(r).expect("built") + b.quotient_dims()[r as usize] != amb {
                return fail(format!("{ctx} j={j} r={r}: rank + h != dim"));
            }
        }
    }
    Ok("h(r) + rank_r = dim A_r on four contexts".into())
}

/// Canonical text of a fixed echelon build on a pool of `threads` workers.
pub fn echelon_fingerprint(threads: usize) -> Result<String, String> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(e2s)?;
    pool.install(|| {
        let mut out = String::new();
        for (n, j) in [(6usize, 1usize), (9, 1), (5, 2)] {
            let ctx = Context::new(n, phi2(n as u64).iter().map(|k| k as usize)).map_err(e2s)?;
            let mut b = EchelonBasis::new(ctx, j, EchelonOptions::default());
            b.extend_to_with(16, &RayonRunner).map_err(e2s)?;
            out.push_str(&b.canonical_text());
        }
        Ok(out)
    })
}

fn determinism_suite() -> Result<String, String> {
    let one = echelon_fingerprint(1)?;
    let eight = echelon_fingerprint(8)?;
    let ctx = Context::new(6, [1, 2, 4, 5]).map_err(e2s)?;
    let mut seq = EchelonBasis::new(ctx, 1, EchelonOptions::default());
    seq.extend_to_with(16, &Sequential).map_err(e2s)?;
    if one != eight {
        return fail("echelon text differs between 1 and 8 threads");
    }
    if !one.contains(&seq.canonical_text()) {
        return fail("parallel and sequential echelon text differ");
    }
    Ok(format!("{} bytes of echelon text identical on 1 and 8 threads", one.len()))
}

fn seeding_suite() -> Result<String, String> {
    for n in 2..=5usize {
        let ctx = Context::free(n).map_err(e2s)?;
        for j in 1..n {
            let a = EchelonBasis::build(ctx, j, 6, EchelonOptions::default()).map_err(e2s)?;
            let opts = EchelonOptions { seeding: Seeding::Generators, ..EchelonOptions::default() };
            let b = EchelonBasis::build(ctx, j, 6, opts).map_err(e2s)?;
            if a.canonical_text() != b.canonical_text() {
                return fail(format!("n={n} j={j}: weight-block seeding differs from generator seeding"));
            }
        }
    }
    Ok("weight-block and generator seeding agree through degree 6, n <= 5".into())
}

fn generators_suite() -> Result<String, String> {
    let g = generators_bj(&Context::free(3).map_err(e2s)?, 1, None);
    let mut names: Vec<String> = g.generators.iter().map(|m| m.to_string()).collect();
    names.sort();
    if names != ["b1", "c1", "c2*b2", "c2^2"] {
        return fail(format!("n=3, j=1 generators {names:?}"));
    }
    for n in 2..=6usize {
        let ctx = Context::free(n).map_err(e2s)?;
        for j in 1..n {
            if let Some(m) = generators_bj(&ctx, j, None).generators.iter().find(|m| m.weight() != j) {
                return fail(format!("n={n} j={j}: generator {m} has weight {}", m.weight()));
            }
        }
    }
    Ok("B_1 for n = 3 is {b1, c1, c2^2, c2*b2}; all generator weights correct for n <= 6".into())
}

fn crosscheck_suite() -> Result<String, String> {
    for n in [2usize, 3] {
        let r = smash_crosscheck(n, 4).map_err(e2s)?;
        if !r.agrees() {
            return fail(format!("n={n}: smash-product ideal and echelon span disagree"));
        }
    }
    Ok("e_j(A#C_n) meet (e_0) equals B_jA through degree 4 for n = 2, 3".into())
}

fn script_check(script: DerivationScript) -> Check {
    Box::new(move || {
        let r = replay(&script, &ReplayOptions::default()).map_err(e2s)?;
        if !r.passed {
            return fail(r.failure.unwrap_or_else(|| "failed".into()));
        }
        let mut detail = format!("{} steps", r.steps.len());
        let members = r.steps.iter().map(|s| s.in_ideal).chain(r.members.iter().map(|m| m.in_ideal)).flatten().count();
        if members > 0 {
            let _ = write!(detail, ", {members} ideal memberships");
        }
        let pinned: Vec<&str> = r.pinned_steps().map(|s| s.name.as_str()).collect();
        if !pinned.is_empty() {
            let _ = write!(detail, ", pinned {}", pinned.join(" "));
        }
        Ok(detail)
    })
}

pub type Case = (String, CaseKind, Check);

pub fn all_cases() -> Vec<Case> {
    let mut cases: Vec<Case> =
        builtin_scripts().into_iter().map(|s| (s.name.clone(), CaseKind::Script, script_check(s))).collect();
    let suites: [(&str, Suite); 15] = [
        ("basis-count", basis_count_suite),
        ("c-independence", c_independence_suite),
        ("algebra-axioms", axioms_suite),
        ("rewrite-confluence", confluence_suite),
        ("homomorphisms", homomorphism_suite),
        ("f-lambda-symmetry", f_lambda_suite),
        ("pi-monotonicity", pi_monotone_suite),
        ("theta-transport", theta_transport_suite),
        ("quotient-vs-full", quotient_vs_full_suite),
        ("hilbert-consistency", hilbert_consistency_suite),
        ("echelon-determinism", determinism_suite),
        ("seeding", seeding_suite),
        ("generators", generators_suite),
        ("smash-crosscheck", crosscheck_suite),
        ("table-bounds", table_bounds_suite),
    ];
    for (name, f) in suites {
        cases.push((name.to_string(), CaseKind::Invariant, Box::new(f)));
    }
    cases
}

fn table_bounds_suite() -> Result<String, String> {
    use pertinency_core::number_theory::{pertinency_bounds_with, LocalStore};
    let store = LocalStore::default();
    for n in 2..=200u64 {
        let b = pertinency_bounds_with(n, &store);
        if b.phi2_lower != phi2(n).len() as u64 || b.lower < b.phi2_lower || b.lower > b.upper {
            return fail(format!("n={n}: bounds {b:?}"));
        }
    }
    Ok("bounds consistent with |phi2(n)| for n <= 200".into())
}

pub fn verify(case: Option<&str>) -> Result<VerifyOutput, CliError> {
    let selected: Vec<_> =
        all_cases().into_iter().filter(|(name, _, _)| case.is_none_or(|c| name.starts_with(c))).collect();
    if selected.is_empty() {
        return Err(CliError::Usage(format!("no case matches `{}`", case.unwrap_or_default())));
    }
    let mut cases = Vec::new();
    for (name, kind, check) in selected {
        let t = Instant::now();
        let (passed, detail) = match check() {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        cases.push(CaseResult { name, kind, passed, detail, millis: t.elapsed().as_secs_f64() * 1e3 });
    }
    let failed = cases.iter().filter(|c| !c.passed).count();
    Ok(VerifyOutput { cases, failed })
}

impl Output for VerifyOutput {
    fn text(&self) -> String {
        let mut s = String::new();
        for c in &self.cases {
            let status = if c.passed { "pass" } else { "FAIL" };
            let _ = writeln!(s, "{status}  {:<26} {:>9.1} ms  {}", c.name, c.millis, c.detail);
        }
        let _ = writeln!(s, "{} cases, {} failed", self.cases.len(), self.failed);
        s
    }

    fn failure(&self) -> Option<String> {
        (self.failed > 0).then(|| format!("{} cases failed", self.failed))
    }
}
