//! The shipped scripts: fixed chains stored as JSON, plus two parametric
//! families whose instances are generated from their congruence hypotheses.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::script::{DerivationScript, Operation, Step};
use crate::coeff::Rational;
use crate::number_theory::arith::is_unit;
use crate::number_theory::sets::{in_phi2, phi2};

const FIXED: &[&str] = &[
    include_str!("../../scripts/prop6.6-n2.json"),
    include_str!("../../scripts/prop6.6-n4.json"),
    include_str!("../../scripts/prop6.6-n7.json"),
    include_str!("../../scripts/prop6.6-n8.json"),
    include_str!("../../scripts/lemma9.1-case2.json"),
    include_str!("../../scripts/lemma9.2-chain.json"),
    include_str!("../../scripts/lemma9.3-chain1.json"),
    include_str!("../../scripts/lemma9.3-chain2.json"),
];

/// `(n, i, i0)` triples with `i` odd outside `φ₂(n)` and `i0 - i` a unit.
pub const SAMPLED_TRIPLES: &[(usize, usize, usize)] = &[(14, 7, 2), (10, 5, 2), (18, 3, 2), (22, 11, 2), (15, 3, 2)];

fn c_power(i: usize, t: usize) -> String {
    match t {
        0 => String::new(),
        1 => format!("c{i}*"),
        _ => format!("c{i}^{t}*"),
    }
}

fn step(name: String, operands: [String; 2], factor: Option<Rational>, expected: String) -> Step {
    Step {
        name,
        op: Operation::GradedCommutator,
        operands: operands.into(),
        factor,
        expected,
        stated: None,
        note: None,
        in_ideal: false,
    }
}

fn family_context(n: usize) -> Vec<usize> {
    phi2(n as u64).iter().map(|k| k as usize).collect()
}

fn check_triple(n: usize, i: usize, i0: usize) {
    assert!(i % 2 == 1 && !in_phi2(i as u64, n as u64), "{i} must be odd outside phi2({n})");
    assert!(is_unit(((i0 + n - i) % n) as u64, n as u64), "{i0} - {i} must be a unit mod {n}");
}

/// `-[c_i^t b_j, b_r b_s] = c_i^{t+1} b_r` with `r = j + (i0 - i)`, `s = i - j`,
/// for every `j` with `2j + (i0 - i) ∈ φ₂(n)` and `t <= t_max`.
pub fn single_move_instance(n: usize, i: usize, i0: usize, t_max: usize) -> DerivationScript {
    check_triple(n, i, i0);
    let d = (i0 + n - i) % n;
    let mut steps = Vec::new();
    for j in 0..n {
        if !in_phi2(((2 * j + d) % n) as u64, n as u64) {
            continue;
        }
        let (r, s) = ((j + d) % n, (i + n - j) % n);
        for t in 0..=t_max {
            steps.push(step(
                format!("j{j}_t{t}"),
                [format!("{}b{j}", c_power(i, t)), format!("b{r}*b{s}")],
                Some(Rational::from_int(-1)),
                format!("{}b{r}", c_power(i, t + 1)),
            ));
        }
    }
    DerivationScript {
        name: format!("lemma7.4-n{n}-i{i}-i0-{i0}"),
        family: "lemma7.4".into(),
        n,
        phi: family_context(n),
        ideal_j: None,
        members: Vec::new(),
        steps,
    }
}

/// The two commutators that move `j` to `c = j + (ξ + 2)(i0 - i)`, for every
/// `ξ <= xi_max` and `j` meeting the three congruence hypotheses.
pub fn double_move_instance(n: usize, i: usize, i0: usize, xi_max: usize) -> DerivationScript {
    check_triple(n, i, i0);
    let delta = (i0 + n - i) % n;
    let mut steps = Vec::new();
    for xi in 0..=xi_max {
        let i_xi = (i0 + xi * delta) % n;
        let dd = (n - (xi + 1) * delta % n) % n;
        for j in 0..n {
            let a = (i + n - j) % n;
            let c = (j + (xi + 2) * delta) % n;
            let ok = |k: usize| in_phi2((k % n) as u64, n as u64);
            if !(ok(c + j) && ok(dd + j) && ok(i_xi + c)) {
                continue;
            }
            for (t, t2) in [(0, 0), (1, 0), (0, 1)] {
                let first = format!("x{xi}_j{j}_t{t}_{t2}_a");
                steps.push(step(
                    first.clone(),
                    [format!("{}b{j}", c_power(i, t)), format!("b{a}*b{c}*b{dd}")],
                    None,
                    format!("{}b{c}*b{dd}", c_power(i, t + 1)),
                ));
                steps.push(step(
                    format!("x{xi}_j{j}_t{t}_{t2}_b"),
                    [format!("${first}"), format!("{}b{i_xi}", c_power(i, t2))],
                    None,
                    format!("{}b{c}", c_power(i, t + t2 + 2)),
                ));
            }
        }
    }
    DerivationScript {
        name: format!("lemma7.5-n{n}-i{i}-i0-{i0}"),
        family: "lemma7.5".into(),
        n,
        phi: family_context(n),
        ideal_j: None,
        members: Vec::new(),
        steps,
    }
}

/// Every shipped script, fixed chains first.
pub fn builtin_scripts() -> Vec<DerivationScript> {
    let mut out: Vec<DerivationScript> =
        FIXED.iter().map(|src| serde_json::from_str(src).expect("shipped scripts parse")).collect();
    for &(n, i, i0) in SAMPLED_TRIPLES {
        out.push(single_move_instance(n, i, i0, 2));
        let s = double_move_instance(n, i, i0, 1);
        if !s.steps.is_empty() {
            out.push(s);
        }
    }
    out
}

/// Scripts whose name starts with `filter`.
pub fn select(filter: Option<&str>) -> Vec<DerivationScript> {
    builtin_scripts().into_iter().filter(|s| filter.is_none_or(|f| s.name.starts_with(f))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivations::script::{replay, ReplayOptions};
    use alloc::collections::BTreeSet;

    #[test]
    fn all_builtin_scripts_pass() {
        let scripts = builtin_scripts();
        let families: BTreeSet<&str> = scripts.iter().map(|s| s.family.as_str()).collect();
        assert!(families.len() >= 6, "{families:?}");
        for s in &scripts {
            assert!(!s.steps.is_empty(), "{}", s.name);
            let r = replay(s, &ReplayOptions::default()).unwrap();
            assert!(r.passed, "{}: {:?}", s.name, r.failure);
        }
    }
}
