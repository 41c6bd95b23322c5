use std::collections::BTreeMap;

use pertinency_core::derivations::{
    builtin_scripts, double_move_instance, replay, select, single_move_instance, DerivationScript, Operation,
    ReplayOptions,
};
use pertinency_core::Rational;

mod common;

use common::{degree, parse, poly_add, poly_mul, reduce, Poly};

fn frac(r: &Rational) -> (i64, i64) {
    let s = r.to_string();
    let (p, q) = s.split_once('/').unwrap_or((&s, "1"));
    common::norm((p.parse().unwrap(), q.parse().unwrap()))
}

fn scale(p: &Poly, f: (i64, i64)) -> Poly {
    let mut out: Poly = p.iter().map(|(k, c)| (k.clone(), common::mulf(*c, f))).collect();
    out.retain(|_, c| c.0 != 0);
    out
}

/// Replays `script` with the naive model and returns every step value.
fn oracle_replay(s: &DerivationScript) -> BTreeMap<String, Poly> {
    let n = s.n;
    let mut bound: BTreeMap<String, Poly> = BTreeMap::new();
    for step in &s.steps {
        let ops: Vec<Poly> = step
            .operands
            .iter()
            .map(|src| match src.strip_prefix('$') {
                Some(name) => bound[name].clone(),
                None => reduce(&parse(n, src), &s.phi),
            })
            .collect();
        let both = |sign: i64| poly_add(&poly_mul(n, &ops[0], &ops[1]), &poly_mul(n, &ops[1], &ops[0]), sign);
        let value = match step.op {
            Operation::Commutator => both(-1),
            Operation::Anticommutator => both(1),
            Operation::GradedCommutator => {
                let odd = degree(&ops[0]).unwrap_or(0) * degree(&ops[1]).unwrap_or(0) % 2 == 1;
                both(if odd { 1 } else { -1 })
            }
            Operation::Multiply => ops.iter().fold(parse(n, "1"), |acc, x| poly_mul(n, &acc, x)),
            Operation::Scale | Operation::Eval => ops[0].clone(),
        };
        let value = reduce(&value, &s.phi);
        let value = match &step.factor {
            Some(f) => scale(&value, frac(f)),
            None => value,
        };
        bound.insert(step.name.clone(), value);
    }
    bound
}

#[test]
fn every_builtin_step_matches_the_naive_model() {
    for s in builtin_scripts() {
        let values = oracle_replay(&s);
        for step in &s.steps {
            let expected = reduce(&parse(s.n, &step.expected), &s.phi);
            assert_eq!(values[&step.name], expected, "{} / {}", s.name, step.name);
        }
    }
}

#[test]
fn engine_replay_passes_with_memberships() {
    for s in builtin_scripts() {
        let r = replay(&s, &ReplayOptions::default()).unwrap();
        assert!(r.passed, "{}: {:?}", s.name, r.failure);
        if s.ideal_j.is_some() {
            assert!(r.membership_skipped.is_none(), "{}", s.name);
            assert!(r.members.iter().all(|m| m.in_ideal == Some(true)), "{}", s.name);
            for (st, rep) in s.steps.iter().zip(&r.steps) {
                if st.in_ideal {
                    assert_eq!(rep.in_ideal, Some(true), "{} / {}", s.name, st.name);
                }
            }
        }
    }
}

#[test]
fn chains_end_at_the_published_values() {
    for (name, step, value) in [
        ("lemma9.1-case2", "s4", "c0^4"),
        ("lemma9.1-case2", "s5", "c0^3"),
        ("lemma9.2-chain", "s5", "c0^5"),
        ("lemma9.3-chain1", "s2", "c6^5 - c0*c3*c6^3"),
        ("prop6.6-n2", "", "c0"),
        ("prop6.6-n4", "", "c0^3"),
        ("prop6.6-n7", "", "c0^6"),
    ] {
        let s = select(Some(name)).remove(0);
        let step = if step.is_empty() { &s.steps.last().unwrap().name } else { step };
        assert_eq!(oracle_replay(&s)[step], parse(s.n, value), "{name} / {step}");
    }
}

#[test]
fn pinned_steps_are_exactly_the_degree_mismatches() {
    let mut pinned = Vec::new();
    for s in builtin_scripts() {
        let values = oracle_replay(&s);
        let report = replay(&s, &ReplayOptions { check_membership: false, ..Default::default() }).unwrap();
        for step in &s.steps {
            let Some(stated) = &step.stated else { continue };
            let stated = parse(s.n, stated);
            assert_ne!(stated, values[&step.name]);
            assert_ne!(degree(&stated), degree(&values[&step.name]), "{} / {}", s.name, step.name);
            pinned.push(format!("{}/{}", s.name, step.name));
        }
        let from_report: Vec<String> = report.pinned_steps().map(|p| format!("{}/{}", s.name, p.name)).collect();
        assert!(from_report.iter().all(|p| pinned.contains(p)));
    }
    assert_eq!(pinned, ["lemma9.1-case2/s1", "lemma9.3-chain2/s2"]);
}

#[test]
fn first_step_of_the_six_chain_needs_the_anticommutator() {
    let s = select(Some("lemma9.1-case2")).remove(0);
    let (x, y) = (parse(6, "b3*b5"), parse(6, "b1*b3*b4"));
    let graded = poly_add(&poly_mul(6, &x, &y), &poly_mul(6, &y, &x), -1);
    let anti = poly_add(&poly_mul(6, &x, &y), &poly_mul(6, &y, &x), 1);
    assert_eq!(reduce(&anti, &s.phi), parse(6, "1/2*c0^2*b4"));
    assert_eq!(reduce(&graded, &s.phi), parse(6, "1/2*c0^2*b4 + c0*b1*b4*b5"));
}

#[test]
fn family_instances_replay_over_a_wider_sample() {
    for (n, i, i0) in [(14, 7, 2), (26, 13, 2), (21, 7, 2), (28, 7, 2), (33, 11, 1), (45, 9, 2)] {
        for s in [single_move_instance(n, i, i0, 1), double_move_instance(n, i, i0, 1)] {
            let values = oracle_replay(&s);
            for step in &s.steps {
                assert_eq!(values[&step.name], reduce(&parse(n, &step.expected), &s.phi), "{} / {}", s.name, step.name);
            }
            let opts = ReplayOptions { check_membership: false, ..Default::default() };
            assert!(replay(&s, &opts).unwrap().passed, "{}", s.name);
        }
    }
}
