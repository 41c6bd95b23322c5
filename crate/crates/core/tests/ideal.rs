use std::collections::BTreeMap;

use pertinency_core::algebra::{basis_enumerate, AlgebraElement, Context, Monomial};
use pertinency_core::ideal::{
    generators_bj, gk_classify, hilbert_quotient, nilpotency_search, pertinency_report, phi_n_certify,
    smash_crosscheck, EchelonBasis, EchelonOptions, GrowthClass, Nilpotency, ReportOptions, Seeding,
};
use pertinency_core::Rational;
use proptest::prelude::*;

fn opts() -> EchelonOptions {
    EchelonOptions::default()
}

/// Rank by plain Gaussian elimination on coefficient maps.
fn naive_rank(rows: &[AlgebraElement]) -> usize {
    let mut basis: Vec<BTreeMap<Monomial, Rational>> = Vec::new();
    for r in rows {
        let mut v: BTreeMap<Monomial, Rational> = r.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        for b in &basis {
            let (pivot, pc) = b.iter().next().unwrap();
            if let Some(c) = v.get(pivot).cloned() {
                let f = c.checked_div(pc).unwrap();
                for (m, x) in b {
                    let e = v.entry(m.clone()).or_default();
                    *e = &*e - &(&f * x);
                }
                v.retain(|_, x| !x.is_zero());
            }
        }
        if !v.is_empty() {
            basis.push(v);
            basis.sort_by(|a, b| a.keys().next().cmp(&b.keys().next()));
        }
    }
    basis.len()
}

#[test]
fn generators_for_three() {
    let ctx = Context::free(3).unwrap();
    let mut g: Vec<String> = generators_bj(&ctx, 1, None).generators.iter().map(|m| m.to_string()).collect();
    g.sort();
    assert_eq!(g, ["b1", "c1", "c2*b2", "c2^2"]);
}

#[test]
fn generator_weights() {
    for n in 2..=7 {
        let ctx = Context::free(n).unwrap();
        for j in 1..n {
            assert!(generators_bj(&ctx, j, None).generators.iter().all(|m| m.weight() == j));
        }
    }
}

#[test]
fn generators_for_five_lie_in_small_ideal() {
    // Right ideal generated by b1, b2, c1, c2, c3, c4 in the free ring, n = 5.
    let ctx = Context::free(5).unwrap();
    let gens: Vec<AlgebraElement> = [1, 2]
        .into_iter()
        .map(|k| AlgebraElement::b(ctx, k))
        .chain((1..5).map(|k| AlgebraElement::c(ctx, k)))
        .collect();
    for g in generators_bj(&ctx, 1, None).generators {
        let d = g.degree();
        let mut rows = Vec::new();
        for x in &gens {
            let dx = x.degree().unwrap();
            if dx > d {
                continue;
            }
            for m in basis_enumerate(&ctx, d - dx) {
                rows.push(x.mul(&AlgebraElement::from_monomial(ctx, m, 1.into())).unwrap());
            }
        }
        let target = AlgebraElement::from_monomial(ctx, g.clone(), 1.into());
        let before = naive_rank(&rows);
        rows.push(target);
        assert_eq!(naive_rank(&rows), before, "{g} escapes the ideal");
    }
}

#[test]
fn small_rank_by_hand() {
    let ctx = Context::free(3).unwrap();
    let basis = EchelonBasis::build(ctx, 1, 2, opts()).unwrap();
    let b = |k| AlgebraElement::b(ctx, k);
    let spanning =
        vec![b(1).mul(&b(0)).unwrap(), b(1).mul(&b(1)).unwrap(), b(1).mul(&b(2)).unwrap(), AlgebraElement::c(ctx, 1)];
    assert_eq!(basis.rank(2), Some(naive_rank(&spanning) as u128));
    assert_eq!(basis.rank(2), Some(4));
    assert_eq!(basis.quotient_dims(), vec![1, 2, 2]);
}

#[test]
fn membership_examples() {
    let ctx = Context::free(3).unwrap();
    let basis = EchelonBasis::build(ctx, 1, 10, opts()).unwrap();
    assert!(basis.contains(&AlgebraElement::c(ctx, 1)).unwrap());
    assert!(basis.contains(&AlgebraElement::zero(ctx)).unwrap());
    for k in 1..=5 {
        assert!(!basis.contains(&AlgebraElement::c(ctx, 0).pow(k).unwrap()).unwrap());
    }
}

#[test]
fn two_has_finite_quotient() {
    let p = hilbert_quotient(Context::free(2).unwrap(), 1, 12, opts()).unwrap();
    assert_eq!(p.classification, GrowthClass::FiniteDim);
    assert!(p.dims.iter().rev().take(4).all(|&h| h == 0));
}

#[test]
fn hilbert_classes() {
    let p = hilbert_quotient(Context::new(6, 1..6).unwrap(), 2, 20, opts()).unwrap();
    assert_eq!(p.classification, GrowthClass::FiniteDim);
    for n in [3, 5] {
        let p = hilbert_quotient(Context::free(n).unwrap(), 1, 20, opts()).unwrap();
        assert_eq!(p.classification, GrowthClass::BoundedGrowth, "n={n}");
        assert_eq!(p.gk_estimate(), Some(1));
        assert!(*p.dims.last().unwrap() > 0);
    }
}

#[test]
fn classifier_examples() {
    assert_eq!(gk_classify(&[3, 1, 0, 0, 0, 0, 0, 0, 0, 0], 8).unwrap(), GrowthClass::FiniteDim);
    assert_eq!(gk_classify(&[1, 2, 2, 2, 2, 2, 2, 2, 2, 2], 8).unwrap(), GrowthClass::BoundedGrowth);
    let linear: Vec<u128> = (0..16).map(|r| r + 1).collect();
    assert_eq!(gk_classify(&linear, 12).unwrap(), GrowthClass::PolynomialGrowth(2));
    assert!(gk_classify(&[1, 2], 8).is_err());
}

#[test]
fn nilpotency_examples() {
    let three = Context::free(3).unwrap();
    assert_eq!(nilpotency_search(three, 1, 1, 10, opts()).unwrap(), Nilpotency::Found { exponent: 1 });
    assert_eq!(nilpotency_search(three, 0, 1, 20, opts()).unwrap(), Nilpotency::NotFound { dmax: 20 });
    let seven = Context::new(7, 1..7).unwrap();
    match nilpotency_search(seven, 0, 1, 12, opts()).unwrap() {
        Nilpotency::Found { exponent } => assert!(exponent <= 6),
        other => panic!("{other:?}"),
    }
}

#[test]
fn phi_n_examples() {
    assert!(phi_n_certify(Context::free(2).unwrap(), 1, 8, opts()).unwrap().is_certified());
    assert_eq!(phi_n_certify(Context::free(3).unwrap(), 1, 8, opts()).unwrap().exponent, Some(1));
    let six = Context::new(6, [1, 2, 4, 5]).unwrap();
    assert!(!phi_n_certify(six, 3, 12, opts()).unwrap().is_certified());
}

#[test]
fn pertinency_examples() {
    for (n, d, p) in [(3, 12, 2), (6, 24, 5), (9, 30, 8), (10, 30, 9)] {
        let r = pertinency_report(n, &ReportOptions::new(d)).unwrap();
        assert_eq!(r.pertinency_estimate, Some(p), "n={n}");
        assert_eq!(r.within_bounds, Some(true));
    }
}

#[test]
fn smash_product_oracle() {
    for n in [2, 3] {
        let r = smash_crosscheck(n, 4).unwrap();
        assert!(r.agrees(), "n={n}");
        assert!(r.degrees.iter().filter(|d| d.r == 0).all(|d| d.smash_rank == 0 && d.echelon_rank == 0));
    }
}

#[test]
fn seeding_strategies_agree() {
    for n in 2..=5 {
        let ctx = Context::free(n).unwrap();
        for j in 1..n {
            let a = EchelonBasis::build(ctx, j, 6, opts()).unwrap();
            let g = EchelonOptions { seeding: Seeding::Generators, ..opts() };
            let b = EchelonBasis::build(ctx, j, 6, g).unwrap();
            assert_eq!(a.canonical_text(), b.canonical_text(), "n={n} j={j}");
        }
    }
}

#[test]
fn guardrail_is_an_error() {
    let small = EchelonOptions { limit: 100, ..opts() };
    assert!(EchelonBasis::build(Context::free(8).unwrap(), 1, 6, small).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn echelon_is_a_right_ideal(n in 2usize..=5, jj in 1usize..5, d in 3u32..6) {
        let j = 1 + (jj - 1) % (n - 1);
        let ctx = Context::free(n).unwrap();
        let basis = EchelonBasis::build(ctx, j, d, opts()).unwrap();
        for r in 0..d {
            let rows = basis.rows(r).unwrap_or_else(|_| {
                basis_enumerate(&ctx, r).into_iter().map(|m| AlgebraElement::from_monomial(ctx, m, 1.into())).collect()
            });
            for row in rows {
                for k in 0..n {
                    let moved = row.mul(&AlgebraElement::b(ctx, k)).unwrap();
                    prop_assert!(basis.contains(&moved).unwrap());
                }
            }
            prop_assert!(basis.rank(r).unwrap() <= basis.ambient(r).unwrap());
        }
        let again = EchelonBasis::build(ctx, j, d, opts()).unwrap();
        prop_assert_eq!(basis.canonical_text(), again.canonical_text());
    }

    #[test]
    fn weight_j_monomials_lie_in_the_ideal(n in 2usize..=5, jj in 1usize..5, r in 1u32..5) {
        let j = 1 + (jj - 1) % (n - 1);
        let ctx = Context::free(n).unwrap();
        let basis = EchelonBasis::build(ctx, j, r, opts()).unwrap();
        for m in basis_enumerate(&ctx, r).into_iter().filter(|m| m.weight() == j) {
            prop_assert!(basis.contains(&AlgebraElement::from_monomial(ctx, m, 1.into())).unwrap());
        }
    }
}
