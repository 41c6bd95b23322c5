use pertinency_core::algebra::{
    apply_f_lambda, basis_count, basis_enumerate, lift_theta_to, normal_form_with, project_pi, AlgebraElement, Context,
    Monomial, Strategy as Rewrite, Token,
};
use pertinency_core::Rational;
use proptest::prelude::*;

mod common;

fn oracle(n: usize, word: &[Token]) -> common::Poly {
    let mut bs = Vec::new();
    let mut cs = vec![0u16; n];
    for t in word {
        match *t {
            Token::B(k) => bs.push(k),
            Token::C(k) => cs[k] += 1,
        }
    }
    common::sort_word(n, bs, cs, (1, 1))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn from_oracle(ctx: Context, terms: common::Poly) -> AlgebraElement {
    let n = ctx.n();
    AlgebraElement::from_terms(
        ctx,
        terms.into_iter().map(|((bs, cs), (p, q))| {
            let mask = bs.iter().fold(0u64, |m, &k| m | 1 << k);
            (Monomial::from_parts(n, mask, &cs), Rational::new(p, q))
        }),
    )
}

fn word_strategy() -> impl Strategy<Value = (usize, Vec<Token>)> {
    (2usize..=5).prop_flat_map(|n| {
        let tok = prop_oneof![3 => (0..n).prop_map(Token::B), 1 => (0..n).prop_map(Token::C)];
        (Just(n), prop::collection::vec(tok, 0..6))
    })
}

fn element_strategy(n: usize) -> impl Strategy<Value = AlgebraElement> {
    let ctx = Context::free(n).unwrap();
    let term = (0u64..(1 << n), prop::collection::vec(0u16..2, n), -3i64..=3);
    prop::collection::vec(term, 0..4).prop_map(move |ts| {
        AlgebraElement::from_terms(
            ctx,
            ts.into_iter().map(|(mask, c, k)| (Monomial::from_parts(n, mask, &c), Rational::from_int(k))),
        )
    })
}

fn product(ctx: Context, word: &[Token]) -> AlgebraElement {
    word.iter().fold(AlgebraElement::one(ctx), |acc, t| {
        let f = match *t {
            Token::B(k) => AlgebraElement::b(ctx, k),
            Token::C(k) => AlgebraElement::c(ctx, k),
        };
        acc.mul(&f).unwrap()
    })
}

proptest! {
    #[test]
    fn normal_forms_agree_with_oracle((n, word) in word_strategy()) {
        let ctx = Context::free(n).unwrap();
        let expected = from_oracle(ctx, oracle(n, &word));
        prop_assert_eq!(normal_form_with(ctx, &word, Rewrite::Leftmost).unwrap(), expected.clone());
        prop_assert_eq!(normal_form_with(ctx, &word, Rewrite::Rightmost).unwrap(), expected.clone());
        prop_assert_eq!(product(ctx, &word), expected);
    }

    #[test]
    fn associative_and_distributive(
        (a, b, c) in (2usize..=4).prop_flat_map(|n| (element_strategy(n), element_strategy(n), element_strategy(n)))
    ) {
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn c_elements_are_central((a, k) in (2usize..=5).prop_flat_map(|n| (element_strategy(n), 0..n))) {
        let c = AlgebraElement::c(a.context(), k);
        prop_assert!(c.commutator(&a).unwrap().is_zero());
    }

    #[test]
    fn maps_are_multiplicative((a, b) in (2usize..=6).prop_flat_map(|n| (element_strategy(n), element_strategy(n)))) {
        let n = a.context().n();
        let ab = a.mul(&b).unwrap();
        for l in (1..n).filter(|l| gcd(*l as i64, n as i64) == 1) {
            let lhs = apply_f_lambda(&ab, l).unwrap();
            let rhs = apply_f_lambda(&a, l).unwrap().mul(&apply_f_lambda(&b, l).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
        for m in (2..n).filter(|m| n % m == 0) {
            let lhs = project_pi(&ab, m).unwrap();
            let rhs = project_pi(&a, m).unwrap().mul(&project_pi(&b, m).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
        for q in 2..=3 {
            let lhs = lift_theta_to(&ab, q * n).unwrap();
            let rhs = lift_theta_to(&a, q * n).unwrap().mul(&lift_theta_to(&b, q * n).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn text_round_trips(a in (2usize..=6).prop_flat_map(element_strategy)) {
        let text = a.to_string();
        prop_assert_eq!(AlgebraElement::parse(a.context(), &text).unwrap(), a);
    }

    #[test]
    fn rational_field_ops(p in -50i64..50, q in 1i64..50, r in -50i64..50, s in 1i64..50) {
        let x = Rational::new(p, q);
        let y = Rational::new(r, s);
        prop_assert_eq!(&x + &y, Rational::new(p * s + r * q, q * s));
        prop_assert_eq!(&x * &y, Rational::new(p * r, q * s));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        if r != 0 {
            prop_assert_eq!(&x.checked_div(&y).unwrap() * &y, x.clone());
        }
        prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
    }
}

#[test]
fn defining_relations() {
    for n in 2..=6 {
        let ctx = Context::free(n).unwrap();
        for u in 0..n {
            let sq = AlgebraElement::b(ctx, u).pow(2).unwrap();
            assert_eq!(sq, AlgebraElement::c(ctx, 2 * u % n).scale(&Rational::half()));
            for v in 0..n {
                let s = AlgebraElement::b(ctx, u).anticommutator(&AlgebraElement::b(ctx, v)).unwrap();
                assert_eq!(s, AlgebraElement::c(ctx, (u + v) % n));
            }
        }
    }
}

#[test]
fn basis_dimensions() {
    fn binom(n: u128, k: u128) -> u128 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
    for n in 1..=6usize {
        let ctx = Context::free(n).unwrap();
        for r in 0..=10u32 {
            let expected = binom(n as u128 + r as u128 - 1, n as u128 - 1);
            assert_eq!(basis_count(&ctx, r), expected);
            if r <= 7 {
                let list = basis_enumerate(&ctx, r);
                assert_eq!(list.len() as u128, expected);
                assert!(list.iter().all(|m| m.degree() == r));
            }
        }
    }
}

#[test]
fn quotient_kills_phi() {
    let ctx = Context::new(6, [1, 2, 4, 5]).unwrap();
    assert!(AlgebraElement::c(ctx, 2).is_zero());
    let s = AlgebraElement::b(ctx, 1).anticommutator(&AlgebraElement::b(ctx, 4)).unwrap();
    assert!(s.is_zero());
    let s = AlgebraElement::b(ctx, 1).anticommutator(&AlgebraElement::b(ctx, 2)).unwrap();
    assert_eq!(s, AlgebraElement::c(ctx, 3));
    assert!(!AlgebraElement::c(ctx, 0).is_zero());
}

#[test]
fn printing_puts_c_factors_first() {
    let ctx = Context::free(6).unwrap();
    let x = AlgebraElement::parse(ctx, "1/2*b4*c0^2 + c0*b1*b4*b5").unwrap();
    assert_eq!(x.to_string(), "c0*b1*b4*b5 + 1/2*c0^2*b4");
}
