//! Normal forms of words by adjacent-pair rewriting.
//!
//! This route is independent of the closed-form product in `element` and is
//! used to cross-check it.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use smallvec::SmallVec;

use super::context::Context;
use super::element::AlgebraElement;
use super::monomial::Monomial;
use crate::coeff::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Token {
    B(usize),
    C(usize),
}

/// Which out-of-order adjacent pair to rewrite first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
}

type Word = (Vec<u16>, SmallVec<[u16; 16]>);

fn redex(w: &[u16], strategy: Strategy) -> Option<usize> {
    let mut pos = (0..w.len().saturating_sub(1)).filter(|&i| w[i] >= w[i + 1]);
    match strategy {
        Strategy::Leftmost => pos.next(),
        Strategy::Rightmost => pos.next_back(),
    }
}

/// Rewrites `b_u b_v` (`u > v`) to `c_{u+v} - b_v b_u` and `b_u b_u` to
/// `½ c_{2u}` until every word is strictly increasing.
pub fn normal_form_with(ctx: Context, word: &[Token], strategy: Strategy) -> Result<AlgebraElement> {
    let n = ctx.n();
    let mut bw: Vec<u16> = Vec::new();
    let mut cw: SmallVec<[u16; 16]> = SmallVec::from_elem(0, n);
    for t in word {
        match *t {
            Token::B(k) | Token::C(k) if k >= n => {
                return Err(Error::Precondition(format!("generator index {k} out of range for n = {n}")));
            }
            Token::B(k) => bw.push(k as u16),
            Token::C(k) => cw[k] += 1,
        }
    }
    let mut pending: BTreeMap<Word, Rational> = BTreeMap::new();
    pending.insert((bw, cw), Rational::ONE);
    let mut done: Vec<(Monomial, Rational)> = Vec::new();

    while let Some(((w, c), coef)) = pending.pop_first() {
        if c.iter().enumerate().any(|(k, &e)| e > 0 && ctx.in_phi(k)) || coef.is_zero() {
            continue;
        }
        let Some(i) = redex(&w, strategy) else {
            let mask = w.iter().fold(0u64, |m, &k| m | 1 << k);
            done.push((Monomial::from_parts(n, mask, &c), coef));
            continue;
        };
        let (u, v) = (w[i] as usize, w[i + 1] as usize);
        let mut shorter = w.clone();
        shorter.drain(i..i + 2);
        let mut c2 = c.clone();
        c2[(u + v) % n] += 1;
        if u == v {
            add(&mut pending, (shorter, c2), &coef * &Rational::half());
        } else {
            add(&mut pending, (shorter, c2), coef.clone());
            let mut swapped = w;
            swapped.swap(i, i + 1);
            add(&mut pending, (swapped, c), -coef);
        }
    }
    Ok(AlgebraElement::from_terms(ctx, done))
}

fn add(map: &mut BTreeMap<Word, Rational>, k: Word, c: Rational) {
    let e = map.entry(k).or_default();
    *e += &c;
}

pub fn normal_form(ctx: Context, word: &[Token]) -> Result<AlgebraElement> {
    normal_form_with(ctx, word, Strategy::Leftmost)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use Token::*;

    #[test]
    fn examples() {
        let c2 = Context::free(2).unwrap();
        assert_eq!(normal_form(c2, &[B(1), B(0)]).unwrap().to_string(), "c1 - b0*b1");
        let c5 = Context::free(5).unwrap();
        assert_eq!(normal_form(c5, &[B(1), B(1)]).unwrap().to_string(), "1/2*c2");
        let c4 = Context::free(4).unwrap();
        let lhs = normal_form(c4, &[B(0), B(3)]).unwrap().add(&normal_form(c4, &[B(3), B(0)]).unwrap()).unwrap();
        let rhs = normal_form(c4, &[B(1), B(2)]).unwrap().add(&normal_form(c4, &[B(2), B(1)]).unwrap()).unwrap();
        assert!(lhs.sub(&rhs).unwrap().is_zero());
        assert!(normal_form(c4, &[B(4)]).is_err());
    }
}
