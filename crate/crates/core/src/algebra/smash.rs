//! The smash product with the cyclic group, in the basis `m e_α`.
//!
//! `e_α b_γ = b_γ e_{α-γ}` and `e_α c_j = c_j e_{α-j}` give
//! `(m e_α)(m' e_β) = δ_{α - w(m'), β} (m m') e_β` with `w` the weight.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt::{self, Write};

use super::context::Context;
use super::element::AlgebraElement;
use super::monomial::Monomial;
use crate::coeff::Rational;
use crate::error::Result;

#[derive(Clone, PartialEq, Eq)]
pub struct SmashElement {
    ctx: Context,
    terms: BTreeMap<(Monomial, usize), Rational>,
}

fn accumulate(map: &mut BTreeMap<(Monomial, usize), Rational>, k: (Monomial, usize), c: Rational) {
    let e = map.entry(k.clone()).or_default();
    *e += &c;
    if e.is_zero() {
        map.remove(&k);
    }
}

impl SmashElement {
    pub fn zero(ctx: Context) -> Self {
        SmashElement { ctx, terms: BTreeMap::new() }
    }

    /// `a e_α`.
    pub fn with_idempotent(a: &AlgebraElement, alpha: usize) -> Self {
        let ctx = a.context();
        let alpha = alpha % ctx.n();
        SmashElement { ctx, terms: a.terms().map(|(m, c)| ((m.clone(), alpha), c.clone())).collect() }
    }

    pub fn e(ctx: Context, alpha: usize) -> Self {
        Self::with_idempotent(&AlgebraElement::one(ctx), alpha)
    }

    /// `a = a · Σ_α e_α`.
    pub fn from_algebra(a: &AlgebraElement) -> Self {
        let mut out = Self::zero(a.context());
        for alpha in 0..a.context().n() {
            out = out.add(&Self::with_idempotent(a, alpha)).expect("same context");
        }
        out
    }

    pub fn one(ctx: Context) -> Self {
        Self::from_algebra(&AlgebraElement::one(ctx))
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, usize), &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ctx.ensure_same(&other.ctx)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            accumulate(&mut out.terms, k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Rational::from_int(-1)))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero(self.ctx);
        }
        SmashElement { ctx: self.ctx, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ctx.ensure_same(&other.ctx)?;
        let n = self.ctx.n();
        let mut out = BTreeMap::new();
        for ((m1, a), c1) in &self.terms {
            let left = AlgebraElement::from_monomial(self.ctx, m1.clone(), c1.clone());
            for ((m2, b), c2) in &other.terms {
                if (a + n - m2.weight()) % n != *b {
                    continue;
                }
                let right = AlgebraElement::from_monomial(self.ctx, m2.clone(), c2.clone());
                for (m, c) in left.mul(&right)?.terms() {
                    accumulate(&mut out, (m.clone(), *b), c.clone());
                }
            }
        }
        Ok(SmashElement { ctx: self.ctx, terms: out })
    }
}

impl fmt::Display for SmashElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (idx, ((m, alpha), c)) in self.terms.iter().enumerate() {
            match (idx, c.is_negative()) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            let a = c.abs();
            if !a.is_one() {
                let _ = write!(s, "{a}*");
            }
            if m.degree() > 0 {
                m.write_factors(&mut s);
                s.push('*');
            }
            let _ = write!(s, "e{alpha}");
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for SmashElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn examples() {
        let ctx = Context::free(5).unwrap();
        let e = |a| SmashElement::e(ctx, a);
        let b3 = SmashElement::from_algebra(&AlgebraElement::b(ctx, 3));
        assert_eq!(e(1).mul(&b3).unwrap(), SmashElement::with_idempotent(&AlgebraElement::b(ctx, 3), 3));
        assert!(e(0).mul(&e(1)).unwrap().is_zero());
        assert_eq!(SmashElement::one(ctx).mul(&b3).unwrap(), b3);
        assert_eq!(e(2).mul(&b3).unwrap().to_string(), "b3*e4");
    }
}
