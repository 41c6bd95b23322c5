use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::context::Context;
use super::monomial::Monomial;
use crate::coeff::Rational;
use crate::error::{Error, Result};

/// An element of the (quotient) ring, as a sparse combination of PBW monomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    ctx: Context,
    terms: BTreeMap<Monomial, Rational>,
}

/// Calls `out` with each term of `m * b_g`, scaled by `coef`, dropping terms
/// that vanish in `ctx`.
///
/// With `G` the indices of `m` above `g`, moving `b_g` left past `b_k` for
/// `k ∈ G` emits `±c_{k+g}` without `b_k`, and the final term is either `b_g`
/// inserted in place or `½ c_{2g}` when `b_g` already divides `m`.
pub(crate) fn mul_monomial_b(
    ctx: &Context,
    m: &Monomial,
    g: usize,
    coef: &Rational,
    mut out: impl FnMut(Monomial, Rational),
) {
    let n = ctx.n();
    let mask = m.bmask();
    let above = if g == 63 { 0 } else { mask & !((2u64 << g) - 1) };
    let count = above.count_ones();
    let mut rest = above;
    let mut idx = 0u32;
    while rest != 0 {
        let k = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        idx += 1;
        let target = (k + g) % n;
        if ctx.in_phi(target) {
            continue;
        }
        let mut t = m.clone();
        t.set_bmask(mask & !(1 << k));
        t.bump_c(target, 1);
        let c = if (count - idx).is_multiple_of(2) { coef.clone() } else { -coef };
        out(t, c);
    }
    let sign_even = count % 2 == 0;
    if mask >> g & 1 == 1 {
        let target = (2 * g) % n;
        if ctx.in_phi(target) {
            return;
        }
        let mut t = m.clone();
        t.set_bmask(mask & !(1 << g));
        t.bump_c(target, 1);
        let h = coef * &Rational::half();
        out(t, if sign_even { h } else { -h });
    } else {
        let mut t = m.clone();
        t.set_bmask(mask | 1 << g);
        out(t, if sign_even { coef.clone() } else { -coef });
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    use alloc::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl AlgebraElement {
    pub fn zero(ctx: Context) -> Self {
        AlgebraElement { ctx, terms: BTreeMap::new() }
    }

    pub fn one(ctx: Context) -> Self {
        Self::scalar(ctx, Rational::ONE)
    }

    pub fn scalar(ctx: Context, c: Rational) -> Self {
        Self::from_monomial(ctx, Monomial::one(ctx.n()), c)
    }

    /// `c * m`, or zero when `m` vanishes in the context.
    pub fn from_monomial(ctx: Context, m: Monomial, c: Rational) -> Self {
        let mut e = Self::zero(ctx);
        if !m.touches(ctx.phi_mask()) && !c.is_zero() {
            e.terms.insert(m, c);
        }
        e
    }

    pub fn b(ctx: Context, k: usize) -> Self {
        Self::from_monomial(ctx, Monomial::b(ctx.n(), k), Rational::ONE)
    }

    pub fn c(ctx: Context, k: usize) -> Self {
        Self::from_monomial(ctx, Monomial::c(ctx.n(), k, 1), Rational::ONE)
    }

    pub fn from_terms(ctx: Context, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            if m.n() != ctx.n() || m.touches(ctx.phi_mask()) {
                continue;
            }
            accumulate(&mut map, m, c);
        }
        AlgebraElement { ctx, terms: map }
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Number of terms.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(d)` when all terms have degree `d`; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// `Some(w)` when every term has weight `w`.
    pub fn weight(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.weight());
        let w = it.next()?;
        it.all(|e| e == w).then_some(w)
    }

    /// Moves the element into another context with the same `n`, killing
    /// terms that vanish there.
    pub fn reduce_to(&self, ctx: Context) -> Result<Self> {
        if ctx.n() != self.ctx.n() {
            return Err(Error::Context(format!("cannot move n={} element to {ctx}", self.ctx.n())));
        }
        Ok(Self::from_terms(ctx, self.terms.iter().map(|(m, c)| (m.clone(), c.clone()))))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ctx.ensure_same(&other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            accumulate(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from_int(-1))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero(self.ctx);
        }
        AlgebraElement { ctx: self.ctx, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    /// `self * b_g`.
    pub fn mul_b(&self, g: usize) -> Self {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            mul_monomial_b(&self.ctx, m, g % self.ctx.n(), c, |t, k| accumulate(&mut out, t, k));
        }
        AlgebraElement { ctx: self.ctx, terms: out }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ctx.ensure_same(&other.ctx)?;
        let mut total = BTreeMap::new();
        for (m2, c2) in &other.terms {
            let mut cur = self.clone();
            for g in m2.b_indices() {
                cur = cur.mul_b(g);
            }
            for (m, c) in cur.terms {
                let t = m.times_central(m2);
                if !t.touches(self.ctx.phi_mask()) {
                    accumulate(&mut total, t, &c * c2);
                }
            }
        }
        Ok(AlgebraElement { ctx: self.ctx, terms: total })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.ctx);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `uv - vu`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `uv + vu`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    /// `uv - (-1)^{deg u deg v} vu` for homogeneous `u`, `v`.
    pub fn graded_commutator(&self, other: &Self) -> Result<Self> {
        self.ctx.ensure_same(&other.ctx)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ctx));
        }
        let (Some(du), Some(dv)) = (self.degree(), other.degree()) else {
            return Err(Error::Precondition(String::from("graded commutator needs homogeneous operands")));
        };
        if du * dv % 2 == 1 {
            self.anticommutator(other)
        } else {
            self.commutator(other)
        }
    }

    /// Terms of the given weight.
    pub fn weight_component(&self, w: usize) -> Self {
        AlgebraElement {
            ctx: self.ctx,
            terms: self.terms.iter().filter(|(m, _)| m.weight() == w).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn map_monomials(&self, ctx: Context, f: impl Fn(&Monomial) -> AlgebraElement) -> Result<Self> {
        let mut out = Self::zero(ctx);
        for (m, c) in &self.terms {
            out = out.add(&f(m).scale(c))?;
        }
        Ok(out)
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            let a = c.abs();
            if m.degree() == 0 {
                s.push_str(&a.to_string());
                continue;
            }
            if !a.is_one() {
                s.push_str(&a.to_string());
                s.push('*');
            }
            m.write_factors(&mut s);
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.ctx, self)
    }
}

#[derive(Serialize, Deserialize)]
struct ElementWire {
    n: usize,
    phi: Vec<usize>,
    element: String,
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        ElementWire { n: self.ctx.n(), phi: self.ctx.phi(), element: self.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let w = ElementWire::deserialize(d)?;
        let ctx = Context::new(w.n, w.phi).map_err(serde::de::Error::custom)?;
        super::parse::parse_element(ctx, &w.element, &|_| None).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_products() {
        let ctx = Context::free(2).unwrap();
        let b0 = AlgebraElement::b(ctx, 0);
        let b1 = AlgebraElement::b(ctx, 1);
        assert_eq!(b1.mul(&b0).unwrap().to_string(), "c1 - b0*b1");
        assert_eq!(b0.anticommutator(&b1).unwrap(), AlgebraElement::c(ctx, 1));
        assert_eq!(b1.mul(&b1).unwrap().to_string(), "1/2*c0");
    }

    #[test]
    fn quotient_kills_terms() {
        let ctx = Context::new(6, 1..6).unwrap();
        let u = AlgebraElement::b(ctx, 3).mul(&AlgebraElement::b(ctx, 5)).unwrap();
        let v =
            AlgebraElement::b(ctx, 1).mul(&AlgebraElement::b(ctx, 3)).unwrap().mul(&AlgebraElement::b(ctx, 4)).unwrap();
        let g = u.graded_commutator(&v).unwrap();
        assert_eq!(g.to_string(), "c0*b1*b4*b5 + 1/2*c0^2*b4");
        assert_eq!(u.anticommutator(&v).unwrap().to_string(), "1/2*c0^2*b4");
    }
}
