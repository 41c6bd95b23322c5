//! Ring homomorphisms determined by index maps: `f_λ`, `π_{n,m}` and `θ_{m,n}`.

use alloc::format;
use alloc::vec::Vec;

use super::context::Context;
use super::element::AlgebraElement;
use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::number_theory::arith::gcd;

/// Sends `b_i -> b_{bi(i)}` and `c_j -> c_{ci(j)}` into `target`.
fn map_hom(
    a: &AlgebraElement,
    target: Context,
    bi: impl Fn(usize) -> usize,
    ci: impl Fn(usize) -> usize,
) -> Result<AlgebraElement> {
    let tn = target.n();
    let mut out = AlgebraElement::zero(target);
    for (m, coef) in a.terms() {
        let mut cexp: Vec<u16> = alloc::vec![0; tn];
        for (k, &e) in m.cexp().iter().enumerate() {
            cexp[ci(k) % tn] += e;
        }
        let mut img = AlgebraElement::from_monomial(target, Monomial::from_parts(tn, 0, &cexp), coef.clone());
        for k in m.b_indices() {
            img = img.mul_b(bi(k) % tn);
        }
        out = out.add(&img)?;
    }
    Ok(out)
}

/// The automorphism `b_i -> b_{λi}`.
pub fn apply_f_lambda(a: &AlgebraElement, lambda: usize) -> Result<AlgebraElement> {
    let ctx = a.context();
    let n = ctx.n();
    if gcd(lambda as u64, n as u64) != 1 {
        return Err(Error::Precondition(format!("lambda = {lambda} is not a unit mod {n}")));
    }
    if ctx.phi().iter().any(|&k| !ctx.in_phi(k * lambda % n)) {
        return Err(Error::Context(format!("multiplication by {lambda} does not preserve phi in {ctx}")));
    }
    map_hom(a, ctx, |i| i * lambda % n, |j| j * lambda % n)
}

/// Reduction of indices modulo a divisor `m`; the target quotient is the image of `Φ`.
pub fn project_pi(a: &AlgebraElement, m: usize) -> Result<AlgebraElement> {
    let ctx = a.context();
    let n = ctx.n();
    if m == 0 || !n.is_multiple_of(m) {
        return Err(Error::Precondition(format!("{m} does not divide {n}")));
    }
    let target = Context::new(m, ctx.phi().into_iter().map(|k| k % m))?;
    map_hom(a, target, |i| i % m, |j| j % m)
}

/// `b̃_i -> b_{qi}` from `n = m` into `target` with `target.n() = q m`.
pub fn lift_theta(a: &AlgebraElement, target: Context) -> Result<AlgebraElement> {
    let m = a.context().n();
    let n = target.n();
    if !n.is_multiple_of(m) {
        return Err(Error::Precondition(format!("{m} does not divide {n}")));
    }
    let q = n / m;
    if a.context().phi().iter().any(|&k| !target.in_phi(q * k)) {
        return Err(Error::Context(format!("the image of phi is not killed in {target}")));
    }
    map_hom(a, target, |i| q * i, |j| q * j)
}

/// `lift_theta` into the quotient by the image of `Φ`.
pub fn lift_theta_to(a: &AlgebraElement, n: usize) -> Result<AlgebraElement> {
    let m = a.context().n();
    if !n.is_multiple_of(m) {
        return Err(Error::Precondition(format!("{m} does not divide {n}")));
    }
    let target = Context::new(n, a.context().phi().into_iter().map(|k| k * (n / m)))?;
    lift_theta(a, target)
}
