//! PBW bases of graded pieces.

use alloc::vec::Vec;

use super::context::Context;
use super::monomial::Monomial;

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// Coefficient of `t^r` in `(1+t)^n / (1-t^2)^m`, `m` the number of surviving `c`'s.
pub fn basis_count(ctx: &Context, r: u32) -> u128 {
    let n = ctx.n() as u128;
    let m = ctx.free_c_count() as u128;
    let r = r as u128;
    let mut total: u128 = 0;
    let mut s = r % 2;
    while s <= r.min(n) {
        let h = (r - s) / 2;
        let multisets = if m == 0 { u128::from(h == 0) } else { binom(h + m - 1, m - 1) };
        total = total.saturating_add(binom(n, s).saturating_mul(multisets));
        s += 2;
    }
    total
}

fn for_each_subset(n: usize, size: usize, f: &mut impl FnMut(u64)) {
    fn go(start: usize, n: usize, left: usize, acc: u64, f: &mut impl FnMut(u64)) {
        if left == 0 {
            f(acc);
            return;
        }
        for k in start..=n - left {
            go(k + 1, n, left - 1, acc | 1 << k, f);
        }
    }
    go(0, n, size, 0, f);
}

fn for_each_multiset(allowed: &[usize], degree: usize, exps: &mut Vec<u16>, f: &mut impl FnMut(&[u16])) {
    fn go(allowed: &[usize], idx: usize, left: usize, exps: &mut Vec<u16>, f: &mut impl FnMut(&[u16])) {
        if left == 0 {
            f(exps);
            return;
        }
        if idx == allowed.len() {
            return;
        }
        let k = allowed[idx];
        for e in (0..=left).rev() {
            exps[k] = e as u16;
            go(allowed, idx + 1, left - e, exps, f);
        }
        exps[k] = 0;
    }
    go(allowed, 0, degree, exps, f);
}

/// Visits every monomial of degree `r` that survives in `ctx`, in no particular order.
pub fn for_each_monomial(ctx: &Context, r: u32, mut f: impl FnMut(Monomial)) {
    let n = ctx.n();
    let allowed: Vec<usize> = (0..n).filter(|&k| !ctx.in_phi(k)).collect();
    let r = r as usize;
    let mut exps = alloc::vec![0u16; n];
    let mut s = r % 2;
    while s <= r.min(n) {
        let h = (r - s) / 2;
        for_each_subset(n, s, &mut |mask| {
            for_each_multiset(&allowed, h, &mut exps, &mut |c| f(Monomial::from_parts(n, mask, c)));
        });
        s += 2;
    }
}

/// All monomials of degree `r` in canonical order.
pub fn basis_enumerate(ctx: &Context, r: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for_each_monomial(ctx, r, |m| out.push(m));
    out.sort_unstable();
    out
}

/// Monomials of degree `r`, split by weight, each list in canonical order.
pub fn basis_by_weight(ctx: &Context, r: u32) -> Vec<Vec<Monomial>> {
    let mut out = alloc::vec![Vec::new(); ctx.n()];
    for_each_monomial(ctx, r, |m| out[m.weight()].push(m));
    for v in &mut out {
        v.sort_unstable();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let c3 = Context::free(3).unwrap();
        assert_eq!(basis_enumerate(&c3, 2).len(), 6);
        assert_eq!(basis_count(&c3, 2), 6);
        let c6 = Context::new(6, [1, 2, 4, 5]).unwrap();
        assert_eq!(basis_count(&c6, 2), 17);
        assert_eq!(basis_enumerate(&c6, 2).len(), 17);
        for n in 1..=6 {
            let ctx = Context::free(n).unwrap();
            for r in 0..=10u32 {
                let expect = binom((n as u128) + r as u128 - 1, n as u128 - 1);
                assert_eq!(basis_count(&ctx, r), expect);
                assert_eq!(basis_enumerate(&ctx, r).len() as u128, expect);
            }
        }
        let full = Context::new(3, 0..3).unwrap();
        assert_eq!(basis_count(&full, 4), 0);
        assert_eq!(basis_count(&full, 3), 1);
    }
}
