//! A deliberately naive model of the algebra, independent of the crate:
//! words are sorted by adjacent swaps using `b_v b_u = -b_u b_v + c_{u+v}`
//! and `b_u b_u = c_{2u}/2`, with the `c_k` central.

#![allow(dead_code)]

use std::collections::BTreeMap;

pub type Frac = (i64, i64);
pub type Key = (Vec<usize>, Vec<u16>);
pub type Poly = BTreeMap<Key, Frac>;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn norm(f: Frac) -> Frac {
    let g = gcd(f.0, f.1).max(1);
    let s = if f.1 < 0 { -1 } else { 1 };
    (s * f.0 / g, s * f.1 / g)
}

pub fn add(a: Frac, b: Frac) -> Frac {
    norm((a.0 * b.1 + b.0 * a.1, a.1 * b.1))
}

pub fn mulf(a: Frac, b: Frac) -> Frac {
    norm((a.0 * b.0, a.1 * b.1))
}

/// Normal form of `coef * c^cs * b_{bs[0]} b_{bs[1]} ...`.
pub fn sort_word(n: usize, bs: Vec<usize>, cs: Vec<u16>, coef: Frac) -> Poly {
    let mut pending = vec![(bs, cs, coef)];
    let mut out = Poly::new();
    while let Some((bs, cs, c)) = pending.pop() {
        match bs.windows(2).position(|w| w[0] >= w[1]) {
            None => {
                let e = out.entry((bs, cs)).or_insert((0, 1));
                *e = add(*e, c);
            }
            Some(p) => {
                let (v, u) = (bs[p], bs[p + 1]);
                let mut rest = bs[..p].to_vec();
                rest.extend_from_slice(&bs[p + 2..]);
                let mut cs2 = cs.clone();
                cs2[(u + v) % n] += 1;
                if u == v {
                    pending.push((rest, cs2, mulf(c, (1, 2))));
                } else {
                    let mut swapped = bs.clone();
                    swapped.swap(p, p + 1);
                    pending.push((swapped, cs.clone(), (-c.0, c.1)));
                    pending.push((rest, cs2, c));
                }
            }
        }
    }
    out.retain(|_, c| c.0 != 0);
    out
}

pub fn poly_add(a: &Poly, b: &Poly, sign: i64) -> Poly {
    let mut out = a.clone();
    for (k, c) in b {
        let e = out.entry(k.clone()).or_insert((0, 1));
        *e = add(*e, (sign * c.0, c.1));
    }
    out.retain(|_, c| c.0 != 0);
    out
}

pub fn poly_mul(n: usize, a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for ((ab, ac), x) in a {
        for ((bb, bc), y) in b {
            let mut bs = ab.clone();
            bs.extend_from_slice(bb);
            let cs: Vec<u16> = ac.iter().zip(bc).map(|(p, q)| p + q).collect();
            out = poly_add(&out, &sort_word(n, bs, cs, mulf(*x, *y)), 1);
        }
    }
    out
}

/// Sets `c_k = 0` for `k` in `phi`.
pub fn reduce(p: &Poly, phi: &[usize]) -> Poly {
    p.iter().filter(|((_, cs), _)| phi.iter().all(|&k| cs[k] == 0)).map(|(k, c)| (k.clone(), *c)).collect()
}

pub fn degree(p: &Poly) -> Option<usize> {
    p.keys().map(|(bs, cs)| bs.len() + 2 * cs.iter().map(|&e| e as usize).sum::<usize>()).max()
}

/// Parses sums of products such as `c0*b1*b4 - 1/2*c0^2*b4`.
pub fn parse(n: usize, src: &str) -> Poly {
    let spaced = src.replace(" - ", " + -");
    let mut out = Poly::new();
    for term in spaced.split(" + ") {
        let mut coef: Frac = (1, 1);
        let mut bs = Vec::new();
        let mut cs = vec![0u16; n];
        let term = match term.trim().strip_prefix('-') {
            Some(t) => {
                coef = (-1, 1);
                t
            }
            None => term.trim(),
        };
        for f in term.split('*') {
            if let Some(idx) = f.strip_prefix('b') {
                bs.push(idx.parse::<usize>().unwrap());
            } else if let Some(rest) = f.strip_prefix('c') {
                let (k, e) = rest.split_once('^').unwrap_or((rest, "1"));
                cs[k.parse::<usize>().unwrap()] += e.parse::<u16>().unwrap();
            } else {
                let (p, q) = f.split_once('/').unwrap_or((f, "1"));
                coef = mulf(coef, (p.parse().unwrap(), q.parse().unwrap()));
            }
        }
        out = poly_add(&out, &sort_word(n, bs, cs, coef), 1);
    }
    out
}
