//! Integer arithmetic on `u64`: gcd, primality, factorization, minimal odd prime.

use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_power_of_two(n: u64) -> bool {
    n != 0 && n & (n - 1) == 0
}

/// Splits `n > 0` as `2^a * m` with `m` odd.
pub fn split_two(n: u64) -> (u32, u64) {
    let a = n.trailing_zeros();
    (a, n >> a)
}

/// `k mod n`, with `n > 0`, for signed `k`.
pub fn residue(k: i128, n: u64) -> u64 {
    k.rem_euclid(n as i128) as u64
}

pub fn is_unit(k: u64, n: u64) -> bool {
    gcd(k % n, n) == 1
}

/// Inverse of `k` modulo `n`, when it exists.
pub fn inverse_mod(k: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (n as i128, (k % n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| residue(t0, n))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (s, d) = split_two(n - 1);
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    // Brent's variant; `n` is odd, composite and has no factor below the trial bound.
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Prime factorization of `n >= 1` as ascending `(prime, exponent)` pairs.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factor(0) is undefined");
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p < 1000 && p * p <= n {
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    factor_into(n, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((r, e)) if *r == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = alloc::vec![1u64];
    for (p, e) in factor(n) {
        let len = ds.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

/// Minimal odd prime factor of `n`; `Infinity` when `n` is a power of two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Mop {
    Prime(u64),
    Infinity,
}

impl Mop {
    pub fn prime(self) -> Option<u64> {
        match self {
            Mop::Prime(p) => Some(p),
            Mop::Infinity => None,
        }
    }
}

impl fmt::Display for Mop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mop::Prime(p) => write!(f, "{p}"),
            Mop::Infinity => f.write_str("inf"),
        }
    }
}

pub fn mop(n: u64) -> Mop {
    let (_, odd) = split_two(n);
    if odd == 1 {
        Mop::Infinity
    } else {
        Mop::Prime(factor(odd)[0].0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_prime(n: u64) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000 {
            assert_eq!(is_prime(n), naive_prime(n), "n = {n}");
        }
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(3215031751));
    }

    #[test]
    fn factorization_roundtrips() {
        for n in 1..3000u64 {
            let f = factor(n);
            assert_eq!(f.iter().map(|&(p, e)| p.pow(e)).product::<u64>(), n);
            assert!(f.iter().all(|&(p, _)| naive_prime(p)));
        }
        let big = 1_000_000_007u64 * 998_244_353;
        assert_eq!(factor(big), alloc::vec![(998_244_353, 1), (1_000_000_007, 1)]);
    }

    #[test]
    fn mop_examples() {
        assert_eq!(mop(6), Mop::Prime(3));
        assert_eq!(mop(77), Mop::Prime(7));
        assert_eq!(mop(8), Mop::Infinity);
        assert!(Mop::Prime(1 << 40) < Mop::Infinity);
    }

    #[test]
    fn inverses() {
        for n in 2..60u64 {
            for k in 0..n {
                match inverse_mod(k, n) {
                    Some(v) => assert_eq!(k * v % n, 1),
                    None => assert_ne!(gcd(k, n), 1),
                }
            }
        }
    }
}
