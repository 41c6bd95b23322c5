use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::algebra::{Context, Monomial};

/// Monomials of weight `j` with no nonempty sub-monomial of weight zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSet {
    pub context: Context,
    pub j: usize,
    pub generators: Vec<Monomial>,
}

#[derive(Clone, Copy)]
enum Item {
    B(usize),
    C(usize),
}

/// Rotates an `n`-bit residue set by `w`.
fn shift(set: u64, w: usize, n: usize) -> u64 {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    if w == 0 {
        return set;
    }
    ((set << w) | (set >> (n - w))) & mask
}

struct Dfs<'a> {
    n: usize,
    j: usize,
    items: &'a [Item],
    max_degree: Option<u32>,
    out: Vec<Monomial>,
}

impl Dfs<'_> {
    /// `sums` holds the weights of all nonempty sub-multisets chosen so far.
    fn go(&mut self, idx: usize, m: &mut Monomial, sums: u64, weight: usize, degree: u32) {
        if degree > 0 && weight == self.j {
            self.out.push(m.clone());
        }
        for next in idx..self.items.len() {
            let (w, step) = match self.items[next] {
                Item::B(k) => (k, 1),
                Item::C(k) => (k, 2),
            };
            if self.max_degree.is_some_and(|d| degree + step > d) {
                continue;
            }
            let new_sums = sums | shift(sums, w, self.n) | 1 << w;
            if new_sums & 1 == 1 {
                continue;
            }
            let (mut child, stay) = match self.items[next] {
                Item::B(k) => (Monomial::from_parts(self.n, m.bmask() | 1 << k, m.cexp()), next + 1),
                Item::C(k) => {
                    let mut c: Vec<u16> = m.cexp().to_vec();
                    c[k] += 1;
                    (Monomial::from_parts(self.n, m.bmask(), &c), next)
                }
            };
            self.go(stay, &mut child, new_sums, (weight + w) % self.n, degree + step);
        }
    }
}

/// Enumerates the generators of weight `j`, optionally up to a degree bound.
///
/// `b_0` and `c_0` never occur since they have weight zero themselves.
pub fn generators_bj(ctx: &Context, j: usize, max_degree: Option<u32>) -> GeneratorSet {
    let n = ctx.n();
    let j = j % n;
    if j == 0 {
        return GeneratorSet { context: *ctx, j, generators: alloc::vec![Monomial::one(n)] };
    }
    let mut items = Vec::new();
    for k in 1..n {
        items.push(Item::B(k));
        if !ctx.in_phi(k) {
            items.push(Item::C(k));
        }
    }
    let mut dfs = Dfs { n, j, items: &items, max_degree, out: Vec::new() };
    dfs.go(0, &mut Monomial::one(n), 0, 0, 0);
    let mut generators = dfs.out;
    generators.sort_unstable();
    GeneratorSet { context: *ctx, j, generators }
}
