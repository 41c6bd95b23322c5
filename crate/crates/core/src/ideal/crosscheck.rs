//! Brute-force comparison of `e_j (A#C_n) ∩ (e_0)` with `B_j A`.
//!
//! The two-sided ideal is spanned degree by degree by the products
//! `u e_0 v` over basis elements `u = m e_α`, `v = m' e_β`. Since `e_j` is
//! idempotent, the intersection equals `e_j (e_0)`, and `m e_{j - w(m)}` is
//! identified with `m`. The spans are compared with a separate elimination,
//! not the block echelon code.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::echelon::{EchelonBasis, EchelonOptions};
use crate::algebra::{basis_enumerate, AlgebraElement, Context, Monomial, SmashElement};
use crate::coeff::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckDegree {
    pub j: usize,
    pub r: u32,
    pub smash_rank: usize,
    pub echelon_rank: u128,
    /// Every smash-side vector reduces to zero against the echelon rows.
    pub contained: bool,
}

impl CrosscheckDegree {
    pub fn agrees(&self) -> bool {
        self.contained && self.smash_rank as u128 == self.echelon_rank
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub n: usize,
    pub max_degree: u32,
    pub degrees: Vec<CrosscheckDegree>,
}

impl CrosscheckReport {
    pub fn agrees(&self) -> bool {
        self.degrees.iter().all(CrosscheckDegree::agrees)
    }
}

/// Plain leading-term elimination over the canonical monomial order.
#[derive(Default)]
struct Span {
    rows: BTreeMap<Monomial, BTreeMap<Monomial, Rational>>,
}

impl Span {
    fn insert(&mut self, mut v: BTreeMap<Monomial, Rational>) {
        while let Some((lead, c)) = v.iter().next().map(|(m, c)| (m.clone(), c.clone())) {
            let Some(row) = self.rows.get(&lead) else {
                let inv = c.recip().expect("nonzero");
                for x in v.values_mut() {
                    *x = &*x * &inv;
                }
                self.rows.insert(lead, v);
                return;
            };
            for (m, x) in row {
                let e = v.entry(m.clone()).or_default();
                *e -= &(x * &c);
                if e.is_zero() {
                    v.remove(m);
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

pub fn smash_crosscheck(n: usize, d: u32) -> Result<CrosscheckReport> {
    if n > 4 || d > 6 {
        return Err(Error::Precondition(format!("crosscheck is limited to n <= 4 and d <= 6, got n = {n}, d = {d}")));
    }
    let ctx = Context::free(n)?;
    let by_degree: Vec<Vec<Monomial>> = (0..=d).map(|r| basis_enumerate(&ctx, r)).collect();
    let e0 = SmashElement::e(ctx, 0);
    let mut degrees = Vec::new();
    for j in 1..n {
        let ej = SmashElement::e(ctx, j);
        let echelon = EchelonBasis::build(ctx, j, d, EchelonOptions::default())?;
        for r in 0..=d {
            let mut span = Span::default();
            let mut vectors = Vec::new();
            for a in 0..=r {
                for m in &by_degree[a as usize] {
                    for m2 in &by_degree[(r - a) as usize] {
                        for alpha in 0..n {
                            let u = SmashElement::with_idempotent(
                                &AlgebraElement::from_monomial(ctx, m.clone(), Rational::ONE),
                                alpha,
                            );
                            let left = ej.mul(&u)?.mul(&e0)?;
                            if left.is_zero() {
                                continue;
                            }
                            for beta in 0..n {
                                let v = SmashElement::with_idempotent(
                                    &AlgebraElement::from_monomial(ctx, m2.clone(), Rational::ONE),
                                    beta,
                                );
                                let x = left.mul(&v)?;
                                if x.is_zero() {
                                    continue;
                                }
                                let mut vec = BTreeMap::new();
                                for ((mono, idem), c) in x.terms() {
                                    if (idem + mono.weight()) % n != j {
                                        return Err(Error::Precondition(format!("{x} is not in e_{j}(A#C_n)")));
                                    }
                                    vec.insert(mono.clone(), c.clone());
                                }
                                vectors.push(AlgebraElement::from_terms(ctx, vec.clone()));
                                span.insert(vec);
                            }
                        }
                    }
                }
            }
            let mut contained = true;
            for v in &vectors {
                contained &= echelon.contains(v)?;
            }
            degrees.push(CrosscheckDegree {
                j,
                r,
                smash_rank: span.rank(),
                echelon_rank: echelon.rank(r).expect("built"),
                contained,
            });
        }
    }
    Ok(CrosscheckReport { n, max_degree: d, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_small() {
        let r = smash_crosscheck(2, 3).unwrap();
        assert!(r.agrees(), "{r:?}");
        assert!(r.degrees.iter().filter(|x| x.r == 0).all(|x| x.smash_rank == 0 && x.echelon_rank == 0));
    }
}
