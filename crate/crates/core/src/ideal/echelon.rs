//! Degree-by-degree reduced row echelon forms of the right ideal `B_j A`.
//!
//! Every monomial has a weight in `Z_n` and right multiplication by `b_γ`
//! shifts it by `γ`, so each degree splits into `n` independent blocks. Block
//! `(r, w)` is spanned by the rows of the blocks `(r - 1, w - γ)` times `b_γ`,
//! plus, in degree `r`, whatever seeds the ideal. Each block keeps the unique
//! RREF (pivot = first column in canonical order), so results do not depend on
//! insertion order or thread count.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use hashbrown::HashMap;
use serde::{Deserialize, Serialize};

use super::generators::generators_bj;
use crate::algebra::basis::{basis_by_weight, basis_count};
use crate::algebra::element::mul_monomial_b;
use crate::algebra::{AlgebraElement, Context, Monomial};
use crate::coeff::Rational;
use crate::error::{Error, Result};

/// Default cap on the dimension of a single degree.
pub const DEFAULT_LIMIT: u128 = 2_000_000;

/// How the ideal is seeded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Seeding {
    /// The weight-`j` block of every positive degree is taken whole, since
    /// every monomial of weight `j` lies in the ideal.
    #[default]
    Isotypic,
    /// Only the enumerated generators are added; used to cross-check.
    Generators,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EchelonOptions {
    pub limit: u128,
    pub seeding: Seeding,
}

impl Default for EchelonOptions {
    fn default() -> Self {
        EchelonOptions { limit: DEFAULT_LIMIT, seeding: Seeding::Isotypic }
    }
}

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Row {
    pivot: u32,
    /// Entries on non-pivot columns, sorted by column.
    tail: Vec<(u32, Rational)>,
}

/// One weight block of one degree.
#[derive(Clone, Debug)]
pub struct Block {
    columns: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
    pivot_row: Vec<u32>,
    rows: Vec<Row>,
    col_users: Vec<Vec<u32>>,
    full: bool,
}

impl Block {
    fn new(columns: Vec<Monomial>) -> Self {
        let dim = columns.len();
        let index = columns.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        Block {
            columns,
            index,
            pivot_row: alloc::vec![NONE; dim],
            rows: Vec::new(),
            col_users: alloc::vec![Vec::new(); dim],
            full: dim == 0,
        }
    }

    fn make_full(&mut self) {
        self.full = true;
        self.rows = Vec::new();
        self.col_users = Vec::new();
        self.pivot_row = Vec::new();
        self.index = HashMap::new();
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn rank(&self) -> usize {
        if self.full {
            self.columns.len()
        } else {
            self.rows.len()
        }
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    /// `v` minus its projection onto the row space, as a sparse vector.
    fn reduce(&self, v: &HashMap<u32, Rational>) -> BTreeMap<u32, Rational> {
        let mut acc: BTreeMap<u32, Rational> = BTreeMap::new();
        for (&c, x) in v {
            if x.is_zero() {
                continue;
            }
            let r = self.pivot_row[c as usize];
            if r == NONE {
                *acc.entry(c).or_default() += x;
            } else {
                for (t, y) in &self.rows[r as usize].tail {
                    *acc.entry(*t).or_default() -= &(x * y);
                }
            }
        }
        acc.retain(|_, x| !x.is_zero());
        acc
    }

    /// Adds `v` to the span; returns `true` when the rank grew.
    fn insert(&mut self, v: &HashMap<u32, Rational>) -> bool {
        if self.full {
            return false;
        }
        let red = self.reduce(v);
        let Some((&lead, lead_coef)) = red.iter().next() else {
            return false;
        };
        let inv = lead_coef.recip().expect("nonzero");
        let tail: Vec<(u32, Rational)> = red.iter().skip(1).map(|(c, x)| (*c, x * &inv)).collect();

        // Clear the new pivot column from existing rows.
        let users = core::mem::take(&mut self.col_users[lead as usize]);
        for rid in users {
            let row = &mut self.rows[rid as usize];
            let Ok(pos) = row.tail.binary_search_by_key(&lead, |e| e.0) else {
                continue;
            };
            let a = row.tail.remove(pos).1;
            let old = core::mem::take(&mut row.tail);
            let mut merged = Vec::with_capacity(old.len() + tail.len());
            let (mut i, mut k) = (0, 0);
            while i < old.len() || k < tail.len() {
                let take_old = k == tail.len() || (i < old.len() && old[i].0 < tail[k].0);
                let take_new = i == old.len() || (k < tail.len() && tail[k].0 < old[i].0);
                if take_old {
                    merged.push(old[i].clone());
                    i += 1;
                } else if take_new {
                    let c = tail[k].0;
                    merged.push((c, -(&a * &tail[k].1)));
                    self.col_users[c as usize].push(rid);
                    k += 1;
                } else {
                    let x = &old[i].1 - &(&a * &tail[k].1);
                    if !x.is_zero() {
                        merged.push((old[i].0, x));
                    }
                    i += 1;
                    k += 1;
                }
            }
            self.rows[rid as usize].tail = merged;
        }
        let rid = self.rows.len() as u32;
        for (c, _) in &tail {
            self.col_users[*c as usize].push(rid);
        }
        self.pivot_row[lead as usize] = rid;
        self.rows.push(Row { pivot: lead, tail });
        if self.rows.len() == self.columns.len() {
            self.make_full();
        }
        true
    }

    /// Rows as `(pivot column, tail)` pairs sorted by pivot.
    fn sorted_rows(&self) -> Vec<(u32, Vec<(u32, Rational)>)> {
        if self.full {
            return (0..self.columns.len() as u32).map(|c| (c, Vec::new())).collect();
        }
        let mut v: Vec<_> = self.rows.iter().map(|r| (r.pivot, r.tail.clone())).collect();
        v.sort_unstable_by_key(|r| r.0);
        v
    }

    fn to_vector(&self, a: &AlgebraElement) -> Option<HashMap<u32, Rational>> {
        let mut v = HashMap::new();
        for (m, c) in a.terms() {
            v.insert(*self.index.get(m)?, c.clone());
        }
        Some(v)
    }
}

/// The blocks of one degree.
#[derive(Clone, Debug)]
pub struct DegreeData {
    pub r: u32,
    pub ambient: u128,
    /// Empty when `saturated`.
    pub blocks: Vec<Block>,
    /// The whole degree lies in the ideal, so every later degree does too.
    pub saturated: bool,
}

impl DegreeData {
    pub fn rank(&self) -> u128 {
        if self.saturated {
            self.ambient
        } else {
            self.blocks.iter().map(|b| b.rank() as u128).sum()
        }
    }

    pub fn quotient_dim(&self) -> u128 {
        self.ambient - self.rank()
    }
}

/// Work item for one block of a new degree.
pub struct BlockTask {
    pub r: u32,
    pub w: usize,
    pub columns: Vec<Monomial>,
}

/// Computes a batch of blocks; lets callers supply parallelism.
pub trait BlockRunner {
    fn run(&self, basis: &EchelonBasis, tasks: Vec<BlockTask>) -> Vec<Block>;
}

pub struct Sequential;

impl BlockRunner for Sequential {
    fn run(&self, basis: &EchelonBasis, tasks: Vec<BlockTask>) -> Vec<Block> {
        tasks.into_iter().map(|t| basis.compute_block(t)).collect()
    }
}

/// Truncated RREF data for `B_j A` in a fixed context.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    ctx: Context,
    j: usize,
    opts: EchelonOptions,
    generators: Vec<Monomial>,
    degrees: Vec<DegreeData>,
}

impl EchelonBasis {
    pub fn new(ctx: Context, j: usize, opts: EchelonOptions) -> Self {
        let n = ctx.n();
        let j = j % n;
        let generators = match opts.seeding {
            Seeding::Generators => generators_bj(&ctx, j, None).generators,
            Seeding::Isotypic => Vec::new(),
        };
        let mut b0 = Block::new(alloc::vec![Monomial::one(n)]);
        let mut blocks: Vec<Block> = (0..n).map(|_| Block::new(Vec::new())).collect();
        if j == 0 {
            b0.make_full();
        }
        blocks[0] = b0;
        let deg0 = DegreeData { r: 0, ambient: 1, blocks, saturated: j == 0 };
        EchelonBasis { ctx, j, opts, generators, degrees: alloc::vec![deg0] }
    }

    pub fn build(ctx: Context, j: usize, d: u32, opts: EchelonOptions) -> Result<Self> {
        let mut e = Self::new(ctx, j, opts);
        e.extend_to(d)?;
        Ok(e)
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.len() as u32 - 1
    }

    pub fn degree(&self, r: u32) -> Option<&DegreeData> {
        self.degrees.get(r as usize)
    }

    pub fn extend_to(&mut self, d: u32) -> Result<()> {
        self.extend_to_with(d, &Sequential)
    }

    pub fn extend_to_with(&mut self, d: u32, runner: &dyn BlockRunner) -> Result<()> {
        while self.max_degree() < d {
            let r = self.max_degree() + 1;
            let ambient = basis_count(&self.ctx, r);
            if self.degrees[r as usize - 1].saturated {
                self.degrees.push(DegreeData { r, ambient, blocks: Vec::new(), saturated: true });
                continue;
            }
            if ambient > self.opts.limit {
                return Err(Error::Guardrail { degree: r, dimension: ambient, limit: self.opts.limit });
            }
            let tasks: Vec<BlockTask> = basis_by_weight(&self.ctx, r)
                .into_iter()
                .enumerate()
                .map(|(w, columns)| BlockTask { r, w, columns })
                .collect();
            let blocks = runner.run(self, tasks);
            let saturated = blocks.iter().all(|b| b.full);
            let blocks = if saturated { Vec::new() } else { blocks };
            self.degrees.push(DegreeData { r, ambient, blocks, saturated });
        }
        Ok(())
    }

    /// Builds block `(t.r, t.w)` from degree `t.r - 1`, which must be present.
    pub fn compute_block(&self, t: BlockTask) -> Block {
        let n = self.ctx.n();
        let mut block = Block::new(t.columns);
        if block.full {
            return block;
        }
        if t.w == self.j && self.opts.seeding == Seeding::Isotypic {
            block.make_full();
            return block;
        }
        if t.w == self.j {
            for g in self.generators.iter().filter(|g| g.degree() == t.r) {
                let mut v = HashMap::new();
                v.insert(block.index[g], Rational::ONE);
                block.insert(&v);
            }
        }
        let prev = &self.degrees[t.r as usize - 1];
        let index = core::mem::take(&mut block.index);
        for gamma in 0..n {
            if block.full {
                break;
            }
            let src = &prev.blocks[(t.w + n - gamma) % n];
            if src.rank() == 0 {
                continue;
            }
            let product = |col: u32| -> Vec<(u32, Rational)> {
                let mut out = Vec::new();
                mul_monomial_b(&self.ctx, &src.columns[col as usize], gamma, &Rational::ONE, |m, c| {
                    out.push((index[&m], c));
                });
                out
            };
            // Tail columns recur across many rows; pivot columns occur once.
            let mut cache: HashMap<u32, Vec<(u32, Rational)>> = HashMap::new();
            for (pivot, tail) in src.sorted_rows() {
                if block.full {
                    break;
                }
                let mut v: HashMap<u32, Rational> = HashMap::new();
                for (c, x) in product(pivot) {
                    *v.entry(c).or_default() += &x;
                }
                for (col, y) in &tail {
                    let p = cache.entry(*col).or_insert_with(|| product(*col));
                    for (c, x) in p.iter() {
                        *v.entry(*c).or_default() += &(x * y);
                    }
                }
                block.insert(&v);
            }
        }
        if !block.full {
            block.index = index;
        }
        block
    }

    fn degree_checked(&self, r: u32) -> Result<&DegreeData> {
        self.degrees
            .get(r as usize)
            .ok_or_else(|| Error::Precondition(format!("degree {r} exceeds the computed bound {}", self.max_degree())))
    }

    pub fn rank(&self, r: u32) -> Option<u128> {
        self.degree(r).map(|d| d.rank())
    }

    pub fn ambient(&self, r: u32) -> Option<u128> {
        self.degree(r).map(|d| d.ambient)
    }

    /// `h(r) = dim Ā_r - rank_r` for `r = 0..=max_degree`.
    pub fn quotient_dims(&self) -> Vec<u128> {
        self.degrees.iter().map(|d| d.quotient_dim()).collect()
    }

    /// The part of `a` not in the ideal, written on non-pivot columns.
    pub fn remainder(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.ctx.ensure_same(&a.context())?;
        if a.is_zero() {
            return Ok(a.clone());
        }
        let Some(r) = a.degree() else {
            let mut out = AlgebraElement::zero(self.ctx);
            let mut by_deg: BTreeMap<u32, Vec<(Monomial, Rational)>> = BTreeMap::new();
            for (m, c) in a.terms() {
                by_deg.entry(m.degree()).or_default().push((m.clone(), c.clone()));
            }
            for (_, terms) in by_deg {
                out = out.add(&self.remainder(&AlgebraElement::from_terms(self.ctx, terms))?)?;
            }
            return Ok(out);
        };
        let deg = self.degree_checked(r)?;
        if deg.saturated {
            return Ok(AlgebraElement::zero(self.ctx));
        }
        let mut out = Vec::new();
        for w in 0..self.ctx.n() {
            let part = a.weight_component(w);
            if part.is_zero() {
                continue;
            }
            let block = &deg.blocks[w];
            if block.full {
                continue;
            }
            let v = block.to_vector(&part).expect("monomials of this degree and weight");
            for (c, x) in block.reduce(&v) {
                out.push((block.columns[c as usize].clone(), x));
            }
        }
        Ok(AlgebraElement::from_terms(self.ctx, out))
    }

    pub fn contains(&self, a: &AlgebraElement) -> Result<bool> {
        Ok(self.remainder(a)?.is_zero())
    }

    /// Rows of degree `r` as elements, ordered by weight then pivot.
    pub fn rows(&self, r: u32) -> Result<Vec<AlgebraElement>> {
        let deg = self.degree_checked(r)?;
        if deg.saturated {
            return Err(Error::Precondition(format!("degree {r} is saturated; rows are the whole basis")));
        }
        let mut out = Vec::new();
        for block in &deg.blocks {
            for (p, tail) in block.sorted_rows() {
                let mut terms = alloc::vec![(block.columns[p as usize].clone(), Rational::ONE)];
                terms.extend(tail.into_iter().map(|(c, x)| (block.columns[c as usize].clone(), x)));
                out.push(AlgebraElement::from_terms(self.ctx, terms));
            }
        }
        Ok(out)
    }

    /// Canonical text dump of every degree, for determinism checks.
    pub fn canonical_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "context {} j {}", self.ctx, self.j);
        for d in &self.degrees {
            let _ = writeln!(s, "degree {} ambient {} rank {}", d.r, d.ambient, d.rank());
            if d.saturated {
                continue;
            }
            for (w, block) in d.blocks.iter().enumerate() {
                let _ = writeln!(s, " weight {w} dim {} rank {}", block.dim(), block.rank());
                if block.full {
                    continue;
                }
                for (p, tail) in block.sorted_rows() {
                    let _ = write!(s, "  {}", block.columns[p as usize]);
                    for (c, x) in tail {
                        let _ = write!(s, " {}:{}", block.columns[c as usize], x);
                    }
                    s.push('\n');
                }
            }
        }
        s
    }
}
