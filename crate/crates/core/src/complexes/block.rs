use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{CyclotomicScalar, ExactMatrix, Rat};
use crate::error::{Error, Result};
use crate::sl2::{direct_sum, UModule, UMorphism};
use crate::workbench::Workbench;

use super::chain::ChainComplex;

/// One direct summand of a term: either a labelled tilting module T(n) or an arbitrary module.
#[derive(Clone, Debug)]
pub struct Part {
    pub label: Option<u32>,
    pub module: Arc<UModule>,
}

impl Part {
    pub fn tilting(wb: &Workbench, n: u32) -> Self {
        Part { label: Some(n), module: wb.tilting(n) }
    }

    pub fn module(m: Arc<UModule>) -> Self {
        Part { label: None, module: m }
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }
}

/// A matrix of component maps between two lists of parts; `None` is a zero block.
pub type BlockMap = Vec<Vec<Option<ExactMatrix>>>;

pub(crate) fn block_mul(a: &BlockMap, b: &BlockMap) -> BlockMap {
    let rows = a.len();
    let cols = b.first().map_or(0, Vec::len);
    let mut out: BlockMap = vec![vec![None; cols]; rows];
    for (r, arow) in a.iter().enumerate() {
        for (k, ab) in arow.iter().enumerate() {
            let Some(ab) = ab else { continue };
            for (c, bb) in b[k].iter().enumerate() {
                let Some(bb) = bb else { continue };
                let p = ab.mul(bb);
                if p.is_zero() {
                    continue;
                }
                out[r][c] = Some(match out[r][c].take() {
                    Some(x) => x.add(&p),
                    None => p,
                });
            }
        }
    }
    for row in out.iter_mut() {
        for b in row.iter_mut() {
            if b.as_ref().is_some_and(ExactMatrix::is_zero) {
                *b = None;
            }
        }
    }
    out
}

pub(crate) fn block_identity(n: usize, parts: &[Part]) -> BlockMap {
    (0..n)
        .map(|r| (0..n).map(|c| (r == c).then(|| ExactMatrix::identity(parts[r].module.ell(), parts[r].dim()))).collect())
        .collect()
}

/// A bounded complex whose terms are given as lists of parts and whose differentials are
/// block matrices. A tilting complex is one whose parts are all labelled.
#[derive(Clone, Debug)]
pub struct BlockComplex {
    pub ell: u32,
    pub start: i64,
    pub terms: Vec<Vec<Part>>,
    /// `diffs[k][r][c] : terms[k][c] -> terms[k+1][r]`.
    pub diffs: Vec<BlockMap>,
}

pub type TiltingComplex = BlockComplex;

impl BlockComplex {
    pub fn zero(ell: u32) -> Self {
        BlockComplex { ell, start: 0, terms: vec![], diffs: vec![] }
    }

    /// Tilting modules placed in a single degree.
    pub fn tilting_concentrated(wb: &Workbench, labels: &[u32], degree: i64) -> Self {
        let parts = labels.iter().map(|&n| Part::tilting(wb, n)).collect();
        BlockComplex { ell: wb.ell(), start: degree, terms: vec![parts], diffs: vec![] }
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        (!self.terms.is_empty()).then(|| (self.start, self.start + self.terms.len() as i64 - 1))
    }

    pub fn parts(&self, i: i64) -> &[Part] {
        let k = i - self.start;
        if k >= 0 && (k as usize) < self.terms.len() {
            &self.terms[k as usize]
        } else {
            &[]
        }
    }

    pub fn is_tilting(&self) -> bool {
        self.terms.iter().flatten().all(|p| p.label.is_some())
    }

    /// Sorted tilting labels of degree i.
    pub fn labels(&self, i: i64) -> Vec<u32> {
        let mut v: Vec<u32> = self.parts(i).iter().filter_map(|p| p.label).collect();
        v.sort_unstable();
        v
    }

    /// Degree → sorted label multiset, nonempty degrees only.
    pub fn label_multisets(&self) -> BTreeMap<i64, Vec<u32>> {
        let mut out = BTreeMap::new();
        if let Some((lo, hi)) = self.degree_range() {
            for i in lo..=hi {
                let l = self.labels(i);
                if !l.is_empty() {
                    out.insert(i, l);
                }
            }
        }
        out
    }

    /// All labels occurring in any degree.
    pub fn all_labels(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.iter().flatten().filter_map(|p| p.label).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Largest degree with a nonzero term and minus the smallest one: (gfd, wfd).
    pub fn width(&self) -> (i64, i64) {
        let m = self.label_multisets();
        let hi = m.keys().next_back().copied().unwrap_or(0);
        let lo = m.keys().next().copied().unwrap_or(0);
        (hi.max(0), (-lo).max(0))
    }

    /// Drops empty terms at both ends.
    pub fn trim(mut self) -> Self {
        while self.terms.last().is_some_and(|t| t.iter().all(|p| p.dim() == 0)) {
            self.terms.pop();
            self.diffs.pop();
        }
        while self.terms.first().is_some_and(|t| t.iter().all(|p| p.dim() == 0)) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.start += 1;
        }
        if self.terms.is_empty() {
            self.start = 0;
        }
        self
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for (k, w) in self.diffs.windows(2).enumerate() {
            let p = block_mul(&w[1], &w[0]);
            if p.iter().flatten().any(Option::is_some) {
                return Err(Error::InvalidArgument(format!("d ∘ d ≠ 0 at degree {}", self.start + k as i64)));
            }
        }
        Ok(())
    }

    /// The block matrix of d_i (zero-sized outside the support).
    pub fn differential(&self, i: i64) -> BlockMap {
        let k = i - self.start;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            vec![vec![None; self.parts(i).len()]; self.parts(i + 1).len()]
        }
    }

    /// Assembles the complex of direct sums.
    pub fn to_chain_complex(&self) -> ChainComplex {
        let Some((lo, _)) = self.degree_range() else { return ChainComplex::zero(self.ell) };
        let sums: Vec<_> = self
            .terms
            .iter()
            .map(|t| direct_sum(self.ell, &t.iter().map(|p| p.module.clone()).collect::<Vec<_>>()))
            .collect();
        let mut diffs = Vec::new();
        for (k, d) in self.diffs.iter().enumerate() {
            let (src, dst) = (&sums[k], &sums[k + 1]);
            let blocks: Vec<Vec<Option<&ExactMatrix>>> = d.iter().map(|row| row.iter().map(Option::as_ref).collect()).collect();
            let m = dst.assemble_from(src, &blocks);
            diffs.push(UMorphism::new_unchecked(src.module.clone(), dst.module.clone(), m).expect("block shapes"));
        }
        ChainComplex::new(self.ell, lo, sums.into_iter().map(|s| s.module).collect(), diffs).expect("d² = 0")
    }

    /// Termwise direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &BlockComplex) -> BlockComplex {
        let (Some((a0, a1)), Some((b0, b1))) = (self.degree_range(), other.degree_range()) else {
            return if self.terms.is_empty() { other.clone() } else { self.clone() };
        };
        let (lo, hi) = (a0.min(b0), a1.max(b1));
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for i in lo..=hi {
            let mut t = self.parts(i).to_vec();
            t.extend(other.parts(i).iter().cloned());
            terms.push(t);
            if i < hi {
                let (da, db) = (self.differential(i), other.differential(i));
                let (na, nb) = (self.parts(i).len(), other.parts(i).len());
                let (ma, mb) = (self.parts(i + 1).len(), other.parts(i + 1).len());
                let mut d: BlockMap = vec![vec![None; na + nb]; ma + mb];
                for r in 0..ma {
                    for c in 0..na {
                        d[r][c] = da[r][c].clone();
                    }
                }
                for r in 0..mb {
                    for c in 0..nb {
                        d[ma + r][na + c] = db[r][c].clone();
                    }
                }
                diffs.push(d);
            }
        }
        BlockComplex { ell: self.ell, start: lo, terms, diffs }
    }

    pub fn to_json(&self) -> ComplexJson {
        let mut degrees = BTreeMap::new();
        let mut differentials = BTreeMap::new();
        if let Some((lo, hi)) = self.degree_range() {
            for i in lo..=hi {
                degrees.insert(i.to_string(), self.parts(i).iter().map(|p| p.label).collect());
                if i < hi {
                    let d = self.differential(i);
                    let enc = d
                        .iter()
                        .map(|row| row.iter().map(|b| b.as_ref().map(encode_matrix)).collect())
                        .collect();
                    differentials.insert(i.to_string(), enc);
                }
            }
        }
        ComplexJson { ell: self.ell, degrees, differentials }
    }

    /// Rebuilds a tilting complex from its JSON form, resolving labels through `wb`.
    pub fn from_json(wb: &Workbench, j: &ComplexJson) -> Result<Self> {
        let ell = wb.ell();
        if j.ell != ell {
            return Err(Error::EllMismatch(ell, j.ell));
        }
        let mut entries: Vec<(i64, &Vec<Option<u32>>)> = j
            .degrees
            .iter()
            .map(|(k, v)| Ok((k.parse::<i64>().map_err(|e| Error::Parse(e.to_string()))?, v)))
            .collect::<Result<_>>()?;
        entries.sort_by_key(|e| e.0);
        let Some(&(start, _)) = entries.first() else { return Ok(BlockComplex::zero(ell)) };
        let mut terms = Vec::new();
        for (k, (deg, labels)) in entries.iter().enumerate() {
            if *deg != start + k as i64 {
                return Err(Error::Parse("degrees must be contiguous".into()));
            }
            let parts = labels
                .iter()
                .map(|l| l.map(|n| Part::tilting(wb, n)).ok_or_else(|| Error::Parse("unlabelled part".into())))
                .collect::<Result<Vec<_>>>()?;
            terms.push(parts);
        }
        let mut diffs = Vec::new();
        for k in 0..terms.len().saturating_sub(1) {
            let key = (start + k as i64).to_string();
            let d = j.differentials.get(&key).ok_or_else(|| Error::Parse(format!("missing differential {key}")))?;
            let mut bm: BlockMap = Vec::new();
            for (r, row) in d.iter().enumerate() {
                let mut out_row = Vec::new();
                for (c, b) in row.iter().enumerate() {
                    out_row.push(match b {
                        Some(enc) => {
                            let (rows, cols) = (terms[k + 1][r].dim(), terms[k][c].dim());
                            Some(decode_matrix(ell, rows, cols, enc)?)
                        }
                        None => None,
                    });
                }
                bm.push(out_row);
            }
            diffs.push(bm);
        }
        let c = BlockComplex { ell, start, terms, diffs };
        c.check_square_zero()?;
        Ok(c)
    }
}

fn encode_matrix(m: &ExactMatrix) -> Vec<Vec<Rat>> {
    m.entries().iter().map(|s| s.coeffs().to_vec()).collect()
}

fn decode_matrix(ell: u32, rows: usize, cols: usize, enc: &[Vec<Rat>]) -> Result<ExactMatrix> {
    if enc.len() != rows * cols {
        return Err(Error::Parse("block has the wrong number of entries".into()));
    }
    let vals = enc.iter().map(|c| CyclotomicScalar::from_coeffs(ell, c.clone())).collect::<Result<Vec<_>>>()?;
    let mut it = vals.into_iter();
    Ok(ExactMatrix::from_fn(ell, rows, cols, |_, _| it.next().unwrap()))
}

/// Canonical JSON for complexes: per-degree labels and block differentials, each block a
/// row-major list of entries in the power basis (or null for a zero block).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub ell: u32,
    pub degrees: BTreeMap<String, Vec<Option<u32>>>,
    pub differentials: BTreeMap<String, Vec<Vec<Option<Vec<Vec<Rat>>>>>>,
}
