use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arith::{Character, ExactMatrix};
use crate::error::{Error, Result};
use crate::sl2::{
    cokernel, direct_sum, factor_through_injection, kernel, tensor_module, tensor_morphism, DirectSum, UModule,
    UMorphism,
};

/// A bounded cochain complex `… → X_i --d_i--> X_{i+1} → …` of modules.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ell: u32,
    start: i64,
    terms: Vec<Arc<UModule>>,
    diffs: Vec<UMorphism>,
}

impl ChainComplex {
    /// Terms in degrees `start, start+1, …`; `diffs[k]` maps term k to term k+1.
    pub fn new(ell: u32, start: i64, terms: Vec<Arc<UModule>>, diffs: Vec<UMorphism>) -> Result<Self> {
        if !terms.is_empty() && diffs.len() + 1 != terms.len() || terms.is_empty() && !diffs.is_empty() {
            return Err(Error::Dimension("a complex with k terms needs k-1 differentials".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source.dim() != terms[k].dim() || d.target.dim() != terms[k + 1].dim() {
                return Err(Error::Dimension(format!("differential in degree {} has the wrong shape", start + k as i64)));
            }
        }
        let c = ChainComplex { ell, start, terms, diffs };
        c.check_square_zero()?;
        Ok(c)
    }

    pub fn zero(ell: u32) -> Self {
        ChainComplex { ell, start: 0, terms: vec![], diffs: vec![] }
    }

    /// `m` placed in a single degree.
    pub fn concentrated(m: Arc<UModule>, degree: i64) -> Self {
        ChainComplex { ell: m.ell(), start: degree, terms: vec![m], diffs: vec![] }
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Degrees `lo..=hi` of the stored terms (possibly including zero modules).
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        (!self.terms.is_empty()).then(|| (self.start, self.start + self.terms.len() as i64 - 1))
    }

    pub fn term(&self, i: i64) -> Arc<UModule> {
        let k = i - self.start;
        if k >= 0 && (k as usize) < self.terms.len() {
            self.terms[k as usize].clone()
        } else {
            Arc::new(UModule::zero(self.ell))
        }
    }

    /// `d_i : X_i -> X_{i+1}`.
    pub fn differential(&self, i: i64) -> UMorphism {
        let k = i - self.start;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            UMorphism::zero(self.term(i), self.term(i + 1))
        }
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for w in self.diffs.windows(2) {
            if !w[1].matrix.mul(&w[0].matrix).is_zero() {
                return Err(Error::InvalidArgument("d ∘ d ≠ 0".into()));
            }
        }
        Ok(())
    }

    /// Whether every differential is a module homomorphism.
    pub fn differentials_are_homomorphisms(&self) -> bool {
        self.diffs.iter().all(UMorphism::is_homomorphism)
    }

    /// H^i = ker d_i / im d_{i-1} with the induced module structure, for every stored degree.
    pub fn cohomology(&self) -> BTreeMap<i64, Arc<UModule>> {
        let mut out = BTreeMap::new();
        let Some((lo, hi)) = self.degree_range() else { return out };
        for i in lo..=hi {
            let (_, incl) = kernel(&self.differential(i));
            let prev = self.differential(i - 1);
            let into_kernel = factor_through_injection(&prev, &incl).expect("im d ⊆ ker d");
            let (h, _) = cokernel(&into_kernel);
            out.insert(i, h);
        }
        out
    }

    /// Characters of the cohomology, from weight-space ranks only.
    pub fn cohomology_characters(&self) -> BTreeMap<i64, Character> {
        let mut out = BTreeMap::new();
        let Some((lo, hi)) = self.degree_range() else { return out };
        for i in lo..=hi {
            let x = self.term(i);
            let d = self.differential(i);
            let p = self.differential(i - 1);
            let mut c = Character::zero();
            for &(w, dim) in x.spaces() {
                let h = dim - d.block(w).rank() - p.block(w).rank();
                c.add_term(w, h as i64);
            }
            out.insert(i, c);
        }
        out
    }

    /// Degrees with nonzero cohomology, with its character.
    pub fn nonzero_cohomology(&self) -> BTreeMap<i64, Character> {
        self.cohomology_characters().into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn euler_character(&self) -> Character {
        let mut c = Character::zero();
        if let Some((lo, hi)) = self.degree_range() {
            for i in lo..=hi {
                let t = self.term(i).character();
                c = if i.rem_euclid(2) == 0 { &c + &t } else { &c - &t };
            }
        }
        c
    }
}

fn assemble(dst: &DirectSum, src: &DirectSum, comps: &[(usize, usize, ExactMatrix)]) -> ExactMatrix {
    let ell = dst.module.ell();
    let mut m = ExactMatrix::zeros(ell, dst.module.dim(), src.module.dim());
    for (r, c, b) in comps {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                let v = b.get(i, j);
                if !v.is_zero() {
                    m.set(dst.index_maps[*r][i], src.index_maps[*c][j], v.clone());
                }
            }
        }
    }
    m
}

/// The tensor product complex: (X ⊗ Y)_i = ⊕_{j+k=i} X_j ⊗ Y_k with differential
/// d_j ⊗ id + (−1)^j id ⊗ d'_k.
pub fn tensor_complexes(x: &ChainComplex, y: &ChainComplex) -> Result<ChainComplex> {
    if x.ell != y.ell {
        return Err(Error::EllMismatch(x.ell, y.ell));
    }
    let ell = x.ell;
    let (Some((xl, xh)), Some((yl, yh))) = (x.degree_range(), y.degree_range()) else {
        return Ok(ChainComplex::zero(ell));
    };
    // parts of degree i: (j, k, module)
    let mut parts: Vec<Vec<(i64, i64, Arc<UModule>)>> = Vec::new();
    let mut sums: Vec<DirectSum> = Vec::new();
    for i in xl + yl..=xh + yh {
        let mut p = Vec::new();
        for j in xl..=xh {
            let k = i - j;
            if k < yl || k > yh {
                continue;
            }
            p.push((j, k, Arc::new(tensor_module(&x.term(j), &y.term(k))?)));
        }
        let mods: Vec<Arc<UModule>> = p.iter().map(|t| t.2.clone()).collect();
        sums.push(direct_sum(ell, &mods));
        parts.push(p);
    }
    let mut diffs = Vec::new();
    for n in 0..parts.len().saturating_sub(1) {
        let mut comps = Vec::new();
        for (c, (j, k, src)) in parts[n].iter().enumerate() {
            for (r, (j2, k2, dst)) in parts[n + 1].iter().enumerate() {
                if *j2 == j + 1 && k2 == k {
                    let f = tensor_morphism(&x.differential(*j), &UMorphism::identity(y.term(*k)), src.clone(), dst.clone());
                    comps.push((r, c, f.matrix));
                } else if j2 == j && *k2 == k + 1 {
                    let f = tensor_morphism(&UMorphism::identity(x.term(*j)), &y.differential(*k), src.clone(), dst.clone());
                    let m = if j.rem_euclid(2) == 0 { f.matrix } else { f.matrix.neg() };
                    comps.push((r, c, m));
                }
            }
        }
        let m = assemble(&sums[n + 1], &sums[n], &comps);
        diffs.push(UMorphism::new_unchecked(sums[n].module.clone(), sums[n + 1].module.clone(), m)?);
    }
    let terms = sums.into_iter().map(|s| s.module).collect();
    ChainComplex::new(ell, xl + yl, terms, diffs)
}

/// A finite double complex with commuting squares: `modules[p][q]` sits in bidegree
/// (p0 + p, q0 + q), `horizontal[p][q] : M[p][q] -> M[p+1][q]`, `vertical[p][q] : M[p][q] -> M[p][q+1]`.
#[derive(Clone, Debug)]
pub struct DoubleComplex {
    pub ell: u32,
    pub origin: (i64, i64),
    pub modules: Vec<Vec<Arc<UModule>>>,
    pub horizontal: Vec<Vec<UMorphism>>,
    pub vertical: Vec<Vec<UMorphism>>,
}

/// Totalization with differential d_h + (−1)^p d_v. The squares must commute before the sign
/// twist (equivalently anticommute after it); a failing square is named in the error.
pub fn total_complex(dc: &DoubleComplex) -> Result<ChainComplex> {
    let ell = dc.ell;
    let np = dc.modules.len();
    let nq = dc.modules.first().map_or(0, Vec::len);
    if np == 0 || nq == 0 {
        return Ok(ChainComplex::zero(ell));
    }
    if dc.modules.iter().any(|r| r.len() != nq)
        || dc.horizontal.len() + 1 != np
        || dc.vertical.len() != np
        || dc.horizontal.iter().any(|r| r.len() != nq)
        || dc.vertical.iter().any(|r| r.len() + 1 != nq)
    {
        return Err(Error::Dimension("ragged double complex".into()));
    }
    for p in 0..np.saturating_sub(1) {
        for q in 0..nq.saturating_sub(1) {
            let a = dc.vertical[p + 1][q].matrix.mul(&dc.horizontal[p][q].matrix);
            let b = dc.horizontal[p][q + 1].matrix.mul(&dc.vertical[p][q].matrix);
            if a != b {
                return Err(Error::InvalidArgument(format!(
                    "square at bidegree ({}, {}) does not commute",
                    dc.origin.0 + p as i64,
                    dc.origin.1 + q as i64
                )));
            }
        }
    }
    let (p0, q0) = dc.origin;
    let mut parts: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut sums = Vec::new();
    for n in 0..np + nq - 1 {
        let idx: Vec<(usize, usize)> = (0..np).filter(|&p| n >= p && n - p < nq).map(|p| (p, n - p)).collect();
        let mods: Vec<Arc<UModule>> = idx.iter().map(|&(p, q)| dc.modules[p][q].clone()).collect();
        sums.push(direct_sum(ell, &mods));
        parts.push(idx);
    }
    let mut diffs = Vec::new();
    for n in 0..parts.len() - 1 {
        let mut comps = Vec::new();
        for (c, &(p, q)) in parts[n].iter().enumerate() {
            for (r, &(p2, q2)) in parts[n + 1].iter().enumerate() {
                if p2 == p + 1 && q2 == q {
                    comps.push((r, c, dc.horizontal[p][q].matrix.clone()));
                } else if p2 == p && q2 == q + 1 {
                    let v = &dc.vertical[p][q].matrix;
                    let v = if (p0 + p as i64).rem_euclid(2) == 0 { v.clone() } else { v.neg() };
                    comps.push((r, c, v));
                }
            }
        }
        let m = assemble(&sums[n + 1], &sums[n], &comps);
        diffs.push(UMorphism::new_unchecked(sums[n].module.clone(), sums[n + 1].module.clone(), m)?);
    }
    let terms = sums.into_iter().map(|s| s.module).collect();
    ChainComplex::new(ell, p0 + q0, terms, diffs)
}
