//! Krull–Schmidt decomposition: tilting summands are split off with the pairing-rank test,
//! anything left over goes through the endomorphism-algebra fallback.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::{CyclotomicScalar, ExactMatrix};
use crate::error::{Error, Result};
use crate::sl2::{direct_sum, factor_through_injection, kernel, submodule_from_graded, GradedSubspace, UModule, UMorphism};
use crate::workbench::Workbench;

use super::hom::{find_isomorphism, hom_space};

type S = CyclotomicScalar;

/// Coefficient of the highest weight vector in `f(v_μ)` for a map `T(μ) -> T(μ)`.
pub fn highest_weight_scalar(f: &UMorphism) -> S {
    f.matrix.get(0, 0).clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum SummandLabel {
    Tilting(u32),
    /// An indecomposable summand that is not tilting, numbered in order of discovery.
    Opaque(usize),
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub label: SummandLabel,
    pub module: Arc<UModule>,
    pub inclusion: UMorphism,
    pub projection: UMorphism,
}

#[derive(Clone, Debug)]
pub struct DecompositionResult {
    pub summands: Vec<Summand>,
}

impl DecompositionResult {
    /// Multiplicities of the tilting summands.
    pub fn tilting_labels(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for s in &self.summands {
            if let SummandLabel::Tilting(n) = s.label {
                *out.entry(n).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn opaque_count(&self) -> usize {
        self.summands.iter().filter(|s| matches!(s.label, SummandLabel::Opaque(_))).count()
    }

    /// Whether the witnesses form a complete family of orthogonal idempotents.
    pub fn witnesses_valid(&self, m: &UModule) -> bool {
        let ell = m.ell();
        let mut sum = ExactMatrix::zeros(ell, m.dim(), m.dim());
        for (i, a) in self.summands.iter().enumerate() {
            sum.add_assign(&a.inclusion.matrix.mul(&a.projection.matrix));
            for (j, b) in self.summands.iter().enumerate() {
                let c = b.projection.matrix.mul(&a.inclusion.matrix);
                let ok = if i == j { c.is_identity() } else { c.is_zero() };
                if !ok {
                    return false;
                }
            }
        }
        sum.is_identity()
    }
}

/// One round of splitting `T(μ)^r` off `m`.
struct Split {
    copies: Vec<(UMorphism, UMorphism)>,
    rest: Arc<UModule>,
    rest_inclusion: UMorphism,
    rest_projection: UMorphism,
}

fn select_independent(p: &ExactMatrix) -> (Vec<usize>, Vec<usize>) {
    let cols = p.rref().pivots;
    let rows = p.transpose().rref().pivots;
    (rows, cols)
}

impl Workbench {
    fn split_tilting(&self, m: &Arc<UModule>, mu: u32, with_projection: bool) -> Option<Split> {
        let t = self.tilting(mu);
        let ct = t.character();
        let cm = m.character();
        if ct.iter().any(|(w, k)| cm.get(w) < k) {
            return None;
        }
        let fs = hom_space(&t, m);
        if fs.is_empty() {
            return None;
        }
        let gs = hom_space(m, &t);
        if gs.is_empty() {
            return None;
        }
        let ell = self.ell();
        let pairing = ExactMatrix::from_fn(ell, gs.len(), fs.len(), |i, j| {
            let g = gs[i].matrix.row(0);
            let mut acc = S::zero(ell);
            for (k, gk) in g.iter().enumerate() {
                if !gk.is_zero() {
                    let fk = fs[j].matrix.get(k, 0);
                    if !fk.is_zero() {
                        acc += &(gk * fk);
                    }
                }
            }
            acc
        });
        let (rows, cols) = select_independent(&pairing);
        let r = cols.len();
        if r == 0 {
            return None;
        }
        let tr = direct_sum(ell, &vec![t.clone(); r]);
        let fm: Vec<&ExactMatrix> = cols.iter().map(|&j| &fs[j].matrix).collect();
        let gm: Vec<&ExactMatrix> = rows.iter().map(|&i| &gs[i].matrix).collect();
        let f = UMorphism::new_unchecked(tr.module.clone(), m.clone(), tr.columns_from_parts(m.dim(), &fm)).ok()?;
        let g = UMorphism::new_unchecked(m.clone(), tr.module.clone(), tr.rows_from_parts(m.dim(), &gm)).ok()?;
        let gf = g.compose(&f).ok()?;
        let inv = gf.inverse().ok()?;
        let proj = inv.compose(&g).ok()?;
        let (rest, rest_inclusion) = kernel(&proj);
        let rest_projection = if with_projection {
            let e = UMorphism::identity(m.clone()).sub(&f.compose(&proj).ok()?);
            factor_through_injection(&e, &rest_inclusion)?
        } else {
            UMorphism::zero(m.clone(), rest.clone())
        };
        let copies = (0..r)
            .map(|k| (f.compose(&tr.inclusion(k)).unwrap(), tr.projection(k).compose(&proj).unwrap()))
            .collect();
        Some(Split { copies, rest, rest_inclusion, rest_projection })
    }

    /// Removes all summands T(μ), μ ≤ `top`, from `m` and returns the complement.
    pub(crate) fn strip_tilting_summands(&self, mut m: Arc<UModule>, top: u32) -> Arc<UModule> {
        for mu in (0..=top).rev() {
            if m.weight_dim(mu as i64) == 0 {
                continue;
            }
            if let Some(s) = self.split_tilting(&m, mu, false) {
                m = s.rest;
            }
        }
        m
    }

    /// Splits a tilting module into canonical T(n)'s: for each summand, its label with the
    /// inclusion `T(n) -> m` and projection `m -> T(n)`.
    pub fn tilting_pieces(&self, m: &Arc<UModule>) -> Result<Vec<(u32, ExactMatrix, ExactMatrix)>> {
        let mut pieces = Vec::new();
        if m.is_zero() {
            return Ok(pieces);
        }
        for s in self.decompose_indecomposables(m)?.summands {
            let SummandLabel::Tilting(n) = s.label else {
                return Err(Error::Construction("a module expected to be tilting has a non-tilting summand".into()));
            };
            let t = self.tilting(n);
            let phi = find_isomorphism(&t, &s.module)
                .ok_or_else(|| Error::Construction(format!("summand with label {n} is not isomorphic to T({n})")))?;
            let phi_inv = phi.inverse()?;
            pieces.push((n, s.inclusion.matrix.mul(&phi.matrix), phi_inv.matrix.mul(&s.projection.matrix)));
        }
        Ok(pieces)
    }

    /// Decomposes `m` into indecomposables with witness inclusions and projections.
    ///
    /// Tilting summands are recognized by the pairing Hom(T(μ), M) × Hom(M, T(μ)) → k,
    /// (f, g) ↦ highest weight scalar of g∘f, whose rank is the multiplicity of T(μ).
    /// The non-tilting remainder is split with Fitting decompositions of endomorphisms.
    pub fn decompose_indecomposables(&self, m: &Arc<UModule>) -> Result<DecompositionResult> {
        let mut summands = Vec::new();
        let mut cur = m.clone();
        let mut to_m = UMorphism::identity(m.clone()); // cur -> m
        let mut from_m = UMorphism::identity(m.clone()); // m -> cur
        let top = m.max_weight().unwrap_or(-1);
        for mu in (0..=top).rev() {
            if cur.weight_dim(mu) == 0 {
                continue;
            }
            let Some(s) = self.split_tilting(&cur, mu as u32, true) else { continue };
            for (i, p) in s.copies {
                summands.push(Summand {
                    label: SummandLabel::Tilting(mu as u32),
                    module: i.source.clone(),
                    inclusion: to_m.compose(&i)?,
                    projection: p.compose(&from_m)?,
                });
            }
            to_m = to_m.compose(&s.rest_inclusion)?;
            from_m = s.rest_projection.compose(&from_m)?;
            cur = s.rest;
        }
        if !cur.is_zero() {
            let mut opaque = Vec::new();
            split_by_endomorphisms(cur.clone(), &mut opaque)?;
            for (k, (module, i, p)) in opaque.into_iter().enumerate() {
                summands.push(Summand {
                    label: SummandLabel::Opaque(k),
                    module,
                    inclusion: to_m.compose(&i)?,
                    projection: p.compose(&from_m)?,
                });
            }
        }
        Ok(DecompositionResult { summands })
    }
}

/// Dimension of End(M)/rad End(M), with the radical computed as the kernel of the trace
/// form (x, y) ↦ tr(xy) on M (characteristic zero).
pub fn semisimple_quotient_dim(end: &[UMorphism]) -> usize {
    if end.is_empty() {
        return 0;
    }
    let ell = end[0].ell();
    let n = end.len();
    let form = ExactMatrix::from_fn(ell, n, n, |i, j| end[i].matrix.mul(&end[j].matrix).trace());
    form.rank()
}

/// Whether End(M) is local, i.e. End/rad is one-dimensional.
pub fn has_local_endomorphisms(m: &Arc<UModule>) -> bool {
    semisimple_quotient_dim(&hom_space(m, m)) == 1
}

type Piece = (Arc<UModule>, UMorphism, UMorphism);

/// Recursively splits `m` with Fitting decompositions `M = ker ψ^N ⊕ im ψ^N` for
/// ψ = φ − c, φ ranging over a basis of End(M) and c over candidate eigenvalues.
fn split_by_endomorphisms(m: Arc<UModule>, out: &mut Vec<Piece>) -> Result<()> {
    let end = hom_space(&m, &m);
    if semisimple_quotient_dim(&end) <= 1 {
        out.push((m.clone(), UMorphism::identity(m.clone()), UMorphism::identity(m)));
        return Ok(());
    }
    let ell = m.ell();
    for phi in &end {
        let mut candidates = vec![S::zero(ell)];
        for &(w, d) in m.spaces() {
            let b = phi.block(w);
            for i in 0..d {
                candidates.push(b.get(i, i).clone());
            }
        }
        candidates.sort_by_key(|c| format!("{c:?}"));
        candidates.dedup();
        for c in candidates {
            let psi = phi.sub(&UMorphism::identity(m.clone()).scale(&c));
            let mut p = psi.clone();
            for _ in 0..m.dim().next_power_of_two().trailing_zeros() + 1 {
                p = p.compose(&p)?;
            }
            let r = p.rank();
            if r == 0 || r == m.dim() {
                continue;
            }
            // p is the Fitting power: M = ker p ⊕ im p, both submodules
            let (k, ki) = kernel(&p);
            let img = GradedSubspace::from_columns(m.spaces().iter().map(|&(w, _)| (w, p.block(w))));
            let (im, ii) = submodule_from_graded(&m, &img)?;
            let both = direct_sum(ell, &[k.clone(), im.clone()]);
            let iso = UMorphism::new_unchecked(
                both.module.clone(),
                m.clone(),
                both.columns_from_parts(m.dim(), &[&ki.matrix, &ii.matrix]),
            )?;
            let inv = iso.inverse()?;
            let pk = both.projection(0).compose(&inv)?;
            let pi = both.projection(1).compose(&inv)?;
            let mut sub = Vec::new();
            split_by_endomorphisms(k, &mut sub)?;
            for (s, i, q) in sub.drain(..) {
                out.push((s, ki.compose(&i)?, q.compose(&pk)?));
            }
            split_by_endomorphisms(im, &mut sub)?;
            for (s, i, q) in sub {
                out.push((s, ii.compose(&i)?, q.compose(&pi)?));
            }
            return Ok(());
        }
    }
    Err(Error::NonSplit(format!(
        "no Fitting split found for a module of dimension {} with End/rad of dimension {}",
        m.dim(),
        semisimple_quotient_dim(&end)
    )))
}
