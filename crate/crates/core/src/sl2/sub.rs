//! Submodules, quotients, kernels, images and cokernels.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arith::{CyclotomicScalar, ExactMatrix};
use crate::error::{Error, Result};

use super::module::{Generator, UModule};
use super::morphism::UMorphism;

type S = CyclotomicScalar;

/// A subspace spanned by weight vectors: for each weight, a column basis of a subspace of
/// that weight space in reduced column echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    blocks: BTreeMap<i64, (ExactMatrix, Vec<usize>)>,
}

impl GradedSubspace {
    pub fn zero() -> Self {
        GradedSubspace { blocks: BTreeMap::new() }
    }

    /// Span of the given columns in each weight space.
    pub fn from_columns(blocks: impl IntoIterator<Item = (i64, ExactMatrix)>) -> Self {
        let mut out = BTreeMap::new();
        for (w, cols) in blocks {
            if cols.cols() == 0 {
                continue;
            }
            let (basis, pivots) = cols.column_echelon();
            if !pivots.is_empty() {
                out.insert(w, (basis, pivots));
            }
        }
        GradedSubspace { blocks: out }
    }

    pub fn dim(&self) -> usize {
        self.blocks.values().map(|b| b.1.len()).sum()
    }

    pub fn weight_dim(&self, w: i64) -> usize {
        self.blocks.get(&w).map_or(0, |b| b.1.len())
    }

    pub fn basis(&self, w: i64) -> Option<&ExactMatrix> {
        self.blocks.get(&w).map(|b| &b.0)
    }

    fn contains_columns(&self, w: i64, cols: &ExactMatrix) -> bool {
        if cols.is_zero() {
            return true;
        }
        match self.blocks.get(&w) {
            Some((b, _)) => b.solve(cols).is_some(),
            None => false,
        }
    }

    /// Whether the subspace is stable under all generators of `m`.
    pub fn is_stable(&self, m: &UModule) -> bool {
        self.blocks.iter().all(|(&w, (b, _))| {
            Generator::ALL.iter().all(|&g| {
                let img = m.act(g, w).mul(b);
                self.contains_columns(w + g.shift(m.ell()), &img)
            })
        })
    }

    /// The same subspace as a graded basis of the whole module (dense `dim(M) x dim(S)`).
    pub fn dense_basis(&self, m: &UModule) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(m.ell(), m.dim(), self.dim());
        let mut c = 0;
        for &(w, _) in m.spaces() {
            if let Some((b, _)) = self.blocks.get(&w) {
                out.set_block(m.offset(w).unwrap(), c, b);
                c += b.cols();
            }
        }
        out
    }
}

/// Splits a vector of `m` into its weight components.
pub fn weight_components(m: &UModule, v: &[S]) -> Vec<(i64, Vec<S>)> {
    m.spaces()
        .iter()
        .filter_map(|&(w, _)| {
            let part: Vec<S> = v[m.weight_range(w)].to_vec();
            (!part.iter().all(S::is_zero)).then_some((w, part))
        })
        .collect()
}

/// Smallest submodule containing the given vectors. Submodules of type-one modules are sums
/// of weight spaces, so the closure starts from the weight components of the vectors.
pub fn generated_subspace(m: &UModule, vectors: &[Vec<S>]) -> GradedSubspace {
    let ell = m.ell();
    // per weight: echelon rows (pivot, row) for independence testing, plus the raw vectors
    let mut spans: BTreeMap<i64, Vec<(usize, Vec<S>)>> = BTreeMap::new();
    let mut found: BTreeMap<i64, Vec<Vec<S>>> = BTreeMap::new();
    let mut queue: Vec<(i64, Vec<S>)> = Vec::new();
    for v in vectors {
        assert_eq!(v.len(), m.dim(), "vector length must equal module dimension");
        queue.extend(weight_components(m, v));
    }
    while let Some((w, v)) = queue.pop() {
        let span = spans.entry(w).or_default();
        let mut r = v.clone();
        for (p, row) in span.iter() {
            if !r[*p].is_zero() {
                let f = r[*p].clone();
                for (x, y) in r.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        let Some(p) = r.iter().position(|x| !x.is_zero()) else { continue };
        let inv = r[p].inverse().expect("nonzero");
        let r: Vec<S> = r.iter().map(|x| x * &inv).collect();
        for (_, row) in span.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        span.push((p, r));
        found.entry(w).or_default().push(v.clone());
        for g in Generator::ALL {
            if let Some(b) = m.block(g, w) {
                let img = b.mul_vec(&v);
                if !img.iter().all(S::is_zero) {
                    queue.push((w + g.shift(ell), img));
                }
            }
        }
    }
    GradedSubspace::from_columns(found.into_iter().map(|(w, vs)| {
        let d = m.weight_dim(w);
        let cols = ExactMatrix::from_fn(ell, d, vs.len(), |i, j| vs[j][i].clone());
        (w, cols)
    }))
}

/// The module structure induced on a stable graded subspace, with its inclusion.
pub fn submodule_from_graded(m: &Arc<UModule>, sub: &GradedSubspace) -> Result<(Arc<UModule>, UMorphism)> {
    if !sub.is_stable(m) {
        return Err(Error::NotStable("subspace is not stable under the generators".into()));
    }
    let ell = m.ell();
    let spaces: Vec<(i64, usize)> = sub.blocks.iter().map(|(&w, b)| (w, b.1.len())).collect();
    let mut actions: [BTreeMap<i64, ExactMatrix>; 4] = Default::default();
    for (gi, g) in Generator::ALL.iter().enumerate() {
        for (&w, (b, _)) in &sub.blocks {
            let t = w + g.shift(ell);
            let Some((bt, pivots)) = sub.blocks.get(&t) else { continue };
            let img = m.act(*g, w).mul(b);
            // bt has identity rows at its pivots, so coordinates are read off directly
            let coords = img.select_rows(pivots);
            debug_assert_eq!(bt.mul(&coords), img);
            actions[gi].insert(w, coords);
        }
    }
    let s = Arc::new(UModule::from_blocks(ell, spaces, actions)?);
    let incl = UMorphism::from_blocks(s.clone(), m.clone(), sub.blocks.iter().map(|(&w, b)| (w, b.0.clone())));
    Ok((s, incl))
}

/// Submodule generated by `vectors`, with its inclusion.
pub fn submodule_generated(m: &Arc<UModule>, vectors: &[Vec<S>]) -> (Arc<UModule>, UMorphism) {
    let sub = generated_subspace(m, vectors);
    submodule_from_graded(m, &sub).expect("generated subspace is stable")
}

/// `M / S` for a stable graded subspace, with the projection. The quotient basis is the
/// images of the standard basis vectors at non-pivot positions.
pub fn quotient_by_graded(m: &Arc<UModule>, sub: &GradedSubspace) -> Result<(Arc<UModule>, UMorphism)> {
    if !sub.is_stable(m) {
        return Err(Error::NotStable("cannot quotient by a non-stable subspace".into()));
    }
    let ell = m.ell();
    let mut proj_blocks: BTreeMap<i64, ExactMatrix> = BTreeMap::new();
    let mut lifts: BTreeMap<i64, ExactMatrix> = BTreeMap::new();
    let mut spaces = Vec::new();
    for &(w, d) in m.spaces() {
        let (basis, pivots) = match sub.blocks.get(&w) {
            Some((b, p)) => (Some(b), p.clone()),
            None => (None, vec![]),
        };
        let free: Vec<usize> = (0..d).filter(|i| !pivots.contains(i)).collect();
        if free.is_empty() {
            continue;
        }
        // v mod S = v - Σ_p v_p · basis_p, read at the free coordinates
        let mut p = ExactMatrix::zeros(ell, free.len(), d);
        for (r, &f) in free.iter().enumerate() {
            p.set(r, f, S::one(ell));
            if let Some(b) = basis {
                for (k, &piv) in pivots.iter().enumerate() {
                    let v = b.get(f, k);
                    if !v.is_zero() {
                        p.set(r, piv, -v);
                    }
                }
            }
        }
        let lift = ExactMatrix::from_fn(ell, d, free.len(), |i, j| if i == free[j] { S::one(ell) } else { S::zero(ell) });
        spaces.push((w, free.len()));
        proj_blocks.insert(w, p);
        lifts.insert(w, lift);
    }
    let mut actions: [BTreeMap<i64, ExactMatrix>; 4] = Default::default();
    for (gi, g) in Generator::ALL.iter().enumerate() {
        for (&w, lift) in &lifts {
            let t = w + g.shift(ell);
            let Some(pt) = proj_blocks.get(&t) else { continue };
            actions[gi].insert(w, pt.mul(&m.act(*g, w)).mul(lift));
        }
    }
    let q = Arc::new(UModule::from_blocks(ell, spaces, actions)?);
    let proj = UMorphism::from_blocks(m.clone(), q.clone(), proj_blocks);
    Ok((q, proj))
}

/// `M / im(inclusion)` for an injective homomorphism into `M`.
pub fn quotient_module(m: &Arc<UModule>, inclusion: &UMorphism) -> Result<(Arc<UModule>, UMorphism)> {
    if inclusion.target.dim() != m.dim() {
        return Err(Error::Dimension("inclusion does not land in the module".into()));
    }
    if !inclusion.is_injective() {
        return Err(Error::InvalidArgument("quotient needs an injective inclusion".into()));
    }
    quotient_by_graded(m, &image_subspace(inclusion))
}

pub fn image_subspace(f: &UMorphism) -> GradedSubspace {
    GradedSubspace::from_columns(f.target.spaces().iter().map(|&(w, _)| (w, f.block(w))))
}

pub fn kernel_subspace(f: &UMorphism) -> GradedSubspace {
    GradedSubspace::from_columns(f.source.spaces().iter().map(|&(w, _)| (w, f.block(w).kernel())))
}

/// Kernel of a homomorphism with its inclusion.
pub fn kernel(f: &UMorphism) -> (Arc<UModule>, UMorphism) {
    submodule_from_graded(&f.source, &kernel_subspace(f)).expect("kernels are stable")
}

/// Image of a homomorphism with its inclusion into the target.
pub fn image(f: &UMorphism) -> (Arc<UModule>, UMorphism) {
    submodule_from_graded(&f.target, &image_subspace(f)).expect("images are stable")
}

/// Cokernel of a homomorphism with the projection from the target.
pub fn cokernel(f: &UMorphism) -> (Arc<UModule>, UMorphism) {
    quotient_by_graded(&f.target, &image_subspace(f)).expect("images are stable")
}

/// Factors `g` through the injective `incl` (`incl ∘ h = g`), if possible.
pub fn factor_through_injection(g: &UMorphism, incl: &UMorphism) -> Option<UMorphism> {
    let mut blocks = Vec::new();
    for &(w, _) in g.source.spaces() {
        let gb = g.block(w);
        if gb.is_zero() {
            continue;
        }
        let ib = incl.block(w);
        blocks.push((w, ib.solve(&gb)?));
    }
    Some(UMorphism::from_blocks(g.source.clone(), incl.source.clone(), blocks))
}

/// Lifts `g` through the surjective `proj` (`proj ∘ h = g`) weight space by weight space.
/// The result is linear but need not be a homomorphism.
pub fn linear_lift(g: &UMorphism, proj: &UMorphism) -> Option<ExactMatrix> {
    let mut blocks = Vec::new();
    for &(w, _) in g.source.spaces() {
        let gb = g.block(w);
        if gb.is_zero() {
            continue;
        }
        blocks.push((w, proj.block(w).solve(&gb)?));
    }
    Some(UMorphism::from_blocks(g.source.clone(), proj.source.clone(), blocks).matrix)
}
