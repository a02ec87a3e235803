//! Tilting complexes quasi-isomorphic to a given module.
//!
//! Right phase: embed M = C_0 into a sum of tiltings T^0, take the cokernel C_1, and repeat
//! until some C_k has a good filtration. This gives [T^0 → … → T^{k-1} → C_k].
//!
//! Left phase: a ∇-filtered term N in degree j is replaced by a tilting approximation
//! π : S ↠ N whose kernel K is again ∇-filtered. The incoming differential lifts through π,
//! S joins degree j and K moves to degree j-1. Since K has smaller Weyl filtration dimension
//! than N, this stops once K is tilting.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arith::{CyclotomicScalar, ExactMatrix};
use crate::complexes::{BlockComplex, BlockMap, Part};
use crate::error::{Error, Result};
use crate::sl2::{cokernel, direct_sum, factor_through_injection, kernel, Generator, UModule, UMorphism};
use crate::standard::{has_good_filtration, has_weyl_filtration, hom_space};
use crate::workbench::Workbench;

type S = CyclotomicScalar;

const MAX_STEPS: usize = 64;
/// The window extension above the top weight is doubled at most this many times.
const MAX_DOUBLINGS: u32 = 3;

fn nz(m: ExactMatrix) -> Option<ExactMatrix> {
    (!m.is_zero()).then_some(m)
}

fn window_bounds(ell: u32, top: i64) -> impl Iterator<Item = u32> {
    let base = 2 * (ell as i64 - 1);
    (0..=MAX_DOUBLINGS).map(move |k| (top.max(0) + (base << k)) as u32)
}

/// Maps `c -> T(μ_r)` with trivial joint kernel, tried over μ = 0, 1, … inside the window.
fn embed_into_tiltings(wb: &Workbench, c: &Arc<UModule>) -> Result<(Vec<u32>, Vec<ExactMatrix>)> {
    let ell = wb.ell();
    let mut ker: BTreeMap<i64, ExactMatrix> =
        c.spaces().iter().map(|&(w, d)| (w, ExactMatrix::identity(ell, d))).collect();
    let mut labels = Vec::new();
    let mut maps = Vec::new();
    let mut next = 0u32;
    let mut bound = 0;
    for b in window_bounds(ell, c.max_weight().unwrap_or(0)) {
        bound = b;
        while next <= b {
            let mu = next;
            next += 1;
            let t = wb.tilting(mu);
            for f in hom_space(c, &t) {
                let hits = ker.iter().any(|(&w, k)| !f.block(w).mul(k).is_zero());
                if !hits {
                    continue;
                }
                for (&w, k) in ker.iter_mut() {
                    let b = f.block(w).mul(k);
                    *k = k.mul(&b.kernel());
                }
                ker.retain(|_, k| k.cols() > 0);
                labels.push(mu);
                maps.push(f.matrix);
                if ker.is_empty() {
                    return Ok((labels, maps));
                }
            }
        }
    }
    Err(Error::WindowTooSmall { bound })
}

/// Rank-tracking span of images inside the weight spaces of a module.
struct ImageSpan {
    cols: BTreeMap<i64, ExactMatrix>,
}

impl ImageSpan {
    fn new() -> Self {
        ImageSpan { cols: BTreeMap::new() }
    }

    /// Adds the image of `f`; returns whether the span grew.
    fn add(&mut self, f: &UMorphism) -> bool {
        let ell = f.ell();
        let mut grew = false;
        for &(w, d) in f.target.spaces() {
            let b = f.block(w);
            if b.cols() == 0 || b.is_zero() {
                continue;
            }
            let cur = self.cols.entry(w).or_insert_with(|| ExactMatrix::zeros(ell, d, 0));
            let both = ExactMatrix::hstack(ell, &[cur, &b], d);
            let (basis, _) = both.column_echelon();
            if basis.cols() > cur.cols() {
                *cur = basis;
                grew = true;
            }
        }
        grew
    }

    fn is_full(&self, m: &UModule) -> bool {
        m.spaces().iter().all(|&(w, d)| self.cols.get(&w).map_or(0, ExactMatrix::cols) == d)
    }
}

/// Vectors of weight `w` killed by E and E^(ℓ), as columns in the weight space.
fn primitive_space(m: &UModule, w: i64) -> ExactMatrix {
    let ell = m.ell();
    let d = m.weight_dim(w);
    let e = m.act(Generator::E, w);
    let ed = m.act(Generator::EDiv, w);
    ExactMatrix::vstack(ell, &[&e, &ed], d).kernel()
}

/// A tilting approximation `π : ⊕ T(μ_s) ↠ n` inducing surjections on Hom(Δ(λ), -) for all λ.
fn tilting_approximation(wb: &Workbench, n: &Arc<UModule>) -> Result<(Vec<u32>, Vec<ExactMatrix>)> {
    let ell = wb.ell();
    let mut labels = Vec::new();
    let mut maps = Vec::new();
    let mut span = ImageSpan::new();
    for &(w, _) in n.spaces() {
        if w < 0 {
            continue;
        }
        let prim = primitive_space(n, w);
        if prim.cols() == 0 {
            continue;
        }
        let t = wb.tilting(w as u32);
        let range = n.weight_range(w);
        let mut chosen = ExactMatrix::zeros(ell, prim.rows(), 0);
        for f in hom_space(&t, n) {
            let v = f.matrix.submatrix(range.clone(), 0..1);
            let both = ExactMatrix::hstack(ell, &[&chosen, &v], prim.rows());
            if both.rank() > chosen.cols() {
                chosen = both;
                span.add(&f);
                labels.push(w as u32);
                maps.push(f.matrix);
                if chosen.cols() == prim.cols() {
                    break;
                }
            }
        }
        if chosen.cols() < prim.cols() {
            return Err(Error::Construction(format!("primitive vectors of weight {w} do not extend to T({w})")));
        }
    }
    if span.is_full(n) {
        return Ok((labels, maps));
    }
    let mut next = 0u32;
    let mut bound = 0;
    for b in window_bounds(ell, n.max_weight().unwrap_or(0)) {
        bound = b;
        while next <= b {
            let mu = next;
            next += 1;
            for f in hom_space(&wb.tilting(mu), n) {
                if span.add(&f) {
                    labels.push(mu);
                    maps.push(f.matrix);
                    if span.is_full(n) {
                        return Ok((labels, maps));
                    }
                }
            }
        }
    }
    Err(Error::WindowTooSmall { bound })
}

/// Concatenated weight blocks of a weight-preserving matrix `source -> target`.
fn graded_entries(m: &ExactMatrix, source: &UModule, target: &UModule) -> Vec<S> {
    let mut out = Vec::new();
    for &(w, _) in source.spaces() {
        let b = m.submatrix(target.weight_range(w), source.weight_range(w));
        out.extend_from_slice(b.entries());
    }
    out
}

/// Finds `g_s : T(ν) -> T(μ_s)` with Σ π_s g_s = `target`.
fn lift_through(
    wb: &Workbench,
    nu: u32,
    s_labels: &[u32],
    pis: &[ExactMatrix],
    n: &UModule,
    target: &ExactMatrix,
) -> Result<Vec<Option<ExactMatrix>>> {
    let ell = wb.ell();
    let t = wb.tilting(nu);
    let mut cols: Vec<Vec<S>> = Vec::new();
    let mut owners: Vec<(usize, usize)> = Vec::new();
    let homs: Vec<Arc<Vec<UMorphism>>> = s_labels.iter().map(|&mu| wb.tilting_hom(nu, mu)).collect();
    for (s, hs) in homs.iter().enumerate() {
        for (b, h) in hs.iter().enumerate() {
            cols.push(graded_entries(&pis[s].mul(&h.matrix), &t, n));
            owners.push((s, b));
        }
    }
    let rhs = graded_entries(target, &t, n);
    let rows: Vec<usize> =
        (0..rhs.len()).filter(|&i| !rhs[i].is_zero() || cols.iter().any(|c| !c[i].is_zero())).collect();
    let a = ExactMatrix::from_fn(ell, rows.len(), cols.len(), |i, j| cols[j][rows[i]].clone());
    let b = ExactMatrix::from_fn(ell, rows.len(), 1, |i, _| rhs[rows[i]].clone());
    let x = a.solve(&b).ok_or_else(|| Error::Construction("differential does not lift through the approximation".into()))?;
    let mut out: Vec<Option<ExactMatrix>> = vec![None; s_labels.len()];
    for (j, &(s, bi)) in owners.iter().enumerate() {
        let c = x.get(j, 0);
        if c.is_zero() {
            continue;
        }
        let term = homs[s][bi].matrix.scale(c);
        out[s] = Some(match out[s].take() {
            Some(m) => m.add(&term),
            None => term,
        });
    }
    Ok(out.into_iter().map(|m| m.and_then(nz)).collect())
}

/// Replaces the unlabelled tilting part `np` of degree index `k` by canonical T(n)'s.
fn replace_with_tiltings(wb: &Workbench, x: &mut BlockComplex, k: usize, np: usize) -> Result<()> {
    let m = x.terms[k][np].module.clone();
    let pieces = wb.tilting_pieces(&m)?;
    if k > 0 {
        let d = &mut x.diffs[k - 1];
        let row = d.remove(np);
        for (i, (_, _, p)) in pieces.iter().enumerate() {
            d.insert(np + i, row.iter().map(|b| b.as_ref().and_then(|b| nz(p.mul(b)))).collect());
        }
    }
    if k < x.diffs.len() {
        for row in x.diffs[k].iter_mut() {
            let col = row.remove(np);
            for (i, (_, inc, _)) in pieces.iter().enumerate() {
                row.insert(np + i, col.as_ref().and_then(|b| nz(b.mul(inc))));
            }
        }
    }
    x.terms[k].remove(np);
    for (i, (n, _, _)) in pieces.iter().enumerate() {
        x.terms[k].insert(np + i, Part::tilting(wb, *n));
    }
    Ok(())
}

/// One cone replacement of the ∇-filtered part `np` in degree index `k`; returns the new
/// position (degree index, part index) of the kernel.
fn left_step(wb: &Workbench, x: &mut BlockComplex, mut k: usize, np: usize) -> Result<(usize, usize)> {
    let ell = wb.ell();
    let n = x.terms[k][np].module.clone();
    let (s_labels, pis) = tilting_approximation(wb, &n)?;
    let s_parts: Vec<Part> = s_labels.iter().map(|&mu| Part::tilting(wb, mu)).collect();
    let ssum = direct_sum(ell, &s_parts.iter().map(|p| p.module.clone()).collect::<Vec<_>>());
    let pi = UMorphism::new_unchecked(
        ssum.module.clone(),
        n.clone(),
        ssum.columns_from_parts(n.dim(), &pis.iter().collect::<Vec<_>>()),
    )?;
    let (kmod, iota) = kernel(&pi);
    debug_assert!(has_good_filtration(&kmod));

    if k == 0 {
        let rows = x.terms[0].len();
        x.terms.insert(0, Vec::new());
        x.diffs.insert(0, vec![Vec::new(); rows]);
        x.start -= 1;
        k = 1;
    }
    let y_parts = x.terms[k - 1].clone();
    let d_in = x.diffs[k - 1].clone();
    // g : Y -> S with π g = d^N
    let mut g: Vec<Vec<Option<ExactMatrix>>> = Vec::new(); // g[y][s]
    for (yi, y) in y_parts.iter().enumerate() {
        let nu = y.label.ok_or_else(|| Error::Construction("non-tilting term below the resolved degree".into()))?;
        g.push(match &d_in[np][yi] {
            Some(b) => lift_through(wb, nu, &s_labels, &pis, &n, b)?,
            None => vec![None; s_labels.len()],
        });
    }
    let a_idx: Vec<usize> = (0..x.terms[k].len()).filter(|&i| i != np).collect();

    // h : Z -> K with ι h = g d_{j-2}
    let mut h_row: Vec<Option<ExactMatrix>> = Vec::new();
    if k >= 2 {
        let dz = &x.diffs[k - 2];
        for (zi, z) in x.terms[k - 2].iter().enumerate() {
            let mut comps = Vec::new();
            for s in 0..s_labels.len() {
                let mut acc = ExactMatrix::zeros(ell, s_parts[s].dim(), z.dim());
                for yi in 0..y_parts.len() {
                    if let (Some(gy), Some(dy)) = (&g[yi][s], &dz[yi][zi]) {
                        acc.add_assign(&gy.mul(dy));
                    }
                }
                comps.push(acc);
            }
            let dense = ssum.rows_from_parts(z.dim(), &comps.iter().collect::<Vec<_>>());
            if dense.is_zero() {
                h_row.push(None);
                continue;
            }
            let gd = UMorphism::new_unchecked(z.module.clone(), ssum.module.clone(), dense)?;
            let h = factor_through_injection(&gd, &iota)
                .ok_or_else(|| Error::Construction("g ∘ d does not land in the kernel".into()))?;
            h_row.push(nz(h.matrix.neg()));
        }
    }

    // degree j: A ⊕ S, outgoing (d^A, d^N π)
    if k < x.diffs.len() {
        let d_out = x.diffs[k].clone();
        x.diffs[k] = d_out
            .iter()
            .map(|row| {
                let mut r: Vec<Option<ExactMatrix>> = a_idx.iter().map(|&a| row[a].clone()).collect();
                for pi_s in &pis {
                    r.push(row[np].as_ref().and_then(|b| nz(b.mul(pi_s))));
                }
                r
            })
            .collect();
    }
    // degree j-1 -> j: [[d^A, 0], [g, ι]]
    let mut d_mid: BlockMap = Vec::new();
    for &a in &a_idx {
        let mut r = d_in[a].clone();
        r.push(None);
        d_mid.push(r);
    }
    for s in 0..s_labels.len() {
        let mut r: Vec<Option<ExactMatrix>> = (0..y_parts.len()).map(|yi| g[yi][s].clone()).collect();
        r.push(nz(iota.matrix.select_rows(&ssum.index_maps[s])));
        d_mid.push(r);
    }
    x.diffs[k - 1] = d_mid;
    if k >= 2 {
        x.diffs[k - 2].push(h_row);
    }
    let mut new_j: Vec<Part> = a_idx.iter().map(|&a| x.terms[k][a].clone()).collect();
    new_j.extend(s_parts);
    x.terms[k] = new_j;
    x.terms[k - 1].push(Part::module(kmod));
    Ok((k - 1, y_parts.len()))
}

/// A bounded complex of tilting modules with cohomology `m` in degree 0, not necessarily
/// minimal.
pub fn tilting_complex_of(wb: &Workbench, m: &Arc<UModule>) -> Result<BlockComplex> {
    let ell = wb.ell();
    if m.ell() != ell {
        return Err(Error::EllMismatch(ell, m.ell()));
    }
    let mut x = BlockComplex::zero(ell);
    if m.is_zero() {
        return Ok(x);
    }
    let mut c = m.clone();
    let mut prev: Option<(crate::sl2::DirectSum, ExactMatrix)> = None;
    loop {
        if x.terms.len() > MAX_STEPS {
            return Err(Error::Construction(format!("no good filtration after {MAX_STEPS} cokernels")));
        }
        if has_good_filtration(&c) {
            break;
        }
        let (labels, maps) = embed_into_tiltings(wb, &c)?;
        let parts: Vec<Part> = labels.iter().map(|&n| Part::tilting(wb, n)).collect();
        let sum = direct_sum(ell, &parts.iter().map(|p| p.module.clone()).collect::<Vec<_>>());
        let emb = UMorphism::new_unchecked(c.clone(), sum.module.clone(), sum.rows_from_parts(c.dim(), &maps.iter().collect::<Vec<_>>()))?;
        if let Some((psum, p)) = &prev {
            let d = maps
                .iter()
                .map(|f| (0..psum.parts.len()).map(|col| nz(f.mul(&p.select_cols(&psum.index_maps[col])))).collect())
                .collect();
            x.diffs.push(d);
        }
        x.terms.push(parts);
        let (q, proj) = cokernel(&emb);
        prev = Some((sum, proj.matrix));
        c = q;
    }
    if c.is_zero() {
        return Ok(x);
    }
    if let Some((psum, p)) = &prev {
        x.diffs.push(vec![(0..psum.parts.len()).map(|col| nz(p.select_cols(&psum.index_maps[col]))).collect()]);
    }
    x.terms.push(vec![Part::module(c)]);
    let (mut k, mut np) = (x.terms.len() - 1, 0);
    for _ in 0..MAX_STEPS {
        if has_weyl_filtration(&x.terms[k][np].module) {
            replace_with_tiltings(wb, &mut x, k, np)?;
            return Ok(x.trim());
        }
        (k, np) = left_step(wb, &mut x, k, np)?;
    }
    Err(Error::Construction(format!("kernel not tilting after {MAX_STEPS} approximations")))
}
