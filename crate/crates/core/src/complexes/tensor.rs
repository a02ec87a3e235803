//! Tensor products of tilting complexes, kept in block form.

use crate::error::{Error, Result};
use crate::sl2::{tensor_morphism, UMorphism};
use crate::workbench::Workbench;

use super::block::{BlockComplex, BlockMap, Part};

/// X ⊗ Y with every T(a) ⊗ T(b) split into indecomposable tiltings. The differential is
/// d ⊗ id + (−1)^j id ⊗ d' on X_j ⊗ Y_k, restricted to summands.
pub fn tensor_tilting_complexes(wb: &Workbench, x: &BlockComplex, y: &BlockComplex) -> Result<BlockComplex> {
    let ell = wb.ell();
    if x.ell != ell || y.ell != ell {
        return Err(Error::EllMismatch(ell, if x.ell != ell { x.ell } else { y.ell }));
    }
    if !x.is_tilting() || !y.is_tilting() {
        return Err(Error::InvalidArgument("tensor_tilting_complexes needs labelled parts".into()));
    }
    let (Some((xl, xh)), Some((yl, yh))) = (x.degree_range(), y.degree_range()) else {
        return Ok(BlockComplex::zero(ell));
    };
    // slots[n]: (j, k, part index in X_j, part index in Y_k, first summand index)
    let mut terms: Vec<Vec<Part>> = Vec::new();
    let mut slots: Vec<Vec<(i64, i64, usize, usize, usize)>> = Vec::new();
    for i in xl + yl..=xh + yh {
        let mut parts = Vec::new();
        let mut sl = Vec::new();
        for j in xl..=xh {
            let k = i - j;
            if k < yl || k > yh {
                continue;
            }
            for (pa, a) in x.parts(j).iter().enumerate() {
                for (pb, b) in y.parts(k).iter().enumerate() {
                    let split = wb.tilting_tensor(a.label.unwrap(), b.label.unwrap())?;
                    sl.push((j, k, pa, pb, parts.len()));
                    parts.extend(split.pieces.iter().map(|p| Part::tilting(wb, p.0)));
                }
            }
        }
        terms.push(parts);
        slots.push(sl);
    }
    let mut diffs = Vec::new();
    for n in 0..terms.len() - 1 {
        let mut d: BlockMap = vec![vec![None; terms[n].len()]; terms[n + 1].len()];
        for &(j, k, pa, pb, c0) in &slots[n] {
            let (a, b) = (&x.parts(j)[pa], &y.parts(k)[pb]);
            let src = wb.tilting_tensor(a.label.unwrap(), b.label.unwrap())?;
            for &(j2, k2, pa2, pb2, r0) in &slots[n + 1] {
                let (a2, b2) = (&x.parts(j2)[pa2], &y.parts(k2)[pb2]);
                let f = if j2 == j + 1 && k2 == k && pb2 == pb {
                    let Some(m) = &x.differential(j)[pa2][pa] else { continue };
                    let dx = UMorphism::new_unchecked(a.module.clone(), a2.module.clone(), m.clone())?;
                    (dx, UMorphism::identity(b.module.clone()), false)
                } else if j2 == j && k2 == k + 1 && pa2 == pa {
                    let Some(m) = &y.differential(k)[pb2][pb] else { continue };
                    let dy = UMorphism::new_unchecked(b.module.clone(), b2.module.clone(), m.clone())?;
                    (UMorphism::identity(a.module.clone()), dy, j.rem_euclid(2) == 1)
                } else {
                    continue;
                };
                let dst = wb.tilting_tensor(a2.label.unwrap(), b2.label.unwrap())?;
                let t = tensor_morphism(&f.0, &f.1, src.module.clone(), dst.module.clone()).matrix;
                let t = if f.2 { t.neg() } else { t };
                for (s, (_, inc, _)) in src.pieces.iter().enumerate() {
                    let ti = t.mul(inc);
                    for (r, (_, _, proj)) in dst.pieces.iter().enumerate() {
                        let comp = proj.mul(&ti);
                        if !comp.is_zero() {
                            d[r0 + r][c0 + s] = Some(comp);
                        }
                    }
                }
            }
        }
        diffs.push(d);
    }
    Ok(BlockComplex { ell, start: xl + yl, terms, diffs })
}
