//! Gaussian elimination on complexes.
//!
//! If a component φ : A → B of d_i between summands is an isomorphism, write
//! d_i = [[φ, δ], [γ, ε]] : A ⊕ X → B ⊕ Y. The complex is homotopy equivalent to the one with
//! A and B removed and d_i replaced by ε − γ φ⁻¹ δ.

use crate::arith::ExactMatrix;
use crate::sl2::{direct_sum, UMorphism};

use super::block::{block_identity, block_mul, BlockComplex, BlockMap, Part};

/// Chain maps `f : X → X'` and `g : X' → X` between a complex and its minimalization, with
/// `f ∘ g = id`; `f[k]`, `g[k]` act in degree `start + k` of X.
#[derive(Clone, Debug)]
pub struct HomotopyWitness {
    pub f: Vec<BlockMap>,
    pub g: Vec<BlockMap>,
}

/// Whether a component between two parts is an isomorphism. Both parts must be the same
/// indecomposable tilting module; End(T(n)) is local with residue map "coefficient of the
/// highest weight vector", so invertibility is read off that single entry.
fn is_invertible(x: &BlockComplex, k: usize, r: usize, c: usize) -> bool {
    let (a, b) = (&x.terms[k][c], &x.terms[k + 1][r]);
    match (a.label, b.label, &x.diffs[k][r][c]) {
        (Some(la), Some(lb), Some(phi)) if la == lb => !phi.get(0, 0).is_zero(),
        _ => false,
    }
}

fn find_pivot(x: &BlockComplex) -> Option<(usize, usize, usize)> {
    for k in 0..x.diffs.len() {
        for c in 0..x.terms[k].len() {
            for r in 0..x.terms[k + 1].len() {
                if is_invertible(x, k, r, c) {
                    return Some((k, r, c));
                }
            }
        }
    }
    None
}

fn drop_row(m: &BlockMap, r: usize) -> BlockMap {
    m.iter().enumerate().filter(|(i, _)| *i != r).map(|(_, row)| row.clone()).collect()
}

fn drop_col(m: &BlockMap, c: usize) -> BlockMap {
    m.iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, b)| b.clone()).collect()).collect()
}

/// Whether no differential component is an isomorphism between equal tilting labels.
pub fn is_minimal(x: &BlockComplex) -> bool {
    find_pivot(x).is_none()
}

/// Cancels invertible components until none is left. Pivots are taken lowest degree first,
/// then by source part, then by target part.
pub fn minimalize(x: &BlockComplex, track_witness: bool) -> (BlockComplex, Option<HomotopyWitness>) {
    let mut cur = x.clone();
    let mut wit = track_witness.then(|| HomotopyWitness {
        f: cur.terms.iter().map(|t| block_identity(t.len(), t)).collect(),
        g: cur.terms.iter().map(|t| block_identity(t.len(), t)).collect(),
    });
    while let Some((k, r, c)) = find_pivot(&cur) {
        let d = cur.diffs[k].clone();
        let phi = d[r][c].clone().unwrap();
        let a = cur.terms[k][c].module.clone();
        let b = cur.terms[k + 1][r].module.clone();
        let phi_inv = UMorphism::new_unchecked(a, b, phi).unwrap().inverse().expect("invertible block").matrix;
        let n_src = cur.terms[k].len();
        let n_dst = cur.terms[k + 1].len();

        // new d_k on the remaining parts: ε − γ φ⁻¹ δ
        let mut nd: BlockMap = Vec::new();
        for i in 0..n_dst {
            if i == r {
                continue;
            }
            let mut row = Vec::new();
            for j in 0..n_src {
                if j == c {
                    continue;
                }
                let mut e = d[i][j].clone();
                if let (Some(g), Some(dl)) = (&d[i][c], &d[r][j]) {
                    let corr = g.mul(&phi_inv).mul(dl);
                    e = Some(match e {
                        Some(x) => x.sub(&corr),
                        None => corr.neg(),
                    });
                }
                row.push(e.filter(|m| !m.is_zero()));
            }
            nd.push(row);
        }

        if let Some(w) = wit.as_mut() {
            // f_k = [0, id] (drop A); f_{k+1} = [−γφ⁻¹, id] (fold B into the rest)
            let f_k = drop_row(&block_identity(n_src, &cur.terms[k]), c);
            let mut f_k1 = drop_row(&block_identity(n_dst, &cur.terms[k + 1]), r);
            let mut ri = 0;
            for i in 0..n_dst {
                if i == r {
                    continue;
                }
                if let Some(g) = &d[i][c] {
                    f_k1[ri][r] = Some(g.mul(&phi_inv).neg());
                }
                ri += 1;
            }
            // g_k = [−φ⁻¹δ; id]; g_{k+1} = [0; id]
            let mut g_k = drop_col(&block_identity(n_src, &cur.terms[k]), c);
            let mut cj = 0;
            for j in 0..n_src {
                if j == c {
                    continue;
                }
                if let Some(dl) = &d[r][j] {
                    g_k[c][cj] = Some(phi_inv.mul(dl).neg());
                }
                cj += 1;
            }
            let g_k1 = drop_col(&block_identity(n_dst, &cur.terms[k + 1]), r);
            w.f[k] = block_mul(&f_k, &w.f[k]);
            w.f[k + 1] = block_mul(&f_k1, &w.f[k + 1]);
            w.g[k] = block_mul(&w.g[k], &g_k);
            w.g[k + 1] = block_mul(&w.g[k + 1], &g_k1);
        }

        if k > 0 {
            cur.diffs[k - 1] = drop_row(&cur.diffs[k - 1], c);
        }
        if k + 1 < cur.diffs.len() {
            cur.diffs[k + 1] = drop_col(&cur.diffs[k + 1], r);
        }
        cur.diffs[k] = nd;
        cur.terms[k].remove(c);
        cur.terms[k + 1].remove(r);
    }
    let lo_trim = cur.terms.iter().take_while(|t| t.is_empty()).count();
    let trimmed = cur.clone().trim();
    if let Some(w) = wit.as_mut() {
        let n = trimmed.terms.len();
        w.f = w.f.drain(..).skip(lo_trim).take(n).collect();
        w.g = w.g.drain(..).skip(lo_trim).take(n).collect();
    }
    (trimmed, wit)
}

impl HomotopyWitness {
    /// The witnesses as module maps between the assembled complexes, degree by degree.
    pub fn as_morphisms(&self, x: &BlockComplex, y: &BlockComplex) -> (Vec<UMorphism>, Vec<UMorphism>) {
        let cx = x.to_chain_complex();
        let cy = y.to_chain_complex();
        let mut fs = Vec::new();
        let mut gs = Vec::new();
        let Some((lo, _)) = y.degree_range() else { return (fs, gs) };
        for (k, (f, g)) in self.f.iter().zip(&self.g).enumerate() {
            let i = lo + k as i64;
            let (sx, sy) = (cx.term(i), cy.term(i));
            let fm = assemble_dense(x.ell, f, x.parts(i), y.parts(i));
            let gm = assemble_dense(x.ell, g, y.parts(i), x.parts(i));
            fs.push(UMorphism::new_unchecked(sx.clone(), sy.clone(), fm).unwrap());
            gs.push(UMorphism::new_unchecked(sy, sx, gm).unwrap());
        }
        (fs, gs)
    }
}

fn assemble_dense(ell: u32, m: &BlockMap, src: &[Part], dst: &[Part]) -> ExactMatrix {
    let s = direct_sum(ell, &src.iter().map(|p| p.module.clone()).collect::<Vec<_>>());
    let d = direct_sum(ell, &dst.iter().map(|p| p.module.clone()).collect::<Vec<_>>());
    let blocks: Vec<Vec<Option<&ExactMatrix>>> = m.iter().map(|row| row.iter().map(Option::as_ref).collect()).collect();
    d.assemble_from(&s, &blocks)
}
