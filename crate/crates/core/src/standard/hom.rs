use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arith::{CyclotomicScalar, ExactMatrix, SparseSystem};
use crate::sl2::{Generator, UModule, UMorphism};

type S = CyclotomicScalar;

/// Variable layout for a weight-preserving map `M -> N`: one block per common weight.
struct Unknowns {
    blocks: BTreeMap<i64, (usize, usize, usize)>, // weight -> (first var, rows, cols)
    count: usize,
}

impl Unknowns {
    fn new(m: &UModule, n: &UModule) -> Self {
        let mut blocks = BTreeMap::new();
        let mut count = 0;
        for &(w, dm) in m.spaces() {
            let dn = n.weight_dim(w);
            if dn > 0 {
                blocks.insert(w, (count, dn, dm));
                count += dn * dm;
            }
        }
        Unknowns { blocks, count }
    }

    fn var(&self, w: i64, i: usize, j: usize) -> Option<usize> {
        self.blocks.get(&w).map(|&(o, _, c)| o + i * c + j)
    }
}

/// A basis of `Hom_U(M, N)`.
///
/// Homomorphisms preserve weights, so the unknowns are the weight blocks `f_w : M_w -> N_w`,
/// subject to `N(x) f_w = f_{w+s} M(x)` for x ∈ {E, F, E^(ℓ), F^(ℓ)}.
pub fn hom_space(m: &Arc<UModule>, n: &Arc<UModule>) -> Vec<UMorphism> {
    assert_eq!(m.ell(), n.ell(), "Hom between modules at different ℓ");
    let ell = m.ell();
    let u = Unknowns::new(m, n);
    if u.count == 0 {
        return vec![];
    }
    let mut sys = SparseSystem::new(ell, u.count);
    for g in Generator::ALL {
        let s = g.shift(ell);
        for &(w, dm) in m.spaces() {
            let t = w + s;
            let dnt = n.weight_dim(t);
            if dnt == 0 {
                continue;
            }
            let ng = n.block(g, w);
            let mg = m.block(g, w);
            if ng.is_none() && mg.is_none() {
                continue;
            }
            let dn = n.weight_dim(w);
            let dmt = m.weight_dim(t);
            for r in 0..dnt {
                for c in 0..dm {
                    let mut eq: Vec<(usize, S)> = Vec::new();
                    if let Some(ng) = ng {
                        for k in 0..dn {
                            let a = ng.get(r, k);
                            if !a.is_zero() {
                                if let Some(v) = u.var(w, k, c) {
                                    eq.push((v, a.clone()));
                                }
                            }
                        }
                    }
                    if let Some(mg) = mg {
                        for k in 0..dmt {
                            let a = mg.get(k, c);
                            if !a.is_zero() {
                                if let Some(v) = u.var(t, r, k) {
                                    eq.push((v, -a));
                                }
                            }
                        }
                    }
                    sys.add_equation(eq);
                }
            }
        }
    }
    sys.kernel()
        .into_iter()
        .map(|x| {
            let blocks = u.blocks.iter().map(|(&w, &(o, r, c))| {
                (w, ExactMatrix::from_fn(ell, r, c, |i, j| x[o + i * c + j].clone()))
            });
            UMorphism::from_blocks(m.clone(), n.clone(), blocks)
        })
        .collect()
}

pub fn hom_dim(m: &Arc<UModule>, n: &Arc<UModule>) -> usize {
    hom_space(m, n).len()
}

/// An isomorphism `M -> N` if one exists. Tries basis elements and a fixed family of
/// small integer combinations; sufficient when the Hom space is small or the modules are
/// indecomposable with local endomorphism rings.
pub fn find_isomorphism(m: &Arc<UModule>, n: &Arc<UModule>) -> Option<UMorphism> {
    if m.character() != n.character() {
        return None;
    }
    let basis = hom_space(m, n);
    for f in &basis {
        if f.is_isomorphism() {
            return Some(f.clone());
        }
    }
    let ell = m.ell();
    // deterministic pseudo-generic combinations
    for seed in 1..=8i64 {
        let mut acc = UMorphism::zero(m.clone(), n.clone());
        for (k, f) in basis.iter().enumerate() {
            let c = ((seed * 7 + k as i64 * 13) * (k as i64 + 3)) % 11 + 1;
            acc = acc.add(&f.scale(&S::from_int(ell, c)));
        }
        if acc.is_isomorphism() {
            return Some(acc);
        }
    }
    None
}
