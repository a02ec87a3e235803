//! Tensor products, duals, Frobenius twists and direct sums.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::arith::{CyclotomicScalar, ExactMatrix};
use crate::error::{Error, Result};

use super::module::{Generator, UModule};
use super::morphism::UMorphism;

type S = CyclotomicScalar;

pub(crate) fn add_block(big: &mut ExactMatrix, r0: usize, c0: usize, small: &ExactMatrix) {
    for i in 0..small.rows() {
        for j in 0..small.cols() {
            let v = small.get(i, j);
            if !v.is_zero() {
                *big.get_mut(r0 + i, c0 + j) += v;
            }
        }
    }
}

/// Basis layout of `M ⊗ N`: weight spaces by decreasing weight; inside a weight space the
/// sub-blocks `M_a ⊗ N_b` by decreasing `a`; inside a sub-block, Kronecker order.
#[derive(Clone, Debug)]
pub struct TensorLayout {
    spaces: Vec<(i64, usize)>,
    /// (a, b) -> (offset inside the weight space a+b, global offset)
    sub: BTreeMap<(i64, i64), (usize, usize)>,
}

impl TensorLayout {
    pub fn new(m: &UModule, n: &UModule) -> Self {
        let mut by_w: BTreeMap<i64, Vec<(i64, i64, usize)>> = BTreeMap::new();
        for &(a, da) in m.spaces() {
            for &(b, db) in n.spaces() {
                by_w.entry(a + b).or_default().push((a, b, da * db));
            }
        }
        let mut spaces = Vec::new();
        let mut sub = BTreeMap::new();
        let mut global = 0;
        for (w, parts) in by_w.into_iter().rev() {
            let mut local = 0;
            for (a, b, d) in parts {
                sub.insert((a, b), (local, global));
                local += d;
                global += d;
            }
            spaces.push((w, local));
        }
        TensorLayout { spaces, sub }
    }

    pub fn spaces(&self) -> &[(i64, usize)] {
        &self.spaces
    }

    /// Global index of `e_i ⊗ f_j` given the weights and in-space positions of the factors.
    pub fn index(&self, n: &UModule, a: i64, i: usize, b: i64, j: usize) -> Option<usize> {
        self.sub.get(&(a, b)).map(|&(_, g)| g + i * n.weight_dim(b) + j)
    }

    fn local(&self, a: i64, b: i64) -> Option<usize> {
        self.sub.get(&(a, b)).map(|p| p.0)
    }

    fn global(&self, a: i64, b: i64) -> Option<usize> {
        self.sub.get(&(a, b)).map(|p| p.1)
    }
}

struct DividedPowers<'a> {
    m: &'a UModule,
    cache: HashMap<(bool, u32, i64), ExactMatrix>,
}

impl<'a> DividedPowers<'a> {
    fn new(m: &'a UModule) -> Self {
        DividedPowers { m, cache: HashMap::new() }
    }

    fn get(&mut self, raising: bool, a: u32, w: i64) -> &ExactMatrix {
        let m = self.m;
        self.cache.entry((raising, a, w)).or_insert_with(|| m.divided_power(raising, a, w))
    }
}

/// `M ⊗ N` with the action through the comultiplication.
pub fn tensor_module(m: &UModule, n: &UModule) -> Result<UModule> {
    if m.ell() != n.ell() {
        return Err(Error::EllMismatch(m.ell(), n.ell()));
    }
    let ell = m.ell();
    let layout = TensorLayout::new(m, n);
    let dim_of = |w: i64| layout.spaces.iter().find(|s| s.0 == w).map_or(0, |s| s.1);
    let mut actions: [BTreeMap<i64, ExactMatrix>; 4] = Default::default();
    let mut pm = DividedPowers::new(m);
    let mut pn = DividedPowers::new(n);

    for (gi, g) in Generator::ALL.iter().enumerate() {
        let shift = g.shift(ell);
        for &(w, dw) in layout.spaces() {
            let dt = dim_of(w + shift);
            if dt == 0 {
                continue;
            }
            let mut block = ExactMatrix::zeros(ell, dt, dw);
            for &(a, da) in m.spaces() {
                let b = w - a;
                let db = n.weight_dim(b);
                if db == 0 {
                    continue;
                }
                let c0 = layout.local(a, b).unwrap();
                // (coefficient, left map, left shift, right map, right shift)
                let mut terms: Vec<(S, ExactMatrix, i64, ExactMatrix, i64)> = Vec::new();
                match g {
                    Generator::E => {
                        terms.push((S::one(ell), m.act(*g, a), 2, ExactMatrix::identity(ell, db), 0));
                        terms.push((S::zeta_pow(ell, a), ExactMatrix::identity(ell, da), 0, n.act(*g, b), 2));
                    }
                    Generator::F => {
                        terms.push((S::zeta_pow(ell, -b), m.act(*g, a), -2, ExactMatrix::identity(ell, db), 0));
                        terms.push((S::one(ell), ExactMatrix::identity(ell, da), 0, n.act(*g, b), -2));
                    }
                    Generator::EDiv | Generator::FDiv => {
                        let raising = *g == Generator::EDiv;
                        let sgn = if raising { 2 } else { -2 };
                        for p in 0..=ell {
                            let q = ell - p;
                            let (pi, qi) = (p as i64, q as i64);
                            if layout.local(a + sgn * pi, b + sgn * qi).is_none() {
                                continue;
                            }
                            let coeff = if raising {
                                S::zeta_pow(ell, pi * qi + qi * a)
                            } else {
                                S::zeta_pow(ell, pi * qi - pi * b)
                            };
                            let left = pm.get(raising, p, a).clone();
                            let right = pn.get(raising, q, b).clone();
                            terms.push((coeff, left, sgn * pi, right, sgn * qi));
                        }
                    }
                }
                for (coeff, left, sa, right, sb) in terms {
                    let Some(r0) = layout.local(a + sa, b + sb) else { continue };
                    if left.is_zero() || right.is_zero() {
                        continue;
                    }
                    let k = left.kron(&right).scale(&coeff);
                    add_block(&mut block, r0, c0, &k);
                }
            }
            actions[gi].insert(w, block);
        }
    }
    UModule::from_blocks(ell, layout.spaces.clone(), actions)
}

/// `f ⊗ g : M ⊗ N -> M' ⊗ N'`, where `source` and `target` are the tensor modules built by
/// [`tensor_module`] from the endpoints of `f` and `g`.
pub fn tensor_morphism(f: &UMorphism, g: &UMorphism, source: Arc<UModule>, target: Arc<UModule>) -> UMorphism {
    let ell = f.ell();
    let ls = TensorLayout::new(&f.source, &g.source);
    let lt = TensorLayout::new(&f.target, &g.target);
    let mut mat = ExactMatrix::zeros(ell, target.dim(), source.dim());
    for &(a, _) in f.source.spaces() {
        let fa = f.block(a);
        if fa.is_zero() {
            continue;
        }
        for &(b, _) in g.source.spaces() {
            let (Some(c0), Some(r0)) = (ls.global(a, b), lt.global(a, b)) else { continue };
            let gb = g.block(b);
            if gb.is_zero() {
                continue;
            }
            mat.set_block(r0, c0, &fa.kron(&gb));
        }
    }
    UMorphism { source, target, matrix: mat }
}

/// Position of each basis vector of `M` (its dual functional) in the basis of `M*`.
pub fn dual_index_map(m: &UModule) -> Vec<usize> {
    let mut out = vec![0; m.dim()];
    let mut acc = 0;
    for &(w, d) in m.spaces().iter().rev() {
        let r = m.weight_range(w);
        for (k, i) in r.enumerate() {
            out[i] = acc + k;
        }
        acc += d;
    }
    out
}

/// The dual module, acting by `x ↦ ρ(S(x))ᵀ` with S(K)=K⁻¹, S(E)=−K⁻¹E, S(F)=−FK,
/// S(E^(ℓ)) = −K^{-ℓ}E^(ℓ), S(F^(ℓ)) = −F^(ℓ)K^ℓ.
pub fn dual_module(m: &UModule) -> UModule {
    let ell = m.ell();
    let spaces: Vec<(i64, usize)> = m.spaces().iter().map(|&(w, d)| (-w, d)).collect();
    let mut actions: [BTreeMap<i64, ExactMatrix>; 4] = Default::default();
    for (gi, g) in Generator::ALL.iter().enumerate() {
        let s = g.shift(ell);
        for (&w, b) in m.blocks(*g) {
            let t = w + s;
            let coeff = match g {
                Generator::E => -S::zeta_pow(ell, -t),
                Generator::F => -S::zeta_pow(ell, w),
                Generator::EDiv | Generator::FDiv => -S::one(ell),
            };
            actions[gi].insert(-t, b.transpose().scale(&coeff));
        }
    }
    UModule::from_blocks(ell, spaces, actions).expect("dual shapes")
}

/// `f* : N* -> M*` for `f : M -> N`, between the given dual modules.
pub fn dual_morphism(f: &UMorphism, source_dual: Arc<UModule>, target_dual: Arc<UModule>) -> UMorphism {
    let pm = dual_index_map(&f.source);
    let pn = dual_index_map(&f.target);
    let mut mat = ExactMatrix::zeros(f.ell(), f.source.dim(), f.target.dim());
    for i in 0..f.matrix.rows() {
        for j in 0..f.matrix.cols() {
            let v = f.matrix.get(i, j);
            if !v.is_zero() {
                mat.set(pm[j], pn[i], v.clone());
            }
        }
    }
    UMorphism { source: source_dual, target: target_dual, matrix: mat }
}

/// Pullback of the (a+1)-dimensional simple sl₂-module through quantum Frobenius.
pub fn frobenius_twist(ell: u32, a: i64) -> Result<UModule> {
    if a < 0 {
        return Err(Error::InvalidArgument(format!("Frobenius twist needs a >= 0, got {a}")));
    }
    let l = ell as i64;
    let spaces: Vec<(i64, usize)> = (0..=a).map(|i| (l * (a - 2 * i), 1)).collect();
    let mut actions: [BTreeMap<i64, ExactMatrix>; 4] = Default::default();
    for i in 0..=a {
        let w = l * (a - 2 * i);
        if i > 0 {
            actions[Generator::EDiv as usize].insert(w, ExactMatrix::from_fn(ell, 1, 1, |_, _| S::from_int(ell, a - i + 1)));
        }
        if i < a {
            actions[Generator::FDiv as usize].insert(w, ExactMatrix::from_fn(ell, 1, 1, |_, _| S::from_int(ell, i + 1)));
        }
    }
    UModule::from_blocks(ell, spaces, actions)
}

/// A direct sum together with the positions of every summand's basis in the sum.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Arc<UModule>,
    pub parts: Vec<Arc<UModule>>,
    /// `index_maps[k][i]` is the global index of basis vector i of part k.
    pub index_maps: Vec<Vec<usize>>,
}

/// `⊕ parts`; inside each weight space the summands appear in order.
pub fn direct_sum(ell: u32, parts: &[Arc<UModule>]) -> DirectSum {
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    for p in parts {
        assert_eq!(p.ell(), ell, "direct sum of modules at different ℓ");
        for &(w, d) in p.spaces() {
            *dims.entry(w).or_default() += d;
        }
    }
    let spaces: Vec<(i64, usize)> = dims.iter().rev().map(|(&w, &d)| (w, d)).collect();
    // local offset of each part inside each weight space
    let mut local: Vec<BTreeMap<i64, usize>> = vec![BTreeMap::new(); parts.len()];
    let mut fill: BTreeMap<i64, usize> = BTreeMap::new();
    for (k, p) in parts.iter().enumerate() {
        for &(w, d) in p.spaces() {
            let f = fill.entry(w).or_default();
            local[k].insert(w, *f);
            *f += d;
        }
    }
    let mut actions: [BTreeMap<i64, ExactMatrix>; 4] = Default::default();
    for (gi, g) in Generator::ALL.iter().enumerate() {
        let s = g.shift(ell);
        for (k, p) in parts.iter().enumerate() {
            for (&w, b) in p.blocks(*g) {
                let src = dims[&w];
                let dst = dims[&(w + s)];
                let block = actions[gi].entry(w).or_insert_with(|| ExactMatrix::zeros(ell, dst, src));
                block.set_block(local[k][&(w + s)], local[k][&w], b);
            }
        }
    }
    let module = Arc::new(UModule::from_blocks(ell, spaces, actions).expect("direct sum shapes"));
    let index_maps = parts
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let mut v = Vec::with_capacity(p.dim());
            for &(w, d) in p.spaces() {
                let base = module.offset(w).unwrap() + local[k][&w];
                v.extend(base..base + d);
            }
            v
        })
        .collect();
    DirectSum { module, parts: parts.to_vec(), index_maps }
}

impl DirectSum {
    pub fn inclusion(&self, k: usize) -> UMorphism {
        let mut m = ExactMatrix::zeros(self.module.ell(), self.module.dim(), self.parts[k].dim());
        for (i, &g) in self.index_maps[k].iter().enumerate() {
            m.set(g, i, S::one(self.module.ell()));
        }
        UMorphism { source: self.parts[k].clone(), target: self.module.clone(), matrix: m }
    }

    pub fn projection(&self, k: usize) -> UMorphism {
        let mut m = ExactMatrix::zeros(self.module.ell(), self.parts[k].dim(), self.module.dim());
        for (i, &g) in self.index_maps[k].iter().enumerate() {
            m.set(i, g, S::one(self.module.ell()));
        }
        UMorphism { source: self.module.clone(), target: self.parts[k].clone(), matrix: m }
    }

    /// Assembles a matrix `⊕ src.parts -> ⊕ self.parts` from component matrices
    /// `blocks[row][col] : src.parts[col] -> self.parts[row]`.
    pub fn assemble_from(&self, src: &DirectSum, blocks: &[Vec<Option<&ExactMatrix>>]) -> ExactMatrix {
        let ell = self.module.ell();
        let mut m = ExactMatrix::zeros(ell, self.module.dim(), src.module.dim());
        for (r, row) in blocks.iter().enumerate() {
            for (c, b) in row.iter().enumerate() {
                let Some(b) = b else { continue };
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        let v = b.get(i, j);
                        if !v.is_zero() {
                            m.set(self.index_maps[r][i], src.index_maps[c][j], v.clone());
                        }
                    }
                }
            }
        }
        m
    }

    /// Matrix `⊕ parts -> X` whose restriction to part k is `parts[k]`.
    pub fn columns_from_parts(&self, rows: usize, parts: &[&ExactMatrix]) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.module.ell(), rows, self.module.dim());
        for (k, p) in parts.iter().enumerate() {
            for j in 0..p.cols() {
                let c = self.index_maps[k][j];
                for i in 0..rows {
                    m.set(i, c, p.get(i, j).clone());
                }
            }
        }
        m
    }

    /// Matrix `X -> ⊕ parts` whose component into part k is `parts[k]`.
    pub fn rows_from_parts(&self, cols: usize, parts: &[&ExactMatrix]) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.module.ell(), self.module.dim(), cols);
        for (k, p) in parts.iter().enumerate() {
            for i in 0..p.rows() {
                let r = self.index_maps[k][i];
                for j in 0..cols {
                    m.set(r, j, p.get(i, j).clone());
                }
            }
        }
        m
    }

    /// Component `part[col] -> part[row]` of a matrix between two direct sums.
    pub fn component(&self, src: &DirectSum, matrix: &ExactMatrix, row: usize, col: usize) -> ExactMatrix {
        let ri = &self.index_maps[row];
        let ci = &src.index_maps[col];
        ExactMatrix::from_fn(matrix.ell(), ri.len(), ci.len(), |i, j| matrix.get(ri[i], ci[j]).clone())
    }
}
