use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{quantum_factorial, Character, CyclotomicScalar, ExactMatrix, Rat};
use crate::error::{Error, Result};

type S = CyclotomicScalar;

/// The non-Cartan generators. `K` acts diagonally on weight spaces and is not stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    E,
    F,
    /// The divided power E^(ℓ).
    EDiv,
    /// The divided power F^(ℓ).
    FDiv,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::E, Generator::F, Generator::EDiv, Generator::FDiv];

    /// Weight shift of the generator.
    pub fn shift(self, ell: u32) -> i64 {
        match self {
            Generator::E => 2,
            Generator::F => -2,
            Generator::EDiv => 2 * ell as i64,
            Generator::FDiv => -2 * ell as i64,
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::E => "E",
            Generator::F => "F",
            Generator::EDiv => "E_div_ell",
            Generator::FDiv => "F_div_ell",
        }
    }
}

/// A finite-dimensional type-one module over U_ζ(sl₂).
///
/// The basis consists of weight vectors, grouped into weight spaces listed by strictly
/// decreasing weight. `K` acts on the weight-m space by ζ^m. Each of the four remaining
/// generators is stored as a family of blocks `M_m → M_{m+shift}` keyed by the source weight;
/// a missing block is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UModule {
    ell: u32,
    spaces: Vec<(i64, usize)>,
    offsets: Vec<usize>,
    actions: [BTreeMap<i64, ExactMatrix>; 4],
}

impl std::fmt::Debug for UModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "UModule(ℓ={}, dim={}, char={:?})", self.ell, self.dim(), self.character())
    }
}

impl UModule {
    /// Assembles a module from weight spaces and generator blocks; block shapes are validated.
    pub fn from_blocks(
        ell: u32,
        mut spaces: Vec<(i64, usize)>,
        actions: [BTreeMap<i64, ExactMatrix>; 4],
    ) -> Result<Self> {
        CyclotomicScalar::validate_ell(ell)?;
        spaces.retain(|&(_, d)| d > 0);
        spaces.sort_by(|a, b| b.0.cmp(&a.0));
        if spaces.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidArgument("repeated weight space".into()));
        }
        let mut offsets = Vec::with_capacity(spaces.len());
        let mut acc = 0;
        for &(_, d) in &spaces {
            offsets.push(acc);
            acc += d;
        }
        let mut m = UModule { ell, spaces, offsets, actions: Default::default() };
        for (g, blocks) in Generator::ALL.iter().zip(actions) {
            for (w, block) in blocks {
                if block.ell() != ell {
                    return Err(Error::EllMismatch(ell, block.ell()));
                }
                let (src, dst) = (m.weight_dim(w), m.weight_dim(w + g.shift(ell)));
                if block.rows() != dst || block.cols() != src {
                    return Err(Error::Dimension(format!(
                        "{} block at weight {w} is {}x{}, expected {dst}x{src}",
                        g.name(),
                        block.rows(),
                        block.cols()
                    )));
                }
                if src > 0 && dst > 0 && !block.is_zero() {
                    m.actions[g.index()].insert(w, block);
                }
            }
        }
        Ok(m)
    }

    pub fn zero(ell: u32) -> Self {
        UModule { ell, spaces: vec![], offsets: vec![], actions: Default::default() }
    }

    pub fn trivial(ell: u32) -> Self {
        Self::from_blocks(ell, vec![(0, 1)], Default::default()).expect("trivial module")
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn dim(&self) -> usize {
        self.spaces.iter().map(|s| s.1).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.is_empty()
    }

    /// Weight spaces as `(weight, dim)`, by decreasing weight.
    pub fn spaces(&self) -> &[(i64, usize)] {
        &self.spaces
    }

    fn position(&self, w: i64) -> Option<usize> {
        self.spaces.binary_search_by(|probe| w.cmp(&probe.0)).ok()
    }

    pub fn weight_dim(&self, w: i64) -> usize {
        self.position(w).map_or(0, |p| self.spaces[p].1)
    }

    /// Global index of the first basis vector of weight `w`.
    pub fn offset(&self, w: i64) -> Option<usize> {
        self.position(w).map(|p| self.offsets[p])
    }

    pub fn weight_range(&self, w: i64) -> std::ops::Range<usize> {
        match self.position(w) {
            Some(p) => self.offsets[p]..self.offsets[p] + self.spaces[p].1,
            None => 0..0,
        }
    }

    /// The weight of every basis vector, in basis order.
    pub fn basis_weights(&self) -> Vec<i64> {
        self.spaces.iter().flat_map(|&(w, d)| std::iter::repeat(w).take(d)).collect()
    }

    pub fn max_weight(&self) -> Option<i64> {
        self.spaces.first().map(|s| s.0)
    }

    pub fn character(&self) -> Character {
        let mut c = Character::zero();
        for &(w, d) in &self.spaces {
            c.add_term(w, d as i64);
        }
        c
    }

    /// The stored block of generator `g` out of weight `w`, if nonzero.
    pub fn block(&self, g: Generator, w: i64) -> Option<&ExactMatrix> {
        self.actions[g.index()].get(&w)
    }

    /// The block of `g` out of weight `w`, materialized (possibly zero or empty).
    pub fn act(&self, g: Generator, w: i64) -> ExactMatrix {
        match self.block(g, w) {
            Some(b) => b.clone(),
            None => ExactMatrix::zeros(self.ell, self.weight_dim(w + g.shift(self.ell)), self.weight_dim(w)),
        }
    }

    pub fn blocks(&self, g: Generator) -> &BTreeMap<i64, ExactMatrix> {
        &self.actions[g.index()]
    }

    /// `X^n` restricted to weight `w`, for X = E or F.
    pub fn power(&self, g: Generator, n: u32, w: i64) -> ExactMatrix {
        let s = g.shift(self.ell);
        let mut acc = ExactMatrix::identity(self.ell, self.weight_dim(w));
        let mut cur = w;
        for _ in 0..n {
            acc = self.act(g, cur).mul(&acc);
            cur += s;
        }
        acc
    }

    /// The divided power `X^(a)` on weight `w`, for X ∈ {E, F} and `0 <= a <= ℓ`.
    pub fn divided_power(&self, raising: bool, a: u32, w: i64) -> ExactMatrix {
        let (g, gd) = if raising { (Generator::E, Generator::EDiv) } else { (Generator::F, Generator::FDiv) };
        if a == self.ell {
            return self.act(gd, w);
        }
        let p = self.power(g, a, w);
        let fact = quantum_factorial(a as i64, self.ell).inverse().expect("[a]! invertible below ell");
        p.scale(&fact)
    }

    /// Dense matrix of `g` in the full basis.
    pub fn generator_matrix(&self, g: Generator) -> ExactMatrix {
        let n = self.dim();
        let mut out = ExactMatrix::zeros(self.ell, n, n);
        for (w, b) in &self.actions[g.index()] {
            let r0 = self.offset(w + g.shift(self.ell)).unwrap();
            let c0 = self.offset(*w).unwrap();
            out.set_block(r0, c0, b);
        }
        out
    }

    /// Dense matrix of K^e.
    pub fn k_matrix_pow(&self, e: i64) -> ExactMatrix {
        let diag = self.basis_weights().into_iter().map(|w| S::zeta_pow(self.ell, e * w)).collect();
        ExactMatrix::diagonal(self.ell, diag)
    }

    pub fn k_matrix(&self) -> ExactMatrix {
        self.k_matrix_pow(1)
    }

    /// Builds a module from dense generator matrices over a weight basis. The basis weights
    /// must be non-increasing; every generator must respect the grading and `K` must be the
    /// diagonal ζ^weight matrix.
    pub fn from_dense(ell: u32, weights: &[i64], k: &ExactMatrix, gens: [&ExactMatrix; 4]) -> Result<Self> {
        CyclotomicScalar::validate_ell(ell)?;
        let n = weights.len();
        if weights.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument("basis weights must be non-increasing".into()));
        }
        let mut spaces: Vec<(i64, usize)> = Vec::new();
        for &w in weights {
            match spaces.last_mut() {
                Some((lw, d)) if *lw == w => *d += 1,
                _ => spaces.push((w, 1)),
            }
        }
        let expect_k = ExactMatrix::diagonal(ell, weights.iter().map(|&w| S::zeta_pow(ell, w)).collect());
        if k != &expect_k {
            return Err(Error::InvalidArgument("K is not the diagonal weight matrix".into()));
        }
        let shell = UModule::from_blocks(ell, spaces.clone(), Default::default())?;
        let mut actions: [BTreeMap<i64, ExactMatrix>; 4] = Default::default();
        for (gi, (g, mat)) in Generator::ALL.iter().zip(gens).enumerate() {
            if mat.rows() != n || mat.cols() != n {
                return Err(Error::Dimension(format!("{} must be {n}x{n}", g.name())));
            }
            for i in 0..n {
                for j in 0..n {
                    if !mat.get(i, j).is_zero() && weights[i] != weights[j] + g.shift(ell) {
                        return Err(Error::InvalidArgument(format!(
                            "{} entry ({i},{j}) does not respect the weight grading",
                            g.name()
                        )));
                    }
                }
            }
            for &(w, _) in &spaces {
                let t = w + g.shift(ell);
                if shell.weight_dim(t) == 0 {
                    continue;
                }
                let b = mat.submatrix(shell.weight_range(t), shell.weight_range(w));
                actions[gi].insert(w, b);
            }
        }
        UModule::from_blocks(ell, spaces, actions)
    }

    pub fn to_json(&self) -> ModuleJson {
        let enc = |m: &ExactMatrix| m.entries().iter().map(|s| s.coeffs().to_vec()).collect::<Vec<_>>();
        ModuleJson {
            ell: self.ell,
            dim: self.dim(),
            weights: self.basis_weights(),
            k: enc(&self.k_matrix()),
            e: enc(&self.generator_matrix(Generator::E)),
            f: enc(&self.generator_matrix(Generator::F)),
            e_div_ell: enc(&self.generator_matrix(Generator::EDiv)),
            f_div_ell: enc(&self.generator_matrix(Generator::FDiv)),
        }
    }

    pub fn from_json(j: &ModuleJson) -> Result<Self> {
        let dec = |entries: &Vec<Vec<Rat>>| -> Result<ExactMatrix> {
            if entries.len() != j.dim * j.dim {
                return Err(Error::Dimension("entry count must be dim*dim".into()));
            }
            let vals = entries
                .iter()
                .map(|c| CyclotomicScalar::from_coeffs(j.ell, c.clone()))
                .collect::<Result<Vec<_>>>()?;
            let mut it = vals.into_iter();
            Ok(ExactMatrix::from_fn(j.ell, j.dim, j.dim, |_, _| it.next().unwrap()))
        };
        if j.weights.len() != j.dim {
            return Err(Error::Dimension("weights length must equal dim".into()));
        }
        let k = dec(&j.k)?;
        let (e, f, ed, fd) = (dec(&j.e)?, dec(&j.f)?, dec(&j.e_div_ell)?, dec(&j.f_div_ell)?);
        UModule::from_dense(j.ell, &j.weights, &k, [&e, &f, &ed, &fd])
    }

    /// A stable content fingerprint (SHA-256 of the canonical JSON).
    pub fn fingerprint(&self) -> String {
        use sha2::{Digest, Sha256};
        let json = serde_json::to_vec(&self.to_json()).expect("serializable");
        hex::encode(Sha256::digest(&json))
    }
}

/// Canonical JSON form: ℓ, dimension, basis weights, and the five generator matrices as
/// row-major lists of entries, each entry a vector of rational coefficients in the power basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub ell: u32,
    pub dim: usize,
    pub weights: Vec<i64>,
    #[serde(rename = "K")]
    pub k: Vec<Vec<Rat>>,
    #[serde(rename = "E")]
    pub e: Vec<Vec<Rat>>,
    #[serde(rename = "F")]
    pub f: Vec<Vec<Rat>>,
    #[serde(rename = "E_div_ell")]
    pub e_div_ell: Vec<Vec<Rat>>,
    #[serde(rename = "F_div_ell")]
    pub f_div_ell: Vec<Vec<Rat>>,
}
