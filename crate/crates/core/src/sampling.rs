//! Seeded sampling of test modules and short exact sequences.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::CyclotomicScalar;
use crate::error::Result;
use crate::sl2::{quotient_module, submodule_generated, tensor_module, UModule};
use crate::standard::{dual_weyl_module, simple_module, weyl_module};
use crate::workbench::Workbench;

/// The four standard families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Simple,
    Weyl,
    DualWeyl,
    Tilting,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Simple, Family::Weyl, Family::DualWeyl, Family::Tilting];

    pub fn symbol(self) -> &'static str {
        match self {
            Family::Simple => "L",
            Family::Weyl => "Δ",
            Family::DualWeyl => "∇",
            Family::Tilting => "T",
        }
    }
}

/// A named module such as `L(3)`.
#[derive(Clone, Debug)]
pub struct NamedModule {
    pub name: String,
    pub module: Arc<UModule>,
}

pub fn standard_module(wb: &Workbench, family: Family, n: u32) -> Result<NamedModule> {
    let ell = wb.ell();
    let module = match family {
        Family::Simple => Arc::new(simple_module(ell, n as i64)?),
        Family::Weyl => Arc::new(weyl_module(ell, n as i64)?),
        Family::DualWeyl => Arc::new(dual_weyl_module(ell, n as i64)?),
        Family::Tilting => wb.tilting(n),
    };
    Ok(NamedModule { name: format!("{}({n})", family.symbol()), module })
}

/// Parses names like `L(3)`, `D(4)`/`Δ(4)`, `N(2)`/`∇(2)`, `T(5)`.
pub fn parse_module_name(wb: &Workbench, s: &str) -> Result<NamedModule> {
    use crate::error::Error;
    let s = s.trim();
    let open = s.find('(').ok_or_else(|| Error::Parse(format!("expected F(n), got {s:?}")))?;
    if !s.ends_with(')') {
        return Err(Error::Parse(format!("expected F(n), got {s:?}")));
    }
    let n: u32 = s[open + 1..s.len() - 1].trim().parse().map_err(|_| Error::Parse(format!("bad weight in {s:?}")))?;
    let family = match &s[..open] {
        "L" => Family::Simple,
        "D" | "Δ" | "Delta" => Family::Weyl,
        "N" | "∇" | "Nabla" => Family::DualWeyl,
        "T" => Family::Tilting,
        f => return Err(Error::Parse(format!("unknown module family {f:?}"))),
    };
    standard_module(wb, family, n)
}

/// Parses `kind:n` with kind among `L`, `delta`, `nabla`, `T` (case-insensitive), or a name
/// accepted by [`parse_module_name`].
pub fn parse_module_spec(wb: &Workbench, s: &str) -> Result<NamedModule> {
    use crate::error::Error;
    let Some((kind, n)) = s.trim().split_once(':') else {
        return parse_module_name(wb, s);
    };
    let n: u32 = n.trim().parse().map_err(|_| Error::Parse(format!("bad weight in {s:?}")))?;
    let family = match kind.trim().to_ascii_lowercase().as_str() {
        "l" | "simple" => Family::Simple,
        "delta" | "d" | "weyl" => Family::Weyl,
        "nabla" | "n" | "dualweyl" => Family::DualWeyl,
        "t" | "tilting" => Family::Tilting,
        f => return Err(Error::Parse(format!("unknown module kind {f:?}, expected L, delta, nabla or T"))),
    };
    standard_module(wb, family, n)
}

/// 0 → a → b → c → 0 with a generated by random vectors of b.
#[derive(Clone, Debug)]
pub struct Ses {
    pub description: String,
    pub a: Arc<UModule>,
    pub b: Arc<UModule>,
    pub c: Arc<UModule>,
}

/// Deterministic sampler of modules and short exact sequences.
pub struct Sampler {
    rng: ChaCha8Rng,
    pub seed: u64,
    /// Largest highest weight of the standard modules used.
    pub max_weight: u32,
    /// Dimension cap for sampled tensor products.
    pub max_dim: usize,
    /// Cap on the highest weight of sampled tensor products.
    pub max_top: u32,
}

impl Sampler {
    pub fn new(seed: u64, max_weight: u32) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), seed, max_weight, max_dim: 24, max_top: 2 * max_weight }
    }

    pub fn standard(&mut self, wb: &Workbench) -> Result<NamedModule> {
        let f = *Family::ALL.choose(&mut self.rng).unwrap();
        let n = self.rng.gen_range(0..=self.max_weight);
        standard_module(wb, f, n)
    }

    /// A standard module or, with probability 1/2, a tensor product of two of them within the
    /// dimension cap.
    pub fn module(&mut self, wb: &Workbench) -> Result<NamedModule> {
        let a = self.standard(wb)?;
        if self.rng.gen_bool(0.5) {
            for _ in 0..8 {
                let b = self.standard(wb)?;
                let top = a.module.max_weight().unwrap_or(0) + b.module.max_weight().unwrap_or(0);
                if a.module.dim() * b.module.dim() <= self.max_dim && top <= self.max_top as i64 {
                    let m = tensor_module(&a.module, &b.module)?;
                    return Ok(NamedModule { name: format!("{}⊗{}", a.name, b.name), module: Arc::new(m) });
                }
            }
        }
        Ok(a)
    }

    fn small_vector(&mut self, m: &UModule) -> Vec<CyclotomicScalar> {
        let ell = m.ell();
        // a single weight space most of the time, a mixture otherwise
        let weights: Vec<i64> = m.spaces().iter().map(|s| s.0).collect();
        let pick: Vec<i64> = if self.rng.gen_bool(0.75) {
            vec![*weights.choose(&mut self.rng).unwrap()]
        } else {
            weights.choose_multiple(&mut self.rng, 2).copied().collect()
        };
        let mut v = vec![CyclotomicScalar::zero(ell); m.dim()];
        for w in pick {
            for i in m.weight_range(w) {
                v[i] = CyclotomicScalar::from_int(ell, self.rng.gen_range(-2..=2));
            }
        }
        v
    }

    /// A short exact sequence with nonzero outer terms when one is found in a few tries.
    pub fn ses(&mut self, wb: &Workbench) -> Result<Ses> {
        let mut last = None;
        for _ in 0..16 {
            let b = self.module(wb)?;
            let nvec = if self.rng.gen_bool(0.8) { 1 } else { 2 };
            let vs: Vec<_> = (0..nvec).map(|_| self.small_vector(&b.module)).collect();
            let (a, incl) = submodule_generated(&b.module, &vs);
            let (c, _) = quotient_module(&b.module, &incl)?;
            let s = Ses { description: format!("submodule of {} (dim {})", b.name, a.dim()), a, b: b.module, c };
            if !s.a.is_zero() && !s.c.is_zero() {
                return Ok(s);
            }
            last = Some(s);
        }
        Ok(last.unwrap())
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}
