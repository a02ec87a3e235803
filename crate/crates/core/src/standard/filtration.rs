use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{Character, CyclotomicScalar};
use crate::sl2::{dual_module, quotient_module, submodule_generated, UModule};

type S = CyclotomicScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FiltrationSide {
    /// Weyl filtration, sections Δ(μ).
    Standard,
    /// Good filtration, sections ∇(μ).
    Costandard,
}

/// Peels a Δ- or ∇-filtration off `m`. Returns the section weights in peeling order
/// (largest first), or `None` if no such filtration exists.
pub fn peel_standard_filtration(m: &UModule, side: FiltrationSide) -> Option<Vec<u32>> {
    match side {
        FiltrationSide::Standard => peel_delta(Arc::new(m.clone())),
        FiltrationSide::Costandard => peel_delta(Arc::new(dual_module(m))),
    }
}

pub fn has_good_filtration(m: &UModule) -> bool {
    peel_standard_filtration(m, FiltrationSide::Costandard).is_some()
}

pub fn has_weyl_filtration(m: &UModule) -> bool {
    peel_standard_filtration(m, FiltrationSide::Standard).is_some()
}

fn peel_delta(mut m: Arc<UModule>) -> Option<Vec<u32>> {
    let mut out = Vec::new();
    // cheap necessary condition: the character is a nonnegative sum of Weyl characters
    let coords = m.character().weyl_coordinates()?;
    if coords.values().any(|&c| c < 0) {
        return None;
    }
    while let Some(mu) = m.max_weight() {
        if mu < 0 {
            return None;
        }
        let ell = m.ell();
        let range = m.weight_range(mu);
        let want = Character::weyl(mu as u32);
        let mut candidates: Vec<Vec<S>> = range
            .clone()
            .map(|i| (0..m.dim()).map(|j| if i == j { S::one(ell) } else { S::zero(ell) }).collect())
            .collect();
        if range.len() > 1 {
            let mut v = vec![S::zero(ell); m.dim()];
            for (k, i) in range.clone().enumerate() {
                v[i] = S::from_int(ell, k as i64 + 1);
            }
            candidates.push(v);
        }
        let mut step = None;
        for v in candidates {
            let (sub, incl) = submodule_generated(&m, &[v]);
            if sub.character() == want {
                step = Some(incl);
                break;
            }
        }
        let incl = step?;
        let (q, _) = quotient_module(&m, &incl).ok()?;
        m = q;
        out.push(mu as u32);
    }
    Some(out)
}
