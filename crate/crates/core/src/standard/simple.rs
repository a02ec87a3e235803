use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sl2::{image, UModule};

use super::hom::hom_space;
use super::weyl::{dual_weyl_module, weyl_module};

/// L(n), the image of the nonzero map Δ(n) → ∇(n).
pub fn simple_module(ell: u32, n: i64) -> Result<UModule> {
    let d = Arc::new(weyl_module(ell, n)?);
    let nb = Arc::new(dual_weyl_module(ell, n)?);
    let homs = hom_space(&d, &nb);
    if homs.len() != 1 {
        return Err(Error::Construction(format!("Hom(Δ({n}), ∇({n})) has dimension {}", homs.len())));
    }
    let (l, _) = image(&homs[0]);
    Ok(Arc::try_unwrap(l).unwrap_or_else(|a| (*a).clone()))
}
