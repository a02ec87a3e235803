use std::collections::BTreeMap;

use crate::arith::{quantum_binomial, ExactMatrix};
use crate::error::{Error, Result};
use crate::sl2::{dual_module, Generator, UModule};

/// The Weyl module Δ(n) on the basis m_0, …, m_n with m_i of weight n − 2i.
pub fn weyl_module(ell: u32, n: i64) -> Result<UModule> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("highest weight must be >= 0, got {n}")));
    }
    let l = ell as i64;
    let spaces = (0..=n).map(|i| (n - 2 * i, 1)).collect();
    let mut actions: [BTreeMap<i64, ExactMatrix>; 4] = Default::default();
    let scalar = |v: crate::arith::CyclotomicScalar| ExactMatrix::from_fn(ell, 1, 1, |_, _| v.clone());
    for i in 0..=n {
        let w = n - 2 * i;
        for (g, r) in [(Generator::E, 1), (Generator::EDiv, l)] {
            if i >= r {
                actions[g as usize].insert(w, scalar(quantum_binomial(n - i + r, r, ell)?));
            }
        }
        for (g, r) in [(Generator::F, 1), (Generator::FDiv, l)] {
            if i + r <= n {
                actions[g as usize].insert(w, scalar(quantum_binomial(i + r, r, ell)?));
            }
        }
    }
    UModule::from_blocks(ell, spaces, actions)
}

/// ∇(n) = Δ(n)*.
pub fn dual_weyl_module(ell: u32, n: i64) -> Result<UModule> {
    Ok(dual_module(&weyl_module(ell, n)?))
}
