//! Incremental sparse elimination for homogeneous linear systems.
//!
//! Used for Hom-space solving, where the intertwining equations are very sparse. Rows are reduced
//! against earlier pivots in insertion order; a reduced row never contains an earlier pivot
//! column, so back-substitution in reverse insertion order is valid.

use std::collections::{BTreeMap, HashMap};

use super::cyclotomic::CyclotomicScalar;

type S = CyclotomicScalar;

#[derive(Debug, Clone)]
pub struct SparseSystem {
    ell: u32,
    nvars: usize,
    pivots: Vec<(usize, Vec<(usize, S)>)>,
    pivot_index: HashMap<usize, usize>,
}

impl SparseSystem {
    pub fn new(ell: u32, nvars: usize) -> Self {
        SparseSystem { ell, nvars, pivots: Vec::new(), pivot_index: HashMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds the equation `Σ coeff·x_col = 0`. Returns whether the rank grew.
    pub fn add_equation(&mut self, entries: impl IntoIterator<Item = (usize, S)>) -> bool {
        let mut row: BTreeMap<usize, S> = BTreeMap::new();
        for (c, v) in entries {
            if v.is_zero() {
                continue;
            }
            match row.get_mut(&c) {
                Some(x) => *x += &v,
                None => {
                    row.insert(c, v);
                }
            }
        }
        row.retain(|_, v| !v.is_zero());
        if row.is_empty() {
            return false;
        }
        // eliminate pivots in insertion order
        let mut hits: Vec<usize> = row.keys().filter_map(|c| self.pivot_index.get(c).copied()).collect();
        while !hits.is_empty() {
            hits.sort_unstable();
            let idx = hits[0];
            let (pc, ref prow) = self.pivots[idx];
            if let Some(f) = row.remove(&pc) {
                for (c, v) in prow {
                    if *c == pc {
                        continue;
                    }
                    let d = &f * v;
                    match row.get_mut(c) {
                        Some(x) => {
                            *x -= &d;
                            if x.is_zero() {
                                row.remove(c);
                            }
                        }
                        None => {
                            row.insert(*c, -d);
                        }
                    }
                }
            }
            hits = row.keys().filter_map(|c| self.pivot_index.get(c).copied()).collect();
        }
        let Some((&pc, _)) = row.iter().next() else {
            return false;
        };
        let inv = row[&pc].inverse().expect("nonzero");
        let normalized: Vec<(usize, S)> =
            row.into_iter().map(|(c, v)| (c, if c == pc { S::one(self.ell) } else { &v * &inv })).collect();
        self.pivot_index.insert(pc, self.pivots.len());
        self.pivots.push((pc, normalized));
        true
    }

    /// Basis of the solution space, each vector dense of length `nvars`.
    pub fn kernel(&self) -> Vec<Vec<S>> {
        let free: Vec<usize> = (0..self.nvars).filter(|c| !self.pivot_index.contains_key(c)).collect();
        let mut out = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x = vec![S::zero(self.ell); self.nvars];
            x[f] = S::one(self.ell);
            for (pc, row) in self.pivots.iter().rev() {
                let mut acc = S::zero(self.ell);
                for (c, v) in row {
                    if c != pc && !x[*c].is_zero() {
                        acc -= &(v * &x[*c]);
                    }
                }
                x[*pc] = acc;
            }
            out.push(x);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ExactMatrix;

    #[test]
    fn agrees_with_dense_kernel() {
        let ell = 5;
        let z = |e| S::zeta_pow(ell, e);
        let rows: Vec<Vec<S>> = vec![
            vec![z(1), S::zero(ell), z(2), S::one(ell)],
            vec![S::zero(ell), z(3), S::one(ell), S::zero(ell)],
            vec![z(1), z(3), &z(2) + &S::one(ell), S::one(ell)],
        ];
        let dense = ExactMatrix::from_rows(ell, rows.clone()).unwrap();
        let mut sys = SparseSystem::new(ell, 4);
        for r in &rows {
            sys.add_equation(r.iter().cloned().enumerate());
        }
        assert_eq!(sys.rank(), dense.rank());
        let k = sys.kernel();
        assert_eq!(k.len(), 4 - dense.rank());
        for v in &k {
            assert!(dense.mul_vec(v).iter().all(S::is_zero));
        }
    }
}
