//! Formal characters: finitely supported maps from integer weights to multiplicities.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    coeffs: BTreeMap<i64, i64>,
}

impl Character {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(weight: i64, mult: i64) -> Self {
        let mut c = Self::zero();
        c.add_term(weight, mult);
        c
    }

    /// χ(n), the Weyl character with weights n, n-2, …, -n.
    pub fn weyl(n: u32) -> Self {
        let mut c = Self::zero();
        for i in 0..=n as i64 {
            c.add_term(n as i64 - 2 * i, 1);
        }
        c
    }

    pub fn from_weights(weights: impl IntoIterator<Item = i64>) -> Self {
        let mut c = Self::zero();
        for w in weights {
            c.add_term(w, 1);
        }
        c
    }

    pub fn add_term(&mut self, weight: i64, mult: i64) {
        if mult == 0 {
            return;
        }
        let e = self.coeffs.entry(weight).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.coeffs.remove(&weight);
        }
    }

    pub fn get(&self, weight: i64) -> i64 {
        self.coeffs.get(&weight).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&w, &m)| (w, m))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|&m| m >= 0)
    }

    pub fn max_weight(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_weight(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn dim(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// m ↦ -m, the character of the dual.
    pub fn reflect(&self) -> Self {
        Character { coeffs: self.coeffs.iter().map(|(&w, &m)| (-w, m)).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Character { coeffs: self.coeffs.iter().map(|(&w, &m)| (w, m * k)).collect() }
    }

    /// Coordinates in the Weyl characters χ(n), peeled from the top weight. Returns `None`
    /// for characters that are not W-symmetric.
    pub fn weyl_coordinates(&self) -> Option<BTreeMap<u32, i64>> {
        let mut rest = self.clone();
        let mut out = BTreeMap::new();
        while let Some(top) = rest.max_weight() {
            if top < 0 {
                return None;
            }
            let m = rest.get(top);
            out.insert(top as u32, m);
            rest = &rest - &Character::weyl(top as u32).scale(m);
        }
        Some(out)
    }

    /// Expresses `self` in a unitriangular family `basis(n)` whose top weight is n with
    /// multiplicity one, peeling from the top.
    pub fn decompose_unitriangular(&self, mut basis: impl FnMut(u32) -> Character) -> Option<BTreeMap<u32, i64>> {
        let mut rest = self.clone();
        let mut out = BTreeMap::new();
        while let Some(top) = rest.max_weight() {
            if top < 0 {
                return None;
            }
            let m = rest.get(top);
            let b = basis(top as u32);
            debug_assert_eq!(b.max_weight(), Some(top));
            debug_assert_eq!(b.get(top), 1);
            *out.entry(top as u32).or_insert(0) += m;
            rest = &rest - &b.scale(m);
        }
        Some(out)
    }
}

impl Add for &Character {
    type Output = Character;
    fn add(self, rhs: &Character) -> Character {
        let mut out = self.clone();
        for (w, m) in rhs.iter() {
            out.add_term(w, m);
        }
        out
    }
}

impl Sub for &Character {
    type Output = Character;
    fn sub(self, rhs: &Character) -> Character {
        let mut out = self.clone();
        for (w, m) in rhs.iter() {
            out.add_term(w, -m);
        }
        out
    }
}

impl Mul for &Character {
    type Output = Character;
    fn mul(self, rhs: &Character) -> Character {
        let mut out = Character::zero();
        for (a, m) in self.iter() {
            for (b, n) in rhs.iter() {
                out.add_term(a + b, m * n);
            }
        }
        out
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().rev().map(|(w, m)| format!("{m}·e({w})")).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clebsch_gordan_in_weyl_coordinates() {
        let prod = &Character::weyl(1) * &Character::weyl(1);
        let coords = prod.weyl_coordinates().unwrap();
        assert_eq!(coords, BTreeMap::from([(2, 1), (0, 1)]));
        let prod = &(&Character::weyl(3) + &Character::weyl(1)) * &Character::weyl(1);
        assert_eq!(prod.weyl_coordinates().unwrap(), BTreeMap::from([(4, 1), (2, 2), (0, 1)]));
    }

    #[test]
    fn asymmetric_characters_have_no_weyl_coordinates() {
        assert!(Character::monomial(1, 1).weyl_coordinates().is_none());
    }
}
