//! Exact arithmetic in the cyclotomic field Q(ζ) for ζ a primitive ℓ-th root of unity.
//!
//! Elements are coefficient vectors in the power basis `1, ζ, …, ζ^{φ(ℓ)-1}`, i.e. we work in
//! `Q[x]/(Φ_ℓ(x))`. Every product is reduced modulo `Φ_ℓ`, so two elements are equal iff their
//! coefficient vectors agree.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::rational::Rat;
use crate::error::{Error, Result};

pub type Coeffs = SmallVec<[Rat; 6]>;

/// Per-ℓ constants: the cyclotomic polynomial and the reduced powers of ζ.
#[derive(Debug)]
pub struct FieldTables {
    pub ell: u32,
    pub degree: usize,
    /// Coefficients of Φ_ℓ, lowest degree first, length `degree + 1` (monic).
    pub phi: Vec<i64>,
    /// `powers[e]` is ζ^e reduced, for `0 <= e < ℓ`.
    pub powers: Vec<Vec<i64>>,
}

fn poly_divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for k in (dd..num.len()).rev() {
        let c = rem[k];
        if c == 0 {
            continue;
        }
        quot[k - dd] = c;
        for (j, d) in den.iter().enumerate() {
            rem[k - dd + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = poly_divide_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

impl FieldTables {
    fn build(ell: u32) -> Self {
        let phi = cyclotomic_poly(ell);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(ell as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..ell {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[degree - 1];
            for j in (1..degree).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..degree {
                    cur[j] -= top * phi[j];
                }
            }
        }
        FieldTables { ell, degree, phi, powers }
    }

    pub fn get(ell: u32) -> Arc<FieldTables> {
        thread_local! {
            static LAST: std::cell::RefCell<Option<Arc<FieldTables>>> = const { std::cell::RefCell::new(None) };
        }
        if let Some(t) = LAST.with(|l| l.borrow().as_ref().filter(|t| t.ell == ell).cloned()) {
            return t;
        }
        let t = Self::get_shared(ell);
        LAST.with(|l| *l.borrow_mut() = Some(t.clone()));
        t
    }

    fn get_shared(ell: u32) -> Arc<FieldTables> {
        static TABLES: OnceLock<RwLock<HashMap<u32, Arc<FieldTables>>>> = OnceLock::new();
        let map = TABLES.get_or_init(Default::default);
        if let Some(t) = map.read().unwrap().get(&ell) {
            return t.clone();
        }
        let t = Arc::new(FieldTables::build(ell));
        map.write().unwrap().entry(ell).or_insert(t).clone()
    }
}

pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count()
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicScalar {
    ell: u32,
    coeffs: Coeffs,
}

impl CyclotomicScalar {
    pub fn validate_ell(ell: u32) -> Result<()> {
        if ell < 3 || ell % 2 == 0 {
            return Err(Error::InvalidArgument(format!("ell must be odd and >= 3, got {ell}")));
        }
        Ok(())
    }

    pub fn zero(ell: u32) -> Self {
        let d = FieldTables::get(ell).degree;
        CyclotomicScalar { ell, coeffs: SmallVec::from_elem(Rat::ZERO, d) }
    }

    pub fn one(ell: u32) -> Self {
        Self::from_rat(ell, Rat::ONE)
    }

    pub fn from_int(ell: u32, n: i64) -> Self {
        Self::from_rat(ell, Rat::from_int(n))
    }

    pub fn from_rat(ell: u32, r: Rat) -> Self {
        let mut z = Self::zero(ell);
        z.coeffs[0] = r;
        z
    }

    /// Builds an element from power-basis coefficients; length must be φ(ℓ).
    pub fn from_coeffs(ell: u32, coeffs: Vec<Rat>) -> Result<Self> {
        let d = FieldTables::get(ell).degree;
        if coeffs.len() != d {
            return Err(Error::Dimension(format!("expected {d} coefficients for ell={ell}, got {}", coeffs.len())));
        }
        Ok(CyclotomicScalar { ell, coeffs: coeffs.into() })
    }

    /// ζ^e for any integer e.
    pub fn zeta_pow(ell: u32, e: i64) -> Self {
        let t = FieldTables::get(ell);
        let e = e.rem_euclid(ell as i64) as usize;
        CyclotomicScalar { ell, coeffs: t.powers[e].iter().map(|&c| Rat::from_int(c)).collect() }
    }

    /// Reduces an integer vector indexed by exponent mod ℓ, Σ counts[e] ζ^e.
    pub fn from_exponent_counts(ell: u32, counts: &[num_bigint::BigInt]) -> Self {
        let t = FieldTables::get(ell);
        let mut acc: Vec<num_bigint::BigInt> = vec![Default::default(); t.degree];
        for (e, c) in counts.iter().enumerate() {
            if c == &num_bigint::BigInt::from(0) {
                continue;
            }
            for (j, p) in t.powers[e % ell as usize].iter().enumerate() {
                if *p != 0 {
                    acc[j] += c * p;
                }
            }
        }
        CyclotomicScalar { ell, coeffs: acc.into_iter().map(Rat::from_bigint).collect() }
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rat::is_zero)
    }

    /// Returns the rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rat> {
        self.coeffs[1..].iter().all(Rat::is_zero).then(|| &self.coeffs[0])
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ell != other.ell {
            Err(Error::EllMismatch(self.ell, other.ell))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self * other)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self * &other.inverse()?)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        CyclotomicScalar { ell: self.ell, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Multiplicative inverse, by solving the linear system `a · y = 1` over Q.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rat(self.ell, r.recip().unwrap()));
        }
        let d = self.coeffs.len();
        // column j of the multiplication matrix is a·ζ^j
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(d);
        for j in 0..d {
            let p = self * &Self::zeta_pow(self.ell, j as i64);
            cols.push(p.coeffs.to_vec());
        }
        // augmented rows [M | e0]
        let mut rows: Vec<Vec<Rat>> = (0..d)
            .map(|i| {
                let mut r: Vec<Rat> = (0..d).map(|j| cols[j][i].clone()).collect();
                r.push(if i == 0 { Rat::ONE } else { Rat::ZERO });
                r
            })
            .collect();
        for c in 0..d {
            let p = (c..d).find(|&r| !rows[r][c].is_zero()).ok_or(Error::DivisionByZero)?;
            rows.swap(c, p);
            let inv = rows[c][c].recip().unwrap();
            for x in rows[c].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot = rows[c].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != c && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        Ok(CyclotomicScalar { ell: self.ell, coeffs: rows.into_iter().map(|mut r| r.pop().unwrap()).collect() })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ell);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl<'a> Add<&'a CyclotomicScalar> for &'a CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn add(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        assert_eq!(self.ell, rhs.ell, "mismatched ell");
        CyclotomicScalar { ell: self.ell, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a CyclotomicScalar> for &'a CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn sub(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        assert_eq!(self.ell, rhs.ell, "mismatched ell");
        CyclotomicScalar { ell: self.ell, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl<'a> Mul<&'a CyclotomicScalar> for &'a CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn mul(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        assert_eq!(self.ell, rhs.ell, "mismatched ell");
        if let Some(r) = rhs.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(r);
        }
        let d = self.coeffs.len();
        let mut prod: SmallVec<[Rat; 12]> = SmallVec::from_elem(Rat::ZERO, 2 * d - 1);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += &(a * b);
                }
            }
        }
        let t = FieldTables::get(self.ell);
        for k in (d..2 * d - 1).rev() {
            if prod[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut prod[k]);
            for (j, &pj) in t.phi[..d].iter().enumerate() {
                if pj != 0 {
                    prod[k - d + j] -= &(&c * &Rat::from_int(pj));
                }
            }
        }
        prod.truncate(d);
        CyclotomicScalar { ell: self.ell, coeffs: prod.into_iter().collect() }
    }
}

impl Neg for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        CyclotomicScalar { ell: self.ell, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Neg for CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        -&self
    }
}

impl AddAssign<&CyclotomicScalar> for CyclotomicScalar {
    fn add_assign(&mut self, rhs: &CyclotomicScalar) {
        assert_eq!(self.ell, rhs.ell, "mismatched ell");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&CyclotomicScalar> for CyclotomicScalar {
    fn sub_assign(&mut self, rhs: &CyclotomicScalar) {
        assert_eq!(self.ell, rhs.ell, "mismatched ell");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl fmt::Display for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})ζ")?,
                _ => write!(f, "({c})ζ^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[ℓ={}] {}", self.ell, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(ell: u32, e: i64) -> CyclotomicScalar {
        CyclotomicScalar::zeta_pow(ell, e)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(15), vec![1, -1, 0, 1, -1, 1, 0, -1, 1]);
        assert_eq!(euler_phi(15), 8);
    }

    #[test]
    fn root_of_unity_identities() {
        for ell in [3u32, 5, 7, 9, 15] {
            assert!((&z(ell, 1) * &z(ell, ell as i64 - 1)).is_one());
            assert!(z(ell, 1).pow(ell).is_one());
            for k in 1..ell {
                assert!(!z(ell, 1).pow(k).is_one());
            }
        }
        let s = &z(3, 1) + &z(3, 2);
        assert_eq!(s, CyclotomicScalar::from_int(3, -1));
    }

    #[test]
    fn inverse_of_one_plus_zeta() {
        let a = &CyclotomicScalar::one(5) + &z(5, 1);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
    }

    #[test]
    fn errors_are_explicit() {
        assert!(matches!(CyclotomicScalar::zero(5).inverse(), Err(Error::DivisionByZero)));
        assert!(matches!(z(3, 1).try_mul(&z(5, 1)), Err(Error::EllMismatch(3, 5))));
        assert!(z(3, 1).try_div(&CyclotomicScalar::zero(3)).is_err());
    }
}
