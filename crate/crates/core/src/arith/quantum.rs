//! Quantum integers and Gaussian binomials specialized at ζ.
//!
//! Binomials are computed in the group ring `Z[x]/(x^ℓ - 1)` through the balanced q-Pascal
//! recursion and only then reduced modulo Φ_ℓ, so no quantum factorial is ever inverted.

use num_bigint::BigInt;
use num_traits::Zero;

use super::cyclotomic::CyclotomicScalar;
use crate::error::{Error, Result};

fn shifted_add(acc: &mut [BigInt], src: &[BigInt], shift: i64) {
    let ell = acc.len() as i64;
    for (e, c) in src.iter().enumerate() {
        if !c.is_zero() {
            acc[(e as i64 + shift).rem_euclid(ell) as usize] += c;
        }
    }
}

/// `[n]_ζ = (ζ^n - ζ^{-n}) / (ζ - ζ^{-1})`, for any integer n.
pub fn quantum_integer(n: i64, ell: u32) -> CyclotomicScalar {
    if n < 0 {
        return -quantum_integer(-n, ell);
    }
    let mut counts = vec![BigInt::zero(); ell as usize];
    for j in 0..n {
        let e = (n - 1 - 2 * j).rem_euclid(ell as i64) as usize;
        counts[e] += 1;
    }
    CyclotomicScalar::from_exponent_counts(ell, &counts)
}

/// The balanced Gaussian binomial `[n choose k]_ζ`.
pub fn quantum_binomial(n: i64, k: i64, ell: u32) -> Result<CyclotomicScalar> {
    if k < 0 || k > n {
        return Err(Error::InvalidArgument(format!("quantum binomial needs 0 <= k <= n, got n={n}, k={k}")));
    }
    let k = k.min(n - k) as usize;
    let l = ell as usize;
    // row[j] holds [m choose j] as exponent counts mod ℓ
    let mut one = vec![BigInt::zero(); l];
    one[0] = BigInt::from(1);
    let mut row: Vec<Vec<BigInt>> = vec![one];
    for m in 1..=n {
        let top = (m as usize).min(k);
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(top + 1);
        for j in 0..=top {
            let mut acc = vec![BigInt::zero(); l];
            if j < row.len() {
                shifted_add(&mut acc, &row[j], -(j as i64));
            }
            if j >= 1 {
                shifted_add(&mut acc, &row[j - 1], m - j as i64);
            }
            next.push(acc);
        }
        row = next;
    }
    Ok(CyclotomicScalar::from_exponent_counts(ell, &row[k]))
}

/// `[n]! = [1][2]…[n]`; vanishes for n ≥ ℓ.
pub fn quantum_factorial(n: i64, ell: u32) -> CyclotomicScalar {
    (1..=n).fold(CyclotomicScalar::one(ell), |acc, j| &acc * &quantum_integer(j, ell))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: evaluate the defining Laurent sum term by term in the field.
    fn brute_quantum_integer(n: i64, ell: u32) -> CyclotomicScalar {
        let mut acc = CyclotomicScalar::zero(ell);
        let mut e = n - 1;
        while e >= -(n - 1) {
            acc = &acc + &CyclotomicScalar::zeta_pow(ell, e);
            e -= 2;
        }
        acc
    }

    #[test]
    fn small_values() {
        assert!(quantum_integer(1, 7).is_one());
        assert!(quantum_integer(3, 3).is_zero());
        assert!(quantum_integer(10, 5).is_zero());
        let b = quantum_binomial(4, 1, 3).unwrap();
        assert_eq!(b, brute_quantum_integer(4, 3));
        assert_eq!(b, quantum_integer(4, 3));
    }

    #[test]
    fn binomials_match_factorial_quotient_below_ell() {
        for ell in [3u32, 5, 7] {
            for n in 0..ell as i64 {
                for k in 0..=n {
                    let b = quantum_binomial(n, k, ell).unwrap();
                    let lhs = &b * &(&quantum_factorial(k, ell) * &quantum_factorial(n - k, ell));
                    assert_eq!(lhs, quantum_factorial(n, ell));
                    assert!(!b.is_zero(), "[{n} choose {k}] vanished at ell={ell}");
                }
            }
        }
    }

    #[test]
    fn quantum_lucas_at_ell() {
        // [aℓ+b choose ℓ] = a at a primitive ℓ-th root (ℓ odd)
        for ell in [3u32, 5] {
            for a in 0..4i64 {
                for b in 0..ell as i64 {
                    let n = a * ell as i64 + b;
                    if n < ell as i64 {
                        continue;
                    }
                    let v = quantum_binomial(n, ell as i64, ell).unwrap();
                    assert_eq!(v, CyclotomicScalar::from_int(ell, a), "n={n} ell={ell}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_range() {
        assert!(quantum_binomial(3, 4, 5).is_err());
        assert!(quantum_binomial(3, -1, 5).is_err());
    }
}
