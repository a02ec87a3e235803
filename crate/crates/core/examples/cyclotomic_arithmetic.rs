// Exact arithmetic in Q(ζ) for a primitive ℓ-th root of unity, and quantum integers.

use tiltlab::arith::{quantum_binomial, quantum_integer, CyclotomicScalar};

pub fn run_example() -> tiltlab::Result<()> {
    let ell = 5;
    let zeta = CyclotomicScalar::zeta_pow(ell, 1);
    println!("ζ = {zeta}");
    println!("ζ^5 = {}", zeta.pow(5));
    let x = zeta.try_add(&CyclotomicScalar::one(ell))?;
    println!("(1 + ζ)^-1 = {}", x.inverse()?);
    for n in 0..=6 {
        println!("[{n}] = {}", quantum_integer(n, ell));
    }
    println!("[7 choose 2] = {}", quantum_binomial(7, 2, ell)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> tiltlab::Result<()> {
    run_example()
}
