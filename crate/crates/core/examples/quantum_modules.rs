// Weight-graded modules over the divided-power quantum group: Weyl modules, tensor products
// and duals, with the defining relations checked exactly.

use tiltlab::sl2::{check_relations, dual_module, tensor_module};
use tiltlab::standard::{simple_module, weyl_module};

pub fn run_example() -> tiltlab::Result<()> {
    let ell = 3;
    let delta = weyl_module(ell, 4)?;
    let l1 = simple_module(ell, 1)?;
    let m = tensor_module(&delta, &l1)?;
    println!("Δ(4) ⊗ L(1): dim {}, weight spaces {:?}", m.dim(), m.spaces());
    println!("relations hold: {}", check_relations(&m).passed());
    let dual = dual_module(&delta);
    println!("Δ(4)*: weight spaces {:?}", dual.spaces());
    println!("L(4) at ℓ = 3: dim {}", simple_module(ell, 4)?.dim());
    Ok(())
}

#[allow(dead_code)]
fn main() -> tiltlab::Result<()> {
    run_example()
}
