// Gaussian elimination on a tilting complex and the tensor product of complexes.

use std::sync::Arc;

use tiltlab::arith::ExactMatrix;
use tiltlab::complexes::{is_minimal, minimalize, tensor_tilting_complexes, BlockComplex, Part};
use tiltlab::standard::simple_module;
use tiltlab::Workbench;

pub fn run_example() -> tiltlab::Result<()> {
    let wb = Workbench::new(3)?;
    let c = wb.minimal_tilting_complex(&Arc::new(simple_module(3, 3)?))?;
    println!("C_min(L(3)) = {:?}", c.complex.label_multisets());

    // add a contractible summand [T(4) = T(4)] and cancel it again
    let d = wb.tilting(4).dim();
    let id = BlockComplex {
        ell: 3,
        start: 0,
        terms: vec![vec![Part::tilting(&wb, 4)], vec![Part::tilting(&wb, 4)]],
        diffs: vec![vec![vec![Some(ExactMatrix::identity(3, d))]]],
    };
    let x = c.complex.direct_sum(&id);
    println!("with a contractible summand: {:?}, minimal: {}", x.label_multisets(), is_minimal(&x));
    let (y, _) = minimalize(&x, false);
    println!("after elimination: {:?}", y.label_multisets());

    let sq = tensor_tilting_complexes(&wb, &c.complex, &c.complex)?;
    let (m, _) = minimalize(&sq, false);
    println!("C_min(L(3)) ⊗ C_min(L(3)) minimalized: {:?}", m.label_multisets());
    let h = m.to_chain_complex().nonzero_cohomology();
    for (i, ch) in h {
        println!("H^{i} has dimension {}", ch.dim());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tiltlab::Result<()> {
    run_example()
}
