// Indecomposable tilting modules T(n) and the splitting of T(a) ⊗ T(b).

use tiltlab::Workbench;

pub fn run_example() -> tiltlab::Result<()> {
    let wb = Workbench::new(3)?;
    for n in 0..=8 {
        let t = wb.tilting(n);
        let weights: Vec<(i64, i64)> = wb.tilting_character(n).iter().collect();
        println!("T({n}): dim {}, character {weights:?}", t.dim());
    }
    for (a, b) in [(3, 1), (2, 2), (4, 3)] {
        let split = wb.tilting_tensor(a, b)?;
        let labels: Vec<u32> = split.pieces.iter().map(|p| p.0).collect();
        println!("T({a}) ⊗ T({b}) = ⊕ T(n) for n in {labels:?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tiltlab::Result<()> {
    run_example()
}
