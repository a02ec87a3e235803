// Thick tensor ideals of tilting modules in a window and membership of modules in ⟨I⟩.

use tiltlab::ideals::{enumerate_tilt_ideals, generate_tilt_ideal, RepIdealHandle, TensorTable};
use tiltlab::sampling::parse_module_spec;
use tiltlab::Workbench;

pub fn run_example() -> tiltlab::Result<()> {
    let wb = Workbench::shared(3)?;
    let w = 12;
    let table = TensorTable::new(&wb, 2 * w)?;
    for i in enumerate_tilt_ideals(&table, w)? {
        println!("{} prime: {}", i.describe(), i.is_prime_on_window(&table));
    }
    let neg = generate_tilt_ideal(&table, &[3], w)?;
    println!("generated by T(3): {}", neg.describe());
    let h = RepIdealHandle::new(wb.clone(), neg);
    for spec in ["L:1", "L:3", "delta:4", "nabla:2", "T:2"] {
        let m = parse_module_spec(&wb, spec)?;
        println!("{} in ⟨I⟩: {}", m.name, h.contains(&m.module)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tiltlab::Result<()> {
    run_example()
}
