// Alcove combinatorics for simple root systems.

use tiltlab::alcove::{
    build_root_system, dot_orbit, is_negligible_weight, is_p_regular, separating_hyperplane_count,
    steinberg_decompose, steinberg_twist_example, RootType,
};

pub fn run_example() -> tiltlab::Result<()> {
    let a2 = build_root_system("A2".parse::<RootType>()?);
    let lambda = [3, 3];
    println!("A2, p = 5, λ = {lambda:?}");
    println!("  d = {}", separating_hyperplane_count(&a2, &lambda, 5)?);
    println!("  regular: {}", is_p_regular(&a2, &lambda, 5));
    println!("  negligible: {}", is_negligible_weight(&a2, &lambda, 5));
    println!("  Steinberg: {:?}", steinberg_decompose(&lambda, 5));
    let a1 = build_root_system(RootType::A(1));
    println!("A1, p = 3: linked to 2 up to 14: {:?}", dot_orbit(&a1, &[2], 3, 14)?);
    for kind in [RootType::B(2), RootType::G2] {
        let rs = build_root_system(kind);
        let t = steinberg_twist_example(&rs, 7)?;
        println!("{kind}, p = 7: (p² − p)ρ = {:?}, regular {:?}, negligible {}", t.weight, t.p_regular, t.negligible);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tiltlab::Result<()> {
    run_example()
}
