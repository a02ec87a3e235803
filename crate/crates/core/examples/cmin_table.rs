// Minimal tilting complexes of the simple modules and their filtration dimensions.

use std::sync::Arc;

use tiltlab::cmin::CminSummary;
use tiltlab::standard::simple_module;
use tiltlab::Workbench;

pub fn run_example() -> tiltlab::Result<()> {
    for ell in [3u32, 5] {
        let wb = Workbench::new(ell)?;
        for n in 0..=12 {
            let c = wb.minimal_tilting_complex(&Arc::new(simple_module(ell, n)?))?;
            let (gfd, wfd) = c.filtration_dimensions();
            let s = CminSummary::new(&format!("L({n})"), &c.complex);
            println!("ℓ={ell} {}: gfd {gfd}, wfd {wfd}, {}", s.module, serde_json::to_string(&s.degrees)?);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tiltlab::Result<()> {
    run_example()
}
