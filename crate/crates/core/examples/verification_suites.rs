// Runs each verification suite with a small budget and prints a one-line summary.

use tiltlab::suites::{run_suite, SUITES};
use tiltlab::Workbench;

pub fn run_example() -> tiltlab::Result<()> {
    let wb = Workbench::shared(3)?;
    for name in SUITES {
        let r = run_suite(name, &wb, 12, 10, 1)?;
        println!(
            "{name}: {} cases, {} findings, {}",
            r.cases.len(),
            r.findings.len(),
            if r.passed() { "pass" } else { "FAIL" }
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tiltlab::Result<()> {
    run_example()
}
