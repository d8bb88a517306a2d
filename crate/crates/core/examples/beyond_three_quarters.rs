//! Three single-photon ancillae through S_2: 25/32 with fewer resources than N = 2.

use fockbell::report::success_text;
use fockbell::schemes::{evaluate, scheme_25_32, scheme_25_32_report};

fn main() -> fockbell::Result<()> {
    let arm = scheme_25_32()?;
    println!("{}: {} modes, {} photons", arm.name, arm.mode_count, arm.photon_budget());
    print!("{}", success_text(&evaluate(&arm)?));
    println!();
    print!("{}", success_text(&scheme_25_32_report()?));
    Ok(())
}
