//! One photon-pair ancilla per arm: 3/4 success, no errors.

use fockbell::report::{classifier_text, success_text};
use fockbell::schemes::{arm_scheme, evaluate, full_bm};
use fockbell::discrimination::build_classifier;

fn main() -> fockbell::Result<()> {
    let arm = arm_scheme(1)?;
    let table = build_classifier(&arm.candidates, &arm.network)?;
    println!("arm verdicts ({} patterns)", table.table().len());
    print!("{}", classifier_text(&table));
    println!();
    print!("{}", success_text(&evaluate(&arm)?));
    println!();

    let full = evaluate(&full_bm(1)?)?;
    print!("{}", success_text(&full));
    assert_eq!(full.total_error(), fockbell::field::rational(0, 1));
    Ok(())
}
