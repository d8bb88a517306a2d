//! Block parities survive adding an ancilla and one more S layer.

use fockbell::discrimination::{classifier_equivalence, verify_lemma_parity};
use fockbell::schemes::reproduce_parity_table;
use fockbell::states::{arm_state, upsilon_chain};
use fockbell::ArmLabel;

fn main() -> fockbell::Result<()> {
    // theta = beta+ (x) Upsilon_1 on 4 modes, checked for both block sets
    let theta = arm_state(ArmLabel::BetaPlus).tensor(&upsilon_chain(1)?)?;
    for p in 0..2 {
        let r = verify_lemma_parity(p, 2, &theta)?;
        println!("p = {p}: S_1 {} -> S_2 {}, holds {}", r.small.kind(), r.extended.kind(), r.holds());
    }

    println!("\nparity table under S_2");
    for row in reproduce_parity_table()? {
        println!("  {:<30} n(1,3) {:<6} n(2,3) {:<6} {}", row.name, row.n13.kind().to_string(), row.n23.kind().to_string(), if row.matches() { "ok" } else { "MISMATCH" });
    }

    for n in 0..=1 {
        let eq = classifier_equivalence(n)?;
        println!("\nN = {n}: parity rule vs brute force over {} patterns, agree {}", eq.patterns_checked, eq.agrees());
    }
    Ok(())
}
