//! The arm beta states split into a Xi component that the parity rule reads
//! directly and a Gamma component carried through the ancilla chain.

use fockbell::report::state_text;
use fockbell::states::{ancilla_upsilon, gamma_state, verify_decomposition, xi_state};
use fockbell::Sign;

fn main() -> fockbell::Result<()> {
    for j in 1..=2 {
        print!("{}", state_text(&format!("Upsilon_{j}"), &ancilla_upsilon(j)?)?);
    }
    for sign in [Sign::Plus, Sign::Minus] {
        print!("{}", state_text(&format!("Xi_1 {sign:?}"), &xi_state(1, sign)?)?);
        print!("{}", state_text(&format!("Gamma_1 {sign:?}"), &gamma_state(1, sign)?)?);
        for n in 1..=2 {
            println!("decomposition N = {n}, {sign:?}: {}", verify_decomposition(n, sign)?);
        }
    }
    Ok(())
}
