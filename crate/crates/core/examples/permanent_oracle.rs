//! Cross-check sparse operator evolution against matrix permanents.

use fockbell::{build_s, evolve, permanent_amplitude, Amplitude, Occupation, SparseState};

fn main() -> fockbell::Result<()> {
    let u = build_s(1)?;
    let input = Occupation::new(vec![2, 1, 0, 1]);
    let state = SparseState::from_fock(4, [(input.clone(), Amplitude::one())])?;
    let out = evolve(&state, &u)?;
    let c = state.coeff(&input);
    let mut mismatches = 0;
    for (occ, amp) in out.terms() {
        let p = &permanent_amplitude(&input, occ, &u)? * &c;
        if &p != amp {
            mismatches += 1;
        }
        println!("  |{occ}>  {amp:<24}  perm {p}");
    }
    println!("{} patterns, {mismatches} mismatches, total probability {}", out.len(), out.total_probability()?);
    Ok(())
}
