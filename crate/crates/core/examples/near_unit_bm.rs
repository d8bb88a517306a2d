//! Scaling the ancilla: success 1 - 1/2^(N+1) for N = 1, 2.

use fockbell::field::rational_to_f64;
use fockbell::schemes::{evaluate, full_bm, full_success_formula};

fn main() -> fockbell::Result<()> {
    for n in 1..=2 {
        let report = evaluate(&full_bm(n)?)?;
        let total = report.total();
        println!(
            "N = {n}: total {total} ({:.4}), formula {}, errors {}",
            rational_to_f64(&total),
            full_success_formula(n),
            report.total_error()
        );
        for (label, o) in &report.outcomes {
            println!("  {:<10} success {:<6} inconclusive {}", label.name(), o.success.to_string(), o.inconclusive);
        }
    }
    // the sequence continues analytically
    for n in 3..=6 {
        println!("N = {n}: formula {}", full_success_formula(n));
    }
    Ok(())
}
