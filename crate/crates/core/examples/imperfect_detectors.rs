//! Lossy sources and detectors: exact polynomial success and the break-even
//! curve against the simple scheme under the same losses.

use fockbell::imperfections::{
    break_even_product, closed_form_success, grid_values, imperfect_bm, imperfect_model, misidentification_audit,
    simple_baseline, sweep, sweep_csv, ImperfectionParams,
};

fn main() -> fockbell::Result<()> {
    let model = imperfect_model()?;
    let total = model.total_success().expand();
    let poly: Vec<String> = total.iter().map(|((i, j), c)| format!("{c}*s^{i}*d^{j}")).collect();
    println!("P(eta_s = s, eta_d = d) = {}", poly.join(" + "));

    let p = ImperfectionParams::new(0.9, 0.95)?;
    let r = imperfect_bm(p)?;
    println!("at (0.9, 0.95): {:.10} (closed form {:.10}, simple {:.10})", r.total, closed_form_success(p), simple_baseline(p));
    println!("break-even eta_s*eta_d = {:.6}", break_even_product());

    let grid = grid_values(0.8, 1.0, 0.1)?;
    let points: Vec<_> = grid.iter().flat_map(|&s| grid.iter().map(move |&d| ImperfectionParams::new(s, d))).collect::<Result<_, _>>()?;
    let audit = misidentification_audit(&points)?;
    println!("max error over {} points: {}", audit.grid_points, audit.max_error);

    print!("{}", sweep_csv(&sweep(&grid, &grid)?));
    Ok(())
}
