//! The textbook 50% scheme: one beam splitter, two Bell states resolved.

use fockbell::report::{state_text, success_text};
use fockbell::schemes::{evaluate, simple_bm, simulate};
use fockbell::BellLabel;

fn main() -> fockbell::Result<()> {
    let spec = simple_bm()?;
    for label in BellLabel::ALL {
        for (title, state) in simulate(&spec, label.into())? {
            print!("{}", state_text(&format!("{label} / {title}"), &state)?);
        }
    }
    println!();
    print!("{}", success_text(&evaluate(&spec)?));
    Ok(())
}
