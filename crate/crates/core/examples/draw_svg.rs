//! Writes the worked example and its dual curve as SVG.
//!
//! `cargo run --example draw_svg -- witness.svg`

use tropical_rank::gen::{witness, witness_coefficients};
use tropical_rank::svg::render;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "witness.svg".into());
    let svg = render(&witness(), Some(&witness_coefficients()))?;
    std::fs::write(&path, svg)?;
    println!("wrote {path}");
    Ok(())
}
