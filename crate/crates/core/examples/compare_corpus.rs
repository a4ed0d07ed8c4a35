//! Runs every formula over a directory of instance files.
//!
//! `cargo run --release --example compare_corpus -- corpus`

use std::path::PathBuf;

use tropical_rank::compare::{compare_dir, render_text, CompareOptions};

fn main() -> Result<(), tropical_rank::Error> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("corpus"));
    let rows = compare_dir(&dir, &CompareOptions::default())?;
    print!("{}", render_text(&rows));
    Ok(())
}
