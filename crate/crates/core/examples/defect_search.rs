//! Looks for plane subdivisions whose only non-trivial cells are a few
//! quadrangles and whose rank is larger than expected.
//!
//! `cargo run --release --example defect_search -- [samples] [seed]`

use tropical_rank::search::{search_defect, SearchParams};

fn main() {
    let mut args = std::env::args().skip(1);
    let samples = args.next().and_then(|a| a.parse().ok()).unwrap_or(20_000);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(0);
    for budget in [2, 3] {
        let params = SearchParams { samples, seed, cell_budget: budget, ..SearchParams::default() };
        let out = search_defect(&params);
        println!(
            "budget {budget}: {} samples, {} candidates, {} witnesses",
            out.examined,
            out.candidates,
            out.witnesses.len()
        );
        for w in out.witnesses.iter().take(5) {
            let v: Vec<&[i64]> = w.subdivision.vertices().iter().map(|p| p.coords()).collect();
            println!("  sample {}: expected {}, oracle {}, vertices {v:?}", w.sample, w.expected, w.oracle);
        }
    }
}
