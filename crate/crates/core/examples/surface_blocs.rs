//! Bloc growth for surfaces in three-space, against the oracle.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropical_rank::gen::{glued_tetrahedra, random_coarse, simplex, stellar_tetrahedron};
use tropical_rank::rank::{expected_rank_embedded, oracle_rank};
use tropical_rank::surface::best_algo_bounds;
use tropical_rank::Subdivision;

fn show(name: &str, s: &Subdivision) -> Result<(), tropical_rank::Error> {
    let b = best_algo_bounds(s)?;
    println!(
        "{name}: {} cells, expected {}, oracle {}, bloc growth [{}, {}] over {} starts",
        s.cells().len(),
        expected_rank_embedded(s),
        oracle_rank(s)?,
        b.lower,
        b.upper,
        b.runs.len()
    );
    Ok(())
}

fn main() -> Result<(), tropical_rank::Error> {
    show("tetrahedron", &simplex(3))?;
    show("two glued tetrahedra", &glued_tetrahedra())?;
    show("stellar tetrahedron", &stellar_tetrahedron())?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut k = 0;
    while k < 5 {
        if let Some((s, _)) = random_coarse(&mut rng, 3, 2, 3, true) {
            show(&format!("random #{k}"), &s)?;
            k += 1;
        }
    }
    Ok(())
}
