//! Ordered bounds in dimension four: exact when at most three cells are not
//! simplices.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropical_rank::gen::random_coarse;
use tropical_rank::hypersurface::{exact_rank_nd, rank_with_certificate_nd};
use tropical_rank::rank::oracle_rank_with;

fn main() -> Result<(), tropical_rank::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut k = 0;
    while k < 6 {
        let Some((s, f)) = random_coarse(&mut rng, 4, 1, 3, false) else { continue };
        let ns = s.non_simplex_cells()?;
        if ns.is_empty() {
            continue;
        }
        k += 1;
        print!("{} cells, {} non-simplices, oracle {}", s.cells().len(), ns.len(), oracle_rank_with(&s, &f)?);
        if ns.len() <= 3 {
            let v = exact_rank_nd(&s)?;
            print!(", min over orderings {} (ordering independent: {})", v.value(), v.ordering_independent());
        }
        println!("\n  {}", rank_with_certificate_nd(&s)?);
    }
    Ok(())
}
