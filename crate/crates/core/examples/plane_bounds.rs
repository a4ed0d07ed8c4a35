//! Every bound for plane curves on random coarse subdivisions, next to the
//! oracle.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropical_rank::curves::{best_upper_bound, defect_bound, rank_with_certificate, Strategy};
use tropical_rank::gen::random_coarse;
use tropical_rank::param::{bounded_components_rank, resolve_nodes};
use tropical_rank::rank::{expected_rank_embedded, oracle_rank_with};

fn main() -> Result<(), tropical_rank::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut shown = 0;
    while shown < 8 {
        let Some((s, f)) = random_coarse(&mut rng, 2, 4, 4, true) else { continue };
        let nt = s.nontrivial_cells()?.len();
        if nt < 2 {
            continue;
        }
        shown += 1;
        let res = resolve_nodes(&s, &f)?;
        let bc = bounded_components_rank(&s, &f, &res)?;
        println!(
            "{nt} non-nodal cells: expected {}, oracle {}, defect bound {}, ordered {}, bounded components {} ({} comps)",
            expected_rank_embedded(&s),
            oracle_rank_with(&s, &f)?,
            defect_bound(&s)?,
            best_upper_bound(&s, Strategy::Sampled { seed: 0, count: 64 })?,
            bc.report.kind,
            bc.components
        );
        println!("  {}", rank_with_certificate(&s)?);
    }
    Ok(())
}
