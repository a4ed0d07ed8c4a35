//! Nodal curves: the parallelogram conditions, read along a coorientation
//! order, form a staircase matrix, so they are independent.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropical_rank::geometry::{coorient_order, GenericVector};
use tropical_rank::gen::random_nodal;
use tropical_rank::linalg::matrix_rank;
use tropical_rank::rank::{expected_rank_embedded, oracle_rank_with, parallelogram_condition_matrix, staircase};
use tropical_rank::PolygonClass;

fn main() -> Result<(), tropical_rank::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let (s, f) = random_nodal(&mut rng, 3, 4);
        let parallelograms =
            (0..s.cells().len()).filter(|&c| s.cell_class(c) == Ok(PolygonClass::Parallelogram)).count();
        let a = GenericVector::for_subdivision(&s);
        let all: Vec<usize> = (0..s.cells().len()).collect();
        let order = coorient_order(&s, &all, &a)?;
        let m = parallelogram_condition_matrix(&s, &order)?;
        println!(
            "{} vertices, {} cells, {} parallelograms: expected {}, oracle {}, matrix rank {}/{}, staircase {:?}",
            s.vertices().len(),
            s.cells().len(),
            parallelograms,
            expected_rank_embedded(&s),
            oracle_rank_with(&s, &f)?,
            matrix_rank(&m),
            m.rows(),
            staircase(&m)
        );
    }
    Ok(())
}
