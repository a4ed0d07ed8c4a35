//! Three trapezoids around a small triangle: the conditions of the three
//! quadrangles are dependent, so the rank exceeds the expected rank by one.

use tropical_rank::curves::{defect_bound, exact_rank_three_nontrivial, rank_with_certificate};
use tropical_rank::gen::{witness, witness_coefficients};
use tropical_rank::rank::{expected_rank_embedded, oracle_rank_with};

fn main() -> Result<(), tropical_rank::Error> {
    let s = witness();
    let f = witness_coefficients();
    for (i, cell) in s.cells().iter().enumerate() {
        println!("cell {i}: {:?} {}", cell.ring(), s.cell_class(i)?.name());
    }
    println!("expected rank {}", expected_rank_embedded(&s));
    println!("oracle rank   {}", oracle_rank_with(&s, &f)?);
    let formula = exact_rank_three_nontrivial(&s)?;
    for (order, v) in &formula.per_ordering {
        println!("  ordering {order:?}: {v}");
    }
    println!("three-cell formula {} (labeling independent: {})", formula.value(), formula.labeling_independent());
    println!("2 * defect <= {}", defect_bound(&s)?);
    println!("{}", rank_with_certificate(&s)?);
    Ok(())
}
