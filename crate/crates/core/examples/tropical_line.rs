//! The tropical line as a parameterized curve: its rank, the dimensions
//! with marked ends, and the balancing of marked points.

use tropical_rank::param::{balancing_sum, end_marked_def_dim, param_oracle_rank, EndMarking, ParamCurve, ParamEnd};
use tropical_rank::rank::expected_rank_param;
use tropical_rank::rat;

fn main() -> Result<(), tropical_rank::Error> {
    let end = |d: [i64; 2]| ParamEnd { node: 0, direction: d.to_vec(), weight: 1 };
    let line = ParamCurve::new(2, vec![vec![rat(0), rat(0)]], vec![], vec![end([-1, 0]), end([0, -1]), end([1, 1])])?;
    let rank = param_oracle_rank(&line, &[])?;
    println!("expected {}, oracle {rank}", expected_rank_param(&line));
    for m in 0..=3 {
        println!("{m} marked ends: dimension {}", end_marked_def_dim(&line, rank, m)?);
    }
    let marking = EndMarking {
        markers: vec![(0, vec![rat(-3), rat(0)]), (1, vec![rat(0), rat(-5)]), (2, vec![rat(2), rat(2)])],
    };
    println!("balancing sum on the ends: {}", balancing_sum(&line, &marking)?);
    let mut off = marking.clone();
    off.markers[2].1[1] = rat(3);
    println!("after moving a marker off its end: {:?}", balancing_sum(&line, &off));
    Ok(())
}
