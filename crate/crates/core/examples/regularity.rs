//! Regular subdivisions from liftings, and a triangulation that no lifting
//! induces.

use tropical_rank::gen::twisted_triangulation;
use tropical_rank::subdivision::{pick_interior_coefficients, regular_subdivision, validate};
use tropical_rank::{rat, LatticePoint};

fn main() {
    let pts: Vec<LatticePoint> =
        [[0, 0], [2, 0], [0, 2], [2, 2], [1, 1]].iter().map(|p| LatticePoint::new(p.to_vec())).collect();
    for heights in [[0, 0, 0, 0, 1], [0, 0, 0, 0, 0], [0, 1, 1, 0, 0]] {
        let h: Vec<_> = heights.iter().map(|&x| rat(x)).collect();
        match regular_subdivision(&pts, &h) {
            Ok((s, _, _)) => {
                let cells: Vec<&[usize]> = s.cells().iter().map(|c| c.ring()).collect();
                println!("heights {heights:?}: cells {cells:?}");
            }
            Err(e) => println!("heights {heights:?}: {e}"),
        }
    }
    let t = twisted_triangulation();
    println!("twisted triangulation valid: {}", validate(&t).is_ok());
    match pick_interior_coefficients(&t) {
        Ok(f) => println!("unexpected lifting {f:?}"),
        Err(e) => println!("twisted triangulation: {e}"),
    }
}
