//! 1-skeleton lower bounds, with closed volumes counted from the minimal
//! cycles of the skeleton.

use tropical_rank::gen::{simplex, stellar_tetrahedron};
use tropical_rank::io::format_rational;
use tropical_rank::rank::oracle_rank_with;
use tropical_rank::skeleton::{lower_bound_r3, lower_bound_r4, skeleton_metrics, skeleton_of_hypersurface};
use tropical_rank::subdivision::pick_interior_coefficients;
use tropical_rank::Subdivision;

fn show(name: &str, s: &Subdivision) -> Result<(), tropical_rank::Error> {
    let f = pick_interior_coefficients(s)?;
    let sk = skeleton_of_hypersurface(s, &f)?;
    let m = skeleton_metrics(&sk)?;
    let bound = if s.dim() == 3 { lower_bound_r3(&m) } else { lower_bound_r4(&m) };
    println!(
        "{name}: {} nodes, {} edges, {} rays; overvalence {}, genus {}, closed volumes {}; bound {} <= oracle {}",
        sk.nodes.len(),
        sk.edges.len(),
        sk.rays.len(),
        m.overvalence,
        m.genus,
        m.closed_volumes,
        format_rational(&bound),
        oracle_rank_with(s, &f)?
    );
    Ok(())
}

fn main() -> Result<(), tropical_rank::Error> {
    show("tetrahedron", &simplex(3))?;
    show("stellar tetrahedron", &stellar_tetrahedron())?;
    show("4-simplex", &simplex(4))?;
    Ok(())
}
