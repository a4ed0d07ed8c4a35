//! Bounds and exact formulas for plane curves given by their dual
//! subdivision: the defect bound, ordered upper bounds, the exact value for
//! three non-nodal cells, and a dispatcher returning the strongest result.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{coorient_order, GenericVector, PolygonClass};
use crate::rank::{expected_rank_embedded, oracle_rank, Certificate, RankKind, RankReport};
use crate::subdivision::Subdivision;
use crate::{Error, Result};

/// Largest number of cells for which all orderings are enumerated.
pub const EXHAUSTIVE_LIMIT: usize = 8;

/// How orderings of the non-nodal cells are explored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Exhaustive,
    /// The two coorientation orders from a generic vector and its negation.
    Cooriented,
    Sampled { seed: u64, count: usize },
}

fn require_plane(s: &Subdivision) -> Result<()> {
    if s.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: s.dim() });
    }
    Ok(())
}

/// Per-cell contribution to the bound on twice the defect.
fn defect_weight(class: PolygonClass) -> i64 {
    match class {
        PolygonClass::EvenGonNonParallel(m) => 2 * m as i64 - 3,
        PolygonClass::ParallelEvenGon(m) => 2 * m as i64 - 4,
        PolygonClass::OddGon(m) => 2 * m as i64 - 2,
        _ => 0,
    }
}

/// Upper bound for twice the defect:
/// `sum_m ((2m-3) N_2m - N'_2m) + sum_m (2m-2) N_(2m+1) - 1`, where `N_k`
/// counts k-gons and `N'_2m` those with all opposite sides parallel.
///
/// The trailing `-1` is only applied when some cell is neither a triangle
/// nor a parallelogram; otherwise the bound is 0.
pub fn defect_bound(s: &Subdivision) -> Result<i64> {
    require_plane(s)?;
    let mut total = 0;
    let mut singular = false;
    for i in 0..s.cells().len() {
        let class = s.cell_class(i)?;
        if !class.is_nodal() {
            singular = true;
        }
        total += defect_weight(class);
    }
    Ok(if singular { total - 1 } else { 0 })
}

fn check_permutation(order: &[usize], cells: &[usize]) -> Result<()> {
    let a: BTreeSet<usize> = order.iter().copied().collect();
    let b: BTreeSet<usize> = cells.iter().copied().collect();
    if a.len() != order.len() || a != b {
        return Err(Error::NotPermutation);
    }
    Ok(())
}

/// `#Vert - 1 - sum_nodal (#Vert(d) - 3) - sum_i (#Vert(d_i) - max(3, shared_i))`
/// where the second sum runs over the non-nodal cells in `order` and
/// `shared_i` counts vertices of `d_i` already seen in earlier non-nodal
/// cells.
pub fn upper_bound_ordered(s: &Subdivision, order: &[usize]) -> Result<i64> {
    require_plane(s)?;
    let nontrivial = s.nontrivial_cells()?;
    check_permutation(order, &nontrivial)?;
    let mut value = s.vertices().len() as i64 - 1;
    for (i, cell) in s.cells().iter().enumerate() {
        if !nontrivial.contains(&i) {
            value -= cell.len() as i64 - 3;
        }
    }
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for &c in order {
        let verts = s.cells()[c].vertices();
        let shared = verts.iter().filter(|v| seen.contains(v)).count() as i64;
        value -= verts.len() as i64 - shared.max(3);
        seen.extend(verts.iter().copied());
    }
    Ok(value)
}

fn orderings(s: &Subdivision, cells: &[usize], strategy: Strategy) -> Result<Vec<Vec<usize>>> {
    match strategy {
        Strategy::Exhaustive => {
            if cells.len() > EXHAUSTIVE_LIMIT {
                return Err(Error::Budget { cells: cells.len(), limit: EXHAUSTIVE_LIMIT });
            }
            Ok(cells.iter().copied().permutations(cells.len()).collect())
        }
        Strategy::Cooriented => {
            let a = GenericVector::for_subdivision(s);
            Ok(vec![coorient_order(s, cells, &a)?, coorient_order(s, cells, &a.negated())?])
        }
        Strategy::Sampled { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(count.max(1));
            out.push(cells.to_vec());
            for _ in 1..count.max(1) {
                let mut o = cells.to_vec();
                o.shuffle(&mut rng);
                out.push(o);
            }
            Ok(out)
        }
    }
}

/// Orders used when no strategy is requested: all of them when few enough,
/// otherwise coorientation orders plus a seeded sample.
pub fn default_orderings(s: &Subdivision, cells: &[usize], seed: u64, budget: usize) -> Result<Vec<Vec<usize>>> {
    if cells.len() <= EXHAUSTIVE_LIMIT {
        return orderings(s, cells, Strategy::Exhaustive);
    }
    let mut all = orderings(s, cells, Strategy::Cooriented)?;
    all.extend(orderings(s, cells, Strategy::Sampled { seed, count: budget })?);
    Ok(all)
}

/// Minimum of [`upper_bound_ordered`] over the orderings of `strategy`.
pub fn best_upper_bound(s: &Subdivision, strategy: Strategy) -> Result<i64> {
    require_plane(s)?;
    let cells = s.nontrivial_cells()?;
    let mut best = i64::MAX;
    for o in orderings(s, &cells, strategy)? {
        best = best.min(upper_bound_ordered(s, &o)?);
    }
    Ok(best)
}

/// Values of the ordered formula on all six labelings of three cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeCellFormula {
    pub per_ordering: Vec<(Vec<usize>, i64)>,
}

impl ThreeCellFormula {
    /// Minimum over the labelings.
    pub fn value(&self) -> i64 {
        self.per_ordering.iter().map(|(_, v)| *v).min().expect("six orderings")
    }

    /// True when every labeling gives the same value.
    pub fn labeling_independent(&self) -> bool {
        self.per_ordering.iter().map(|(_, v)| v).all_equal()
    }
}

/// Exact rank of a plane curve with exactly three non-nodal cells.
pub fn exact_rank_three_nontrivial(s: &Subdivision) -> Result<ThreeCellFormula> {
    require_plane(s)?;
    let cells = s.nontrivial_cells()?;
    if cells.len() != 3 {
        return Err(Error::Precondition(format!("expected three non-nodal cells, found {}", cells.len())));
    }
    let mut per_ordering = Vec::with_capacity(6);
    for o in cells.iter().copied().permutations(3) {
        let v = upper_bound_ordered(s, &o)?;
        per_ordering.push((o, v));
    }
    Ok(ThreeCellFormula { per_ordering })
}

/// Strongest available statement about the rank of a plane curve, with the
/// oracle value attached. Non-regular subdivisions are rejected.
pub fn rank_with_certificate(s: &Subdivision) -> Result<RankReport> {
    rank_with_options(s, 0, 64)
}

/// [`rank_with_certificate`] with the seed and sample count used when there
/// are too many non-nodal cells to enumerate orderings.
pub fn rank_with_options(s: &Subdivision, seed: u64, budget: usize) -> Result<RankReport> {
    require_plane(s)?;
    let oracle = oracle_rank(s)?;
    let expected = expected_rank_embedded(s);
    let cells = s.nontrivial_cells()?;
    let bound = defect_bound(s)?;
    let defect_range = RankKind::bounds(expected, expected + bound.max(0) / 2);
    let report = match cells.len() {
        0 => RankReport::new(RankKind::Exact(expected), Certificate::NodalIndependence, expected),
        1 | 2 => RankReport::new(RankKind::Exact(expected), Certificate::AtMostTwoNonNodal, expected),
        3 => {
            let f = exact_rank_three_nontrivial(s)?;
            let mut r = RankReport::new(RankKind::Exact(f.value()), Certificate::ThreeNonNodal, expected);
            r.also.push((Certificate::DefectBound, defect_range));
            r
        }
        _ => {
            let mut upper = i64::MAX;
            for o in default_orderings(s, &cells, seed, budget)? {
                upper = upper.min(upper_bound_ordered(s, &o)?);
            }
            let ordered = RankKind::bounds(expected, upper);
            let upper = upper.min(expected + bound.max(0) / 2);
            let mut r = RankReport::new(RankKind::bounds(expected, upper), Certificate::OrderedUpperBound, expected);
            r.also.push((Certificate::OrderedUpperBound, ordered));
            r.also.push((Certificate::DefectBound, defect_range));
            r
        }
    };
    Ok(report.with_oracle(oracle))
}
